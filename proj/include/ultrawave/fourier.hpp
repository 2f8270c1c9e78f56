#pragma once

#include "ultrawave/schwartz.hpp"

namespace ultrawave {

/*
 * Fourier transform on Q_p^n,  f~(xi) = int chi(x . xi) f(x) dx.
 *
 * For f in D_N^l the integrand is constant on every coset of p^l O^n once
 * xi is in B_l^n, so the transform is the finite character sum
 *
 *     f~(d p^{-l}) = q^{-nl} sum_c exp(2 pi i (c . d) / p^{N+l}) f(c p^{-N})
 *
 * and lands in D_l^N.  That is a length-p^{N+l} DFT along every axis.
 */

/// Direct O(G^2) character sum; the reference path.
TestFunction fourier_direct(const TestFunction& f);
TestFunction inverse_fourier_direct(const TestFunction& g);

/// Digit-recursive (radix-p Cooley-Tukey) evaluation of the same sums.
TestFunction fourier_fast(const TestFunction& f);
TestFunction inverse_fourier_fast(const TestFunction& g);

/// D_N^l -> D_l^N.
TestFunction fourier(const TestFunction& f);
/// Uses chi(-x . xi); inverse_fourier(fourier(f)) == f.
TestFunction inverse_fourier(const TestFunction& g);

/// Max modulus of `f~` evaluated outside B_l^n, computed on a grid
/// extended by `margin` levels; zero up to rounding for every f in D_N^l.
double fourier_outside_support(const TestFunction& f, int margin = 1);

}  // namespace ultrawave
