#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ultrawave {

using complex = std::complex<double>;

/// p^k for small non-negative k; throws std::overflow_error past 2^62.
std::int64_t ipow(std::int64_t p, int k);

/// Non-negative remainder of a modulo m (m > 0).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Exponent of the largest power of p dividing c; c must be nonzero.
int valuation_of(std::int64_t c, std::int64_t p);

/// q^k as a double, exact for every k where the result is representable.
double qpow(int q, double k);

/**
 * Neumaier-compensated accumulator for complex values.
 *
 * Summation order is the insertion order, so results are reproducible
 * for a fixed traversal.
 */
class CompensatedSum {
public:
    void add(complex v);
    void add(double v) { add(complex(v, 0.0)); }
    complex value() const { return {re_ + re_c_, im_ + im_c_}; }

private:
    static void step(double& s, double& c, double v);
    double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

complex compensated_sum(std::span<const complex> values);

/// Pairwise (tree) reduction; deterministic for a given length.
complex pairwise_sum(std::span<const complex> values);

/// exp(2*pi*i*num/den) with the phase reduced to [-1/2, 1/2) before the
/// single trigonometric evaluation.
complex unit_root(std::int64_t num, std::int64_t den);

/**
 * Table of exp(sign * 2*pi*i*k/order) for k in [0, order).
 *
 * Every entry is computed independently from its exact rational phase.
 */
class RootTable {
public:
    RootTable(std::int64_t order, int sign);
    std::int64_t order() const { return static_cast<std::int64_t>(roots_.size()); }
    complex operator[](std::int64_t k) const { return roots_[static_cast<std::size_t>(mod_floor(k, order()))]; }

private:
    std::vector<complex> roots_;
};

/// Worker count: hardware concurrency, capped by ULTRAWAVE_THREADS.
unsigned worker_count();

/**
 * Runs body(i) for i in [0, count) across worker_count() threads.
 *
 * Each index is handled by exactly one call; callers write results into
 * per-index slots, so the output never depends on scheduling.
 */
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body);

}  // namespace ultrawave
