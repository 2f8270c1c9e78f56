#include "ultrawave/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace ultrawave {

std::int64_t ipow(std::int64_t p, int k) {
    if (k < 0) throw std::domain_error("ipow: negative exponent");
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > (std::int64_t{1} << 62) / p) throw std::overflow_error("ipow: overflow");
        r *= p;
    }
    return r;
}

int valuation_of(std::int64_t c, std::int64_t p) {
    int v = 0;
    while (c % p == 0) {
        c /= p;
        ++v;
    }
    return v;
}

double qpow(int q, double k) {
    if (k == std::floor(k) && std::abs(k) < 1000) {
        // Integer exponents: repeated squaring keeps q^k exact while it fits.
        long e = static_cast<long>(k);
        const bool inv = e < 0;
        if (inv) e = -e;
        double base = q, r = 1.0;
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return inv ? 1.0 / r : r;
    }
    return std::pow(static_cast<double>(q), k);
}

void CompensatedSum::step(double& s, double& c, double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
        c += (s - t) + v;
    else
        c += (v - t) + s;
    s = t;
}

void CompensatedSum::add(complex v) {
    step(re_, re_c_, v.real());
    step(im_, im_c_, v.imag());
}

complex compensated_sum(std::span<const complex> values) {
    CompensatedSum s;
    for (const auto& v : values) s.add(v);
    return s.value();
}

complex pairwise_sum(std::span<const complex> values) {
    if (values.size() <= 8) {
        complex s = 0.0;
        for (const auto& v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

complex unit_root(std::int64_t num, std::int64_t den) {
    std::int64_t r = mod_floor(num, den);
    if (2 * r >= den) r -= den;
    if (r == 0) return {1.0, 0.0};
    if (4 * r == den) return {0.0, 1.0};
    if (4 * r == -den) return {0.0, -1.0};
    if (2 * r == -den) return {-1.0, 0.0};
    const double angle = 2.0 * std::numbers::pi * (static_cast<double>(r) / static_cast<double>(den));
    return {std::cos(angle), std::sin(angle)};
}

RootTable::RootTable(std::int64_t order, int sign) : roots_(static_cast<std::size_t>(order)) {
    for (std::int64_t k = 0; k < order; ++k) roots_[static_cast<std::size_t>(k)] = unit_root(sign * k, order);
}

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ULTRAWAVE_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        } catch (const std::exception&) {
            // Unparseable caps are ignored.
        }
    }
    return n;
}

namespace {
// Nested calls run inline on the calling worker.
thread_local bool inside_worker = false;
}  // namespace

void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::int64_t>(worker_count(), count));
    if (workers <= 1 || inside_worker) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            inside_worker = true;
            for (std::int64_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace ultrawave
