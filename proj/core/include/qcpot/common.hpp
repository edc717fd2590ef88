#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcpot {

inline constexpr int kMaxDim = 3;

/// Point or direction in R^n, n <= 3. Entries beyond the active dimension
/// are kept at zero so that length-3 arithmetic is always valid.
using Vec = std::array<double, kMaxDim>;
using IVec = std::array<int, kMaxDim>;

/// Base error for all operation failures (maps to CLI exit 1).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Hypothesis/precondition failure of an experiment (maps to CLI exit 2).
class HypothesisError : public Error {
public:
    explicit HypothesisError(const std::string& msg) : Error(msg) {}
};

inline Vec vec_zero() { return {0.0, 0.0, 0.0}; }

inline Vec vec_of(std::initializer_list<double> xs) {
    Vec v = vec_zero();
    int i = 0;
    for (double x : xs) {
        if (i >= kMaxDim) break;
        v[static_cast<size_t>(i++)] = x;
    }
    return v;
}

inline double dot(const Vec& a, const Vec& b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
    return s;
}

inline Vec sub(const Vec& a, const Vec& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec add(const Vec& a, const Vec& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec scale(const Vec& a, double t) { return {t * a[0], t * a[1], t * a[2]}; }

inline double norm2(const Vec& a, int n) { return dot(a, a, n); }
inline double norm(const Vec& a, int n) { return std::sqrt(norm2(a, n)); }

inline double dist(const Vec& a, const Vec& b, int n) {
    Vec d = sub(a, b);
    return norm(d, n);
}

inline double norm_inf(const Vec& a, int n) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::fabs(a[static_cast<size_t>(i)]));
    return m;
}

/// Deterministic 64-bit generator (splitmix64). Used for every seeded
/// sampler so reports are byte-identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [a, b).
    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

/// Set the worker count used by parallel_for (0 = hardware concurrency).
void set_thread_count(int threads);
int thread_count();

/// Runs f(i) for i in [0, count). Iterations must be independent; results
/// written by index stay deterministic regardless of the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f);

}  // namespace qcpot
