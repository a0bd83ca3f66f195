#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tsa {

/// Base class for all recoverable toolkit errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text (case files, CSV, model files).
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Structurally valid input that violates a domain invariant.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Numerical failure (singular matrix, non-convergence).
class NumericalError : public Error {
  public:
    using Error::Error;
};

/// Deterministic random stream. All distributions are derived from the raw
/// 64-bit output so draws do not depend on the standard library's
/// implementation-defined distribution algorithms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        // Rejection sampling keeps the draw unbiased.
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % n;
    }

    /// Standard normal via Box-Muller on the deterministic uniform stream.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

    /// Child stream for work item `index`, independent of call order. Used to
    /// make parallel scenario evaluation schedule-independent.
    static Rng child(std::uint64_t seed, std::uint64_t index) {
        return Rng(mix(seed, index));
    }

  private:
    // SplitMix64 finalizer; decorrelates (seed, index) pairs.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Dense row-major matrix of doubles, the interchange type between the
/// simulator, the learner, and the evaluation harness.
struct DataMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;  // rows * cols, row-major

    DataMatrix() = default;
    DataMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

    std::span<const double> row(std::size_t i) const { return {values.data() + i * cols, cols}; }
    std::span<double> row(std::size_t i) { return {values.data() + i * cols, cols}; }
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers. fn must be safe to
/// call concurrently for distinct i; iteration order is unspecified.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// CRC-32 (zlib polynomial) of a byte string.
std::uint32_t crc32_of(std::string_view bytes);

/// Formats a double with 9 significant digits (CSV contract).
std::string format_g9(double v);

/// Formats a double with 17 significant digits (exact round-trip).
std::string format_g17(double v);

}  // namespace tsa
