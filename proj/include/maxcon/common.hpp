#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace maxcon {

/// Thrown when a caller breaks a documented precondition (dimension
/// mismatch, action outside the basis, ...).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Thrown when a numerical routine cannot produce a trustworthy answer
/// (LP cycling guard tripped, singular system where one was required).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File format / parse failures.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic, platform-independent RNG (splitmix64). The standard
/// distributions are implementation defined, so all sampling goes
/// through this to keep seeded runs bit-identical everywhere.
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
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n), rejection sampled (no modulo bias).
    int uniform_int(int n) {
        if (n <= 0) throw ContractViolation("Rng::uniform_int: n must be positive");
        const std::uint64_t un = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return static_cast<int>(x % un);
    }

    std::uint64_t state() const { return state_; }
    void set_state(std::uint64_t s) { state_ = s; }

private:
    std::uint64_t state_;
};

}  // namespace maxcon
