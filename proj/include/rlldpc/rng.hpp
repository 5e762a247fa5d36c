#pragma once

#include <cstdint>
#include <random>

namespace rlldpc {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x);

// Counter-based stream derivation from a root seed. Streams are identified by
// a (tag, counter) pair so that adding sweep points or frames never perturbs
// the seeds of earlier ones.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag, std::uint64_t counter = 0);

// Deterministic random source. std::mt19937_64 has a standardized output
// sequence, and the distributions below are implemented explicitly instead of
// through std::*_distribution (whose sequences are implementation-defined), so
// a seed reproduces the same stream on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // uniform in [-1, 1)
    double uniform_signed() { return 2.0 * uniform() - 1.0; }

    // unbiased uniform integer in [0, n), n > 0
    std::uint64_t below(std::uint64_t n);

    // standard normal via the polar method (sqrt/log only)
    double gaussian();

private:
    std::mt19937_64 gen_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace rlldpc
