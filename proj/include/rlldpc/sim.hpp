#pragma once

#include <cstdint>
#include <vector>

#include "rlldpc/decoder.hpp"
#include "rlldpc/reconcile.hpp"
#include "rlldpc/sparse.hpp"

namespace rlldpc {

// One reverse-reconciliation frame over a simulated AWGN channel: Bob's
// Gaussian block y, Alice's noisy copy x, Bob's random key mapped through the
// 8-D reconciliation, Alice decoding to Bob's syndrome.
struct FrameOutcome {
    bool converged = false;
    bool bits_match = false;   // decoded word equals the key
    bool frame_error = true;   // !converged || !bits_match
    bool undetected = false;   // converged && !bits_match
    int iterations = 0;
};

struct SimOptions {
    DecoderConfig decoder;
    std::uint64_t root_seed = 1;
    int batch = 0;  // frames per batch_decode call; 0 = all frames in one batch
};

// Per-frame seed streams are derived from (root_seed, snr bits, frame index)
// so grid points are independent of ordering and of each other.
std::uint64_t frame_seed(std::uint64_t root_seed, double snr, int frame_index);

// Builds one frame's decoder input (LLRs + target syndrome); the key Bob
// mapped is returned through *key when given.
FrameInput generate_sim_frame(const BpDecoder& decoder, double snr, std::uint64_t seed,
                              std::vector<std::uint8_t>* key = nullptr);

FrameOutcome simulate_frame(const BpDecoder& decoder, double snr, std::uint64_t seed,
                            const DecoderConfig& config);

struct FerPoint {
    double snr = 0.0;
    double beta = 0.0;
    int frames = 0;
    int errors = 0;
    int undetected = 0;
    double fer = 0.0;
    double mean_iterations = 0.0;
    double wall_ms = 0.0;  // timing only; excluded from determinism guarantees
};

// Runs `frames` frames at one SNR point. beta is carried through for
// reporting (rate / C(snr) as supplied by the caller).
FerPoint run_fer_point(const BpDecoder& decoder, double snr, double beta, int frames,
                       const SimOptions& options);

}  // namespace rlldpc
