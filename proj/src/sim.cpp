#include "rlldpc/sim.hpp"

#include <bit>
#include <chrono>
#include <cstring>
#include <stdexcept>

#include "rlldpc/channel.hpp"
#include "rlldpc/rng.hpp"

namespace rlldpc {

namespace {

// sub-stream tags within one frame
constexpr std::uint64_t kTagSource = 11;
constexpr std::uint64_t kTagNoise = 12;
constexpr std::uint64_t kTagKey = 13;

std::vector<std::uint8_t> random_bits(std::int64_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint8_t> bits(n);
    std::uint64_t word = 0;
    int left = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        if (left == 0) {
            word = rng.bits();
            left = 64;
        }
        bits[i] = word & 1;
        word >>= 1;
        --left;
    }
    return bits;
}

struct GeneratedFrame {
    FrameInput input;
    std::vector<std::uint8_t> key;
};

GeneratedFrame generate_frame(const BpDecoder& decoder, double snr, std::uint64_t seed) {
    const std::int64_t n = decoder.cols();
    std::vector<double> y = gaussian_source(n, 1.0, derive_seed(seed, kTagSource));
    std::vector<double> x = awgn(y, snr, derive_seed(seed, kTagNoise));
    GeneratedFrame frame;
    frame.key = random_bits(n, derive_seed(seed, kTagKey));
    SideInformation side = reconcile_transmit(y, frame.key);
    frame.input.llrs = reconcile_receive(x, side, snr);
    frame.input.target_syndrome = decoder.syndrome_of(frame.key);
    return frame;
}

FrameOutcome outcome_of(const DecodeResult& result, const std::vector<std::uint8_t>& key) {
    FrameOutcome out;
    out.converged = result.converged;
    out.bits_match = result.status == DecodeStatus::ok && result.hard_bits == key;
    out.frame_error = !(out.converged && out.bits_match);
    out.undetected = out.converged && !out.bits_match;
    out.iterations = result.iterations_used;
    return out;
}

}  // namespace

std::uint64_t frame_seed(std::uint64_t root_seed, double snr, int frame_index) {
    return derive_seed(root_seed, std::bit_cast<std::uint64_t>(snr),
                       static_cast<std::uint64_t>(frame_index));
}

FrameInput generate_sim_frame(const BpDecoder& decoder, double snr, std::uint64_t seed,
                              std::vector<std::uint8_t>* key) {
    GeneratedFrame frame = generate_frame(decoder, snr, seed);
    if (key) *key = std::move(frame.key);
    return std::move(frame.input);
}

FrameOutcome simulate_frame(const BpDecoder& decoder, double snr, std::uint64_t seed,
                            const DecoderConfig& config) {
    GeneratedFrame frame = generate_frame(decoder, snr, seed);
    DecodeResult result = decoder.decode(frame.input.llrs, frame.input.target_syndrome, config);
    return outcome_of(result, frame.key);
}

FerPoint run_fer_point(const BpDecoder& decoder, double snr, double beta, int frames,
                       const SimOptions& options) {
    if (frames <= 0) throw std::invalid_argument("run_fer_point: frames must be > 0");
    const auto start = std::chrono::steady_clock::now();

    FerPoint point;
    point.snr = snr;
    point.beta = beta;
    point.frames = frames;

    const int chunk = options.batch > 0 ? options.batch : frames;
    std::int64_t total_iterations = 0;
    for (int base = 0; base < frames; base += chunk) {
        const int count = std::min(chunk, frames - base);
        std::vector<GeneratedFrame> generated(count);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (int i = 0; i < count; ++i)
            generated[i] =
                generate_frame(decoder, snr, frame_seed(options.root_seed, snr, base + i));

        std::vector<FrameInput> inputs(count);
        for (int i = 0; i < count; ++i) inputs[i] = std::move(generated[i].input);

        std::vector<DecodeResult> results = batch_decode(decoder, inputs, options.decoder);

        for (int i = 0; i < count; ++i) {
            FrameOutcome out = outcome_of(results[i], generated[i].key);
            point.errors += out.frame_error;
            point.undetected += out.undetected;
            total_iterations += out.iterations;
        }
    }

    point.fer = static_cast<double>(point.errors) / frames;
    point.mean_iterations = static_cast<double>(total_iterations) / frames;
    point.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              start)
                        .count();
    return point;
}

}  // namespace rlldpc
