#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rlldpc/sparse.hpp"

namespace rlldpc {

struct DecoderConfig {
    int max_iterations = 400;
    bool early_stop = true;     // syndrome check every iteration
    double llr_clamp = 30.0;    // message magnitude bound
    int threads = 0;            // OpenMP threads for the message passes; 0 = default, 1 = serial
};

enum class DecodeStatus { ok, invalid_input };

struct DecodeResult {
    std::vector<std::uint8_t> hard_bits;
    bool converged = false;
    int iterations_used = 0;
    std::int64_t final_syndrome_weight = 0;  // weight of (syndrome XOR target)
    DecodeStatus status = DecodeStatus::ok;
};

// s_j = XOR of word bits over row j's columns
std::vector<std::uint8_t> syndrome(const SparseBinaryMatrix& h,
                                   std::span<const std::uint8_t> word);

// Flooding-schedule sum-product decoder over a fixed parity-check matrix,
// decoding to an arbitrary target syndrome (check updates are sign-flipped
// where the target bit is 1). Exact tanh rule; messages clamped to
// +-llr_clamp. Results are bit-identical for any thread count.
class BpDecoder {
public:
    explicit BpDecoder(const SparseBinaryMatrix& h);

    DecodeResult decode(std::span<const double> channel_llrs,
                        std::span<const std::uint8_t> target_syndrome,
                        const DecoderConfig& config) const;

    std::vector<std::uint8_t> syndrome_of(std::span<const std::uint8_t> word) const;

    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edge_col_.size()); }

private:
    struct Workspace;
    void check_pass(Workspace& ws, std::span<const std::uint8_t> target, double clamp,
                    int threads) const;
    void var_pass(Workspace& ws, std::span<const double> channel_llrs, double clamp,
                  int threads) const;

    std::int64_t rows_ = 0;
    std::int64_t cols_ = 0;
    // edges in row-major order
    std::vector<std::int64_t> row_ptr_;
    std::vector<std::uint32_t> edge_col_;
    // per-column list of row-major edge ids
    std::vector<std::int64_t> col_ptr_;
    std::vector<std::int64_t> col_edges_;
};

DecodeResult decode_bp(const SparseBinaryMatrix& h, std::span<const double> channel_llrs,
                       std::span<const std::uint8_t> target_syndrome,
                       const DecoderConfig& config);

struct FrameInput {
    std::vector<double> llrs;
    std::vector<std::uint8_t> target_syndrome;
};

// Decodes frames on concurrent workers; results are bit-identical to
// sequential decode_bp per frame and order-preserving. Per-frame input
// errors are reported in the frame's status, the batch continues.
std::vector<DecodeResult> batch_decode(const BpDecoder& decoder,
                                       const std::vector<FrameInput>& frames,
                                       const DecoderConfig& config);
std::vector<DecodeResult> batch_decode(const SparseBinaryMatrix& h,
                                       const std::vector<FrameInput>& frames,
                                       const DecoderConfig& config);

}  // namespace rlldpc
