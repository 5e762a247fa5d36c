#include "rlldpc/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rlldpc {

std::vector<std::uint8_t> syndrome(const SparseBinaryMatrix& h,
                                   std::span<const std::uint8_t> word) {
    if (static_cast<std::int64_t>(word.size()) != h.cols())
        throw std::invalid_argument("syndrome: word length " + std::to_string(word.size()) +
                                    " != columns " + std::to_string(h.cols()));
    std::vector<std::uint8_t> s(h.rows(), 0);
    for (std::int64_t r = 0; r < h.rows(); ++r) {
        std::uint8_t acc = 0;
        for (std::uint32_t c : h.row_cols(r)) acc ^= word[c] & 1;
        s[r] = acc;
    }
    return s;
}

BpDecoder::BpDecoder(const SparseBinaryMatrix& h) : rows_(h.rows()), cols_(h.cols()) {
    row_ptr_.assign(rows_ + 1, 0);
    edge_col_.reserve(h.edge_count());
    for (std::int64_t r = 0; r < rows_; ++r) {
        for (std::uint32_t c : h.row_cols(r)) edge_col_.push_back(c);
        row_ptr_[r + 1] = static_cast<std::int64_t>(edge_col_.size());
    }
    col_ptr_.assign(cols_ + 1, 0);
    for (std::uint32_t c : edge_col_) ++col_ptr_[c + 1];
    for (std::int64_t c = 0; c < cols_; ++c) col_ptr_[c + 1] += col_ptr_[c];
    col_edges_.resize(edge_col_.size());
    std::vector<std::int64_t> fill(col_ptr_.begin(), col_ptr_.end() - 1);
    for (std::int64_t e = 0; e < static_cast<std::int64_t>(edge_col_.size()); ++e)
        col_edges_[fill[edge_col_[e]]++] = e;
}

std::vector<std::uint8_t> BpDecoder::syndrome_of(std::span<const std::uint8_t> word) const {
    if (static_cast<std::int64_t>(word.size()) != cols_)
        throw std::invalid_argument("syndrome_of: word length mismatch");
    std::vector<std::uint8_t> s(rows_, 0);
    for (std::int64_t r = 0; r < rows_; ++r) {
        std::uint8_t acc = 0;
        for (std::int64_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) acc ^= word[edge_col_[e]] & 1;
        s[r] = acc;
    }
    return s;
}

struct BpDecoder::Workspace {
    std::vector<double> llr;   // clamped channel values
    std::vector<double> v2c;   // variable-to-check, row-major edge order
    std::vector<double> c2v;   // check-to-variable
    std::vector<std::uint8_t> hard;
};

namespace {

inline double clamp_mag(double v, double clamp) {
    return v > clamp ? clamp : (v < -clamp ? -clamp : v);
}

}  // namespace

void BpDecoder::check_pass(Workspace& ws, std::span<const std::uint8_t> target, double clamp,
                           int threads) const {
    const double* v2c = ws.v2c.data();
    double* c2v = ws.c2v.data();
    auto body = [&](std::int64_t r) {
        const std::int64_t begin = row_ptr_[r];
        const std::int64_t deg = row_ptr_[r + 1] - begin;
        const double flip = target[r] ? -1.0 : 1.0;
        if (deg == 1) {
            c2v[begin] = flip * clamp;
            return;
        }
        double fwd[64];
        double t[64];
        if (deg <= 64) {
            for (std::int64_t i = 0; i < deg; ++i) t[i] = std::tanh(0.5 * v2c[begin + i]);
            fwd[0] = t[0];
            for (std::int64_t i = 1; i < deg; ++i) fwd[i] = fwd[i - 1] * t[i];
            double bwd = 1.0;
            for (std::int64_t i = deg - 1; i >= 0; --i) {
                const double ex = (i ? fwd[i - 1] : 1.0) * bwd * flip;
                c2v[begin + i] = clamp_mag(2.0 * std::atanh(ex), clamp);
                bwd *= t[i];
            }
        } else {
            std::vector<double> tt(deg), ff(deg);
            for (std::int64_t i = 0; i < deg; ++i) tt[i] = std::tanh(0.5 * v2c[begin + i]);
            ff[0] = tt[0];
            for (std::int64_t i = 1; i < deg; ++i) ff[i] = ff[i - 1] * tt[i];
            double bwd = 1.0;
            for (std::int64_t i = deg - 1; i >= 0; --i) {
                const double ex = (i ? ff[i - 1] : 1.0) * bwd * flip;
                c2v[begin + i] = clamp_mag(2.0 * std::atanh(ex), clamp);
                bwd *= tt[i];
            }
        }
    };
    if (threads == 1) {
        for (std::int64_t r = 0; r < rows_; ++r) body(r);
    } else {
#ifdef _OPENMP
        if (threads > 0) {
#pragma omp parallel for schedule(static) num_threads(threads)
            for (std::int64_t r = 0; r < rows_; ++r) body(r);
        } else {
#pragma omp parallel for schedule(static)
            for (std::int64_t r = 0; r < rows_; ++r) body(r);
        }
#else
        for (std::int64_t r = 0; r < rows_; ++r) body(r);
#endif
    }
}

void BpDecoder::var_pass(Workspace& ws, std::span<const double> /*channel_llrs*/, double clamp,
                         int threads) const {
    const double* llr = ws.llr.data();
    const double* c2v = ws.c2v.data();
    double* v2c = ws.v2c.data();
    std::uint8_t* hard = ws.hard.data();
    auto body = [&](std::int64_t c) {
        const std::int64_t begin = col_ptr_[c];
        const std::int64_t end = col_ptr_[c + 1];
        double total = llr[c];
        for (std::int64_t k = begin; k < end; ++k) total += c2v[col_edges_[k]];
        hard[c] = total <= 0.0 ? 1 : 0;
        for (std::int64_t k = begin; k < end; ++k) {
            const std::int64_t e = col_edges_[k];
            v2c[e] = clamp_mag(total - c2v[e], clamp);
        }
    };
    if (threads == 1) {
        for (std::int64_t c = 0; c < cols_; ++c) body(c);
    } else {
#ifdef _OPENMP
        if (threads > 0) {
#pragma omp parallel for schedule(static) num_threads(threads)
            for (std::int64_t c = 0; c < cols_; ++c) body(c);
        } else {
#pragma omp parallel for schedule(static)
            for (std::int64_t c = 0; c < cols_; ++c) body(c);
        }
#else
        for (std::int64_t c = 0; c < cols_; ++c) body(c);
#endif
    }
}

DecodeResult BpDecoder::decode(std::span<const double> channel_llrs,
                               std::span<const std::uint8_t> target_syndrome,
                               const DecoderConfig& config) const {
    if (static_cast<std::int64_t>(channel_llrs.size()) != cols_)
        throw std::invalid_argument("decode: llr length " + std::to_string(channel_llrs.size()) +
                                    " != columns " + std::to_string(cols_));
    if (static_cast<std::int64_t>(target_syndrome.size()) != rows_)
        throw std::invalid_argument("decode: syndrome length mismatch");
    if (config.max_iterations < 1) throw std::invalid_argument("decode: max_iterations must be >= 1");
    if (!(config.llr_clamp > 0.0)) throw std::invalid_argument("decode: llr_clamp must be > 0");
    for (double v : channel_llrs)
        if (!std::isfinite(v)) throw std::invalid_argument("decode: non-finite channel LLR");

    const double clamp = config.llr_clamp;
    Workspace ws;
    ws.llr.resize(cols_);
    for (std::int64_t c = 0; c < cols_; ++c) ws.llr[c] = clamp_mag(channel_llrs[c], clamp);
    ws.v2c.resize(edge_col_.size());
    ws.c2v.assign(edge_col_.size(), 0.0);
    ws.hard.resize(cols_);

    auto syndrome_mismatch = [&]() {
        std::int64_t bad = 0;
        const std::uint8_t* hard = ws.hard.data();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : bad) if (config.threads != 1)
#endif
        for (std::int64_t r = 0; r < rows_; ++r) {
            std::uint8_t acc = 0;
            for (std::int64_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) acc ^= hard[edge_col_[e]];
            bad += acc != target_syndrome[r];
        }
        return bad;
    };

    DecodeResult result;

    // channel-only decisions may already satisfy the target
    for (std::int64_t c = 0; c < cols_; ++c) ws.hard[c] = ws.llr[c] <= 0.0 ? 1 : 0;
    std::int64_t mismatch = syndrome_mismatch();
    if (mismatch == 0) {
        result.hard_bits = std::move(ws.hard);
        result.converged = true;
        result.iterations_used = 0;
        result.final_syndrome_weight = 0;
        return result;
    }

    for (std::int64_t e = 0; e < static_cast<std::int64_t>(edge_col_.size()); ++e)
        ws.v2c[e] = ws.llr[edge_col_[e]];

    int used = 0;
    for (int it = 1; it <= config.max_iterations; ++it) {
        used = it;
        check_pass(ws, target_syndrome, clamp, config.threads);
        var_pass(ws, channel_llrs, clamp, config.threads);
        if (config.early_stop || it == config.max_iterations) {
            mismatch = syndrome_mismatch();
            if (mismatch == 0) break;
        }
    }

    result.hard_bits = std::move(ws.hard);
    result.converged = mismatch == 0;
    result.iterations_used = used;
    result.final_syndrome_weight = mismatch;
    return result;
}

DecodeResult decode_bp(const SparseBinaryMatrix& h, std::span<const double> channel_llrs,
                       std::span<const std::uint8_t> target_syndrome,
                       const DecoderConfig& config) {
    return BpDecoder(h).decode(channel_llrs, target_syndrome, config);
}

std::vector<DecodeResult> batch_decode(const BpDecoder& decoder,
                                       const std::vector<FrameInput>& frames,
                                       const DecoderConfig& config) {
    std::vector<DecodeResult> results(frames.size());
    DecoderConfig frame_config = config;
    frame_config.threads = 1;  // parallelism at the frame level
    const std::int64_t count = static_cast<std::int64_t>(frames.size());
#ifdef _OPENMP
    const int nt = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt) if (count > 1)
#endif
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            results[i] = decoder.decode(frames[i].llrs, frames[i].target_syndrome, frame_config);
        } catch (const std::invalid_argument&) {
            results[i] = DecodeResult{};
            results[i].status = DecodeStatus::invalid_input;
        }
    }
    return results;
}

std::vector<DecodeResult> batch_decode(const SparseBinaryMatrix& h,
                                       const std::vector<FrameInput>& frames,
                                       const DecoderConfig& config) {
    return batch_decode(BpDecoder(h), frames, config);
}

}  // namespace rlldpc
