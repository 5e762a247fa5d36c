#pragma once

#include <cstdint>

#include "rlldpc/code.hpp"

namespace rlldpc {

// Integer node counts of the block family at a given scale. Derivation fails
// (naming the offending count) when scale * count is not an integer; the
// smallest admissible scale for the rate-0.02 family is 1/25.
struct BaseCounts {
    std::vector<std::pair<int, std::int64_t>> ab_col_weights;  // (weight, count)
    std::vector<std::pair<int, std::int64_t>> ab_row_weights;
    int cd_col_weight = 0;
    std::vector<std::pair<int, std::int64_t>> cd_row_weights;

    std::int64_t ab_rows() const;
    std::int64_t ab_cols() const;   // == cd cols == typed cols
    std::int64_t cd_rows() const;   // == identity cols
    std::int64_t ab_edges() const;
    std::int64_t cd_edges() const;
};

BaseCounts scaled_counts(const DegreeDistribution& dist, const Rational& scale);

// Dense core, built by progressive edge growth with capacity-constrained
// check selection (candidates at maximal graph distance, ties broken by
// lowest current degree then lowest index). Fully deterministic; the seed is
// accepted for interface uniformity.
SparseBinaryMatrix build_ab(const DegreeDistribution& dist, const Rational& scale,
                            std::uint64_t seed);

// Sparse LT-like block. Each column's edges are placed one per row stratum
// (span ceil(rows / column weight)), jittered by the seed, so bottom
// truncation removes a near-proportional share of every column's edges. Row
// weights are interleaved so the surviving weight mix moves from the base mix
// toward the higher-rate reference mix as rows are cut.
SparseBinaryMatrix build_cd(const DegreeDistribution& dist, const Rational& scale,
                            std::uint64_t seed);

// Concatenates AB (top left), CD (bottom left) and the diagonal identity
// (bottom right); the top-right block is zero.
RLLDPCCode assemble_base(const SparseBinaryMatrix& ab, const SparseBinaryMatrix& cd);

RLLDPCCode construct_base(const DegreeDistribution& dist, const Rational& scale,
                          std::uint64_t seed, const std::string& ensemble_id);

// Keeps the upper-left (M-p) x (N-p) submatrix. p must stay below cd_rows
// (cutting further would reach the AB block). Never drops an edge of a
// surviving row; throws if one would dangle.
RLLDPCCode puncture(const RLLDPCCode& code, std::int64_t p);

// Appends e check rows over the typed columns (weight mix 5/8 twos, 3/8
// threes, interleaved) plus an e x e diagonal identity on new columns.
// Only base codes may be extended.
RLLDPCCode extend(const RLLDPCCode& code, std::int64_t e, std::uint64_t seed);

}  // namespace rlldpc
