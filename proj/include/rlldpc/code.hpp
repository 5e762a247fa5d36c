#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlldpc/ensemble.hpp"
#include "rlldpc/sparse.hpp"

namespace rlldpc {

// Block geometry of the raptor-like layout:
//
//   [ AB | Z ]   AB: ab_rows x typed_cols (dense core, edge type 1)
//   [ CD | I ]   CD: cd_rows x typed_cols (edge type 2), I diagonal on the
//                identity columns (edge type 3)
//
// Extension rows keep the same shape (entries in the typed columns plus one
// new diagonal identity column), so cd_rows/identity_cols grow together and
// bottom-cutting always removes matched row/column pairs.
struct BlockLayout {
    std::int64_t ab_rows = 0;        // C1
    std::int64_t cd_rows = 0;        // C2
    std::int64_t typed_cols = 0;     // V1 + V2
    std::int64_t identity_cols = 0;  // V3 == C2
};

struct AdaptationStep {
    RateMode mode = RateMode::None;
    std::int64_t length = 0;
};

struct RLLDPCCode {
    SparseBinaryMatrix matrix;
    BlockLayout layout;
    std::string ensemble_id;
    std::uint64_t seed = 0;
    std::vector<AdaptationStep> adaptation;

    Rational rate() const;  // (N - M) / N
    bool is_base() const { return adaptation.empty(); }
};

}  // namespace rlldpc
