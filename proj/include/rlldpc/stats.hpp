#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "rlldpc/code.hpp"

namespace rlldpc {

struct StatsReport {
    std::int64_t rows = 0;
    std::int64_t cols = 0;
    std::int64_t edges = 0;
    Rational rate{0};
    std::int64_t ab_edges = 0;
    std::int64_t cd_edges = 0;        // includes extension rows
    std::int64_t identity_edges = 0;
    std::map<int, std::int64_t> row_degree_hist;
    std::map<int, std::int64_t> col_degree_hist;
    int girth_bound = 8;
    int ab_girth = 0;       // shortest cycle found in the AB block; 0 = none <= bound
    int sampled_girth = 0;  // shortest cycle found from sampled columns of the full graph

    std::string to_text() const;  // key=value lines
};

StatsReport matrix_stats(const RLLDPCCode& code);

// Shortest cycle of length <= max_len through any column in
// [col_begin, col_end) stepping by col_stride, restricted to rows < row_limit.
// Returns 0 when none is found.
int shortest_cycle_bounded(const SparseBinaryMatrix& m, int max_len,
                           std::int64_t col_begin, std::int64_t col_end,
                           std::int64_t col_stride, std::int64_t row_limit);

}  // namespace rlldpc
