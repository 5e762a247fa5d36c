#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace rlldpc {

// Binary parity-check matrix stored as row and column adjacency (both sorted).
// Immutable after construction; safe to share across threads.
class SparseBinaryMatrix {
public:
    using Edge = std::pair<std::uint32_t, std::uint32_t>;  // (row, col)

    SparseBinaryMatrix() = default;

    // Builds both adjacencies from an edge list. Throws std::invalid_argument
    // on out-of-range indices or duplicate edges (naming row and column).
    static SparseBinaryMatrix from_edges(std::int64_t rows, std::int64_t cols,
                                         std::vector<Edge> edges);

    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(row_cols_.size()); }

    std::span<const std::uint32_t> row_cols(std::int64_t r) const {
        return {row_cols_.data() + row_ptr_[r], row_cols_.data() + row_ptr_[r + 1]};
    }
    std::span<const std::uint32_t> col_rows(std::int64_t c) const {
        return {col_rows_.data() + col_ptr_[c], col_rows_.data() + col_ptr_[c + 1]};
    }

    std::int64_t row_degree(std::int64_t r) const { return row_ptr_[r + 1] - row_ptr_[r]; }
    std::int64_t col_degree(std::int64_t c) const { return col_ptr_[c + 1] - col_ptr_[c]; }

    std::map<int, std::int64_t> row_degree_histogram() const;
    std::map<int, std::int64_t> col_degree_histogram() const;

    std::vector<Edge> edges() const;  // row-major

    // Row/column adjacency must describe the same edge set; throws on any
    // transpose inconsistency. Used by tests and the validate command.
    void check_consistency() const;

    bool operator==(const SparseBinaryMatrix& other) const = default;

private:
    std::int64_t rows_ = 0;
    std::int64_t cols_ = 0;
    std::vector<std::int64_t> row_ptr_;
    std::vector<std::uint32_t> row_cols_;
    std::vector<std::int64_t> col_ptr_;
    std::vector<std::uint32_t> col_rows_;
};

}  // namespace rlldpc
