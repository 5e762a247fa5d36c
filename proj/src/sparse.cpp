#include "rlldpc/sparse.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rlldpc {

SparseBinaryMatrix SparseBinaryMatrix::from_edges(std::int64_t rows, std::int64_t cols,
                                                  std::vector<Edge> edges) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    SparseBinaryMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;

    for (const auto& [r, c] : edges) {
        if (r >= rows || c >= cols)
            throw std::invalid_argument("edge (" + std::to_string(r) + ", " + std::to_string(c) +
                                        ") outside " + std::to_string(rows) + "x" +
                                        std::to_string(cols));
    }

    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (edges[i] == edges[i - 1])
            throw std::invalid_argument("duplicate edge at row " + std::to_string(edges[i].first) +
                                        ", col " + std::to_string(edges[i].second));
    }

    m.row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
    m.row_cols_.resize(edges.size());
    for (const auto& [r, c] : edges) ++m.row_ptr_[r + 1];
    for (std::int64_t r = 0; r < rows; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    for (std::size_t i = 0; i < edges.size(); ++i) m.row_cols_[i] = edges[i].second;

    m.col_ptr_.assign(static_cast<std::size_t>(cols) + 1, 0);
    m.col_rows_.resize(edges.size());
    for (const auto& [r, c] : edges) ++m.col_ptr_[c + 1];
    for (std::int64_t c = 0; c < cols; ++c) m.col_ptr_[c + 1] += m.col_ptr_[c];
    {
        std::vector<std::int64_t> fill(m.col_ptr_.begin(), m.col_ptr_.end() - 1);
        for (const auto& [r, c] : edges) m.col_rows_[fill[c]++] = r;
    }
    return m;
}

std::map<int, std::int64_t> SparseBinaryMatrix::row_degree_histogram() const {
    std::map<int, std::int64_t> h;
    for (std::int64_t r = 0; r < rows_; ++r) ++h[static_cast<int>(row_degree(r))];
    return h;
}

std::map<int, std::int64_t> SparseBinaryMatrix::col_degree_histogram() const {
    std::map<int, std::int64_t> h;
    for (std::int64_t c = 0; c < cols_; ++c) ++h[static_cast<int>(col_degree(c))];
    return h;
}

std::vector<SparseBinaryMatrix::Edge> SparseBinaryMatrix::edges() const {
    std::vector<Edge> out;
    out.reserve(row_cols_.size());
    for (std::int64_t r = 0; r < rows_; ++r)
        for (std::uint32_t c : row_cols(r)) out.emplace_back(static_cast<std::uint32_t>(r), c);
    return out;
}

void SparseBinaryMatrix::check_consistency() const {
    if (row_cols_.size() != col_rows_.size())
        throw std::runtime_error("edge count differs between row and column adjacency");
    for (std::int64_t r = 0; r < rows_; ++r) {
        auto cs = row_cols(r);
        for (std::size_t i = 0; i + 1 < cs.size(); ++i)
            if (cs[i] >= cs[i + 1])
                throw std::runtime_error("row " + std::to_string(r) + " not strictly sorted");
        for (std::uint32_t c : cs) {
            auto rs = col_rows(c);
            if (!std::binary_search(rs.begin(), rs.end(), static_cast<std::uint32_t>(r)))
                throw std::runtime_error("edge (" + std::to_string(r) + ", " + std::to_string(c) +
                                         ") missing from column adjacency");
        }
    }
    for (std::int64_t c = 0; c < cols_; ++c) {
        auto rs = col_rows(c);
        for (std::size_t i = 0; i + 1 < rs.size(); ++i)
            if (rs[i] >= rs[i + 1])
                throw std::runtime_error("col " + std::to_string(c) + " not strictly sorted");
    }
}

}  // namespace rlldpc
