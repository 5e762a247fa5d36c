#include "rlldpc/stats.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>
#include <vector>

namespace rlldpc {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

int shortest_cycle_bounded(const SparseBinaryMatrix& m, int max_len, std::int64_t col_begin,
                           std::int64_t col_end, std::int64_t col_stride,
                           std::int64_t row_limit) {
    const std::int64_t n = m.cols();
    const std::int64_t total = n + m.rows();  // cols in [0,n), rows offset by n
    std::vector<std::uint32_t> stamp(total, 0);
    std::vector<std::int32_t> dist(total, 0);
    std::vector<std::int64_t> parent(total, -1);
    std::vector<std::int64_t> queue;
    std::uint32_t epoch = 0;
    int best = 0;
    const int max_depth = max_len / 2;

    for (std::int64_t c0 = col_begin; c0 < col_end; c0 += col_stride) {
        ++epoch;
        queue.clear();
        queue.push_back(c0);
        stamp[c0] = epoch;
        dist[c0] = 0;
        parent[c0] = -1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::int64_t node = queue[head];
            const std::int32_t d = dist[node];
            if (d >= max_depth) continue;
            auto visit = [&](std::int64_t next) {
                if (next == parent[node]) return;
                if (stamp[next] == epoch) {
                    const int cycle = d + dist[next] + 1;
                    if (cycle <= max_len && (best == 0 || cycle < best)) best = cycle;
                    return;
                }
                stamp[next] = epoch;
                dist[next] = d + 1;
                parent[next] = node;
                queue.push_back(next);
            };
            if (node < n) {
                for (std::uint32_t r : m.col_rows(node))
                    if (r < row_limit) visit(n + static_cast<std::int64_t>(r));
            } else {
                for (std::uint32_t c : m.row_cols(node - n)) visit(c);
            }
        }
        if (best == 4) break;  // bipartite minimum
    }
    return best;
}

StatsReport matrix_stats(const RLLDPCCode& code) {
    StatsReport s;
    const SparseBinaryMatrix& m = code.matrix;
    s.rows = m.rows();
    s.cols = m.cols();
    s.edges = m.edge_count();
    s.rate = s.cols > 0 ? Rational(s.cols - s.rows, s.cols) : Rational(0);
    s.row_degree_hist = m.row_degree_histogram();
    s.col_degree_hist = m.col_degree_histogram();

    const std::int64_t c1 = code.layout.ab_rows;
    const std::int64_t typed = code.layout.typed_cols;
    for (std::int64_t r = 0; r < s.rows; ++r) {
        for (std::uint32_t c : m.row_cols(r)) {
            if (c >= typed)
                ++s.identity_edges;
            else if (r < c1)
                ++s.ab_edges;
            else
                ++s.cd_edges;
        }
    }

    if (typed > 0 && c1 > 0) s.ab_girth = shortest_cycle_bounded(m, s.girth_bound, 0, typed, 1, c1);
    if (s.cols > 0) {
        const std::int64_t stride = std::max<std::int64_t>(1, s.cols / 256);
        s.sampled_girth = shortest_cycle_bounded(m, s.girth_bound, 0, s.cols, stride, s.rows);
    }
    return s;
}

std::string StatsReport::to_text() const {
    std::ostringstream out;
    out << "rows=" << rows << "\n";
    out << "cols=" << cols << "\n";
    out << "edges=" << edges << "\n";
    out << "rate=" << format_double(to_double(rate)) << "\n";
    out << "rate_exact=" << format_rational(rate) << "\n";
    out << "ab_edges=" << ab_edges << "\n";
    out << "cd_edges=" << cd_edges << "\n";
    out << "identity_edges=" << identity_edges << "\n";
    auto hist = [&out](const char* tag, const std::map<int, std::int64_t>& h) {
        out << tag << "=";
        bool first = true;
        for (const auto& [deg, count] : h) {
            if (!first) out << ",";
            out << deg << ":" << count;
            first = false;
        }
        out << "\n";
    };
    hist("row_degree_hist", row_degree_hist);
    hist("col_degree_hist", col_degree_hist);
    out << "girth_bound=" << girth_bound << "\n";
    out << "ab_girth=" << ab_girth << "\n";
    out << "sampled_girth=" << sampled_girth << "\n";
    return out.str();
}

}  // namespace rlldpc
