#include "rlldpc/alist.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rlldpc {

namespace {

void append_int(std::string& out, std::int64_t v) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

class LineReader {
public:
    LineReader(std::istream& in, const std::string& name) : in_(in), name_(name) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error(name_ + ":" + std::to_string(line_no_) + ": " + what);
    }

    // next non-empty line split into integers
    const std::vector<std::int64_t>& next_ints() {
        std::string line;
        for (;;) {
            if (!std::getline(in_, line)) fail("unexpected end of file");
            ++line_no_;
            ints_.clear();
            const char* p = line.data();
            const char* end = p + line.size();
            while (p < end) {
                while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
                if (p >= end) break;
                std::int64_t v = 0;
                auto [next, ec] = std::from_chars(p, end, v);
                if (ec != std::errc() || (next < end && *next != ' ' && *next != '\t' && *next != '\r'))
                    fail("expected integer, got '" + std::string(p, end) + "'");
                ints_.push_back(v);
                p = next;
            }
            if (!ints_.empty()) return ints_;
        }
    }

private:
    std::istream& in_;
    std::string name_;
    int line_no_ = 0;
    std::vector<std::int64_t> ints_;
};

}  // namespace

void write_alist(const SparseBinaryMatrix& m, std::ostream& out) {
    const std::int64_t n = m.cols();
    const std::int64_t rows = m.rows();
    std::int64_t max_col = 0, max_row = 0;
    for (std::int64_t c = 0; c < n; ++c) max_col = std::max(max_col, m.col_degree(c));
    for (std::int64_t r = 0; r < rows; ++r) max_row = std::max(max_row, m.row_degree(r));

    std::string buf;
    buf.reserve(1 << 20);
    auto flush = [&] {
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        buf.clear();
    };

    append_int(buf, n);
    buf += ' ';
    append_int(buf, rows);
    buf += '\n';
    append_int(buf, max_col);
    buf += ' ';
    append_int(buf, max_row);
    buf += '\n';
    for (std::int64_t c = 0; c < n; ++c) {
        if (c) buf += ' ';
        append_int(buf, m.col_degree(c));
    }
    buf += '\n';
    for (std::int64_t r = 0; r < rows; ++r) {
        if (r) buf += ' ';
        append_int(buf, m.row_degree(r));
    }
    buf += '\n';
    flush();
    for (std::int64_t c = 0; c < n; ++c) {
        bool first = true;
        for (std::uint32_t r : m.col_rows(c)) {
            if (!first) buf += ' ';
            append_int(buf, static_cast<std::int64_t>(r) + 1);
            first = false;
        }
        buf += '\n';
        if (buf.size() > (1 << 20)) flush();
    }
    for (std::int64_t r = 0; r < rows; ++r) {
        bool first = true;
        for (std::uint32_t c : m.row_cols(r)) {
            if (!first) buf += ' ';
            append_int(buf, static_cast<std::int64_t>(c) + 1);
            first = false;
        }
        buf += '\n';
        if (buf.size() > (1 << 20)) flush();
    }
    flush();
}

void write_alist(const SparseBinaryMatrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_alist(m, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

SparseBinaryMatrix read_alist(std::istream& in, const std::string& name) {
    LineReader reader(in, name);

    const auto& header = reader.next_ints();
    if (header.size() != 2) reader.fail("expected 'N M' header");
    const std::int64_t n = header[0];
    const std::int64_t rows = header[1];
    if (n < 0 || rows < 0) reader.fail("negative dimensions");

    const auto& maxima = reader.next_ints();
    if (maxima.size() != 2) reader.fail("expected max column/row degrees");
    const std::int64_t max_col = maxima[0];
    const std::int64_t max_row = maxima[1];

    std::vector<std::int64_t> col_deg;
    while (static_cast<std::int64_t>(col_deg.size()) < n) {
        for (std::int64_t v : reader.next_ints()) col_deg.push_back(v);
    }
    if (static_cast<std::int64_t>(col_deg.size()) != n) reader.fail("too many column degrees");
    std::vector<std::int64_t> row_deg;
    while (static_cast<std::int64_t>(row_deg.size()) < rows) {
        for (std::int64_t v : reader.next_ints()) row_deg.push_back(v);
    }
    if (static_cast<std::int64_t>(row_deg.size()) != rows) reader.fail("too many row degrees");

    std::int64_t col_edges = 0, row_edges = 0;
    for (std::int64_t c = 0; c < n; ++c) {
        if (col_deg[c] < 0 || col_deg[c] > max_col) reader.fail("column degree out of range");
        col_edges += col_deg[c];
    }
    for (std::int64_t r = 0; r < rows; ++r) {
        if (row_deg[r] < 0 || row_deg[r] > max_row) reader.fail("row degree out of range");
        row_edges += row_deg[r];
    }
    if (col_edges != row_edges) reader.fail("column and row degree totals differ");

    std::vector<SparseBinaryMatrix::Edge> edges;
    edges.reserve(col_edges);
    for (std::int64_t c = 0; c < n; ++c) {
        const auto& entries = reader.next_ints();
        std::int64_t listed = 0;
        for (std::int64_t v : entries) {
            if (v == 0) continue;  // zero padding
            if (v < 1 || v > rows) reader.fail("row index " + std::to_string(v) + " out of range");
            edges.emplace_back(static_cast<std::uint32_t>(v - 1), static_cast<std::uint32_t>(c));
            ++listed;
        }
        if (listed != col_deg[c])
            reader.fail("column " + std::to_string(c + 1) + " lists " + std::to_string(listed) +
                        " entries, degree says " + std::to_string(col_deg[c]));
    }

    SparseBinaryMatrix m;
    try {
        m = SparseBinaryMatrix::from_edges(rows, n, std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(name + ": " + e.what());
    }

    // cross-check the redundant row lists
    for (std::int64_t r = 0; r < rows; ++r) {
        const auto& entries = reader.next_ints();
        std::vector<std::uint32_t> cols;
        for (std::int64_t v : entries) {
            if (v == 0) continue;
            if (v < 1 || v > n) reader.fail("column index " + std::to_string(v) + " out of range");
            cols.push_back(static_cast<std::uint32_t>(v - 1));
        }
        std::sort(cols.begin(), cols.end());
        auto expect = m.row_cols(r);
        if (cols.size() != expect.size() || !std::equal(cols.begin(), cols.end(), expect.begin()))
            reader.fail("row " + std::to_string(r + 1) + " adjacency disagrees with column lists");
    }
    return m;
}

SparseBinaryMatrix read_alist(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_alist(in, path);
}

// ---------------------------------------------------------------------------

void write_code(const RLLDPCCode& code, const std::string& path_prefix) {
    write_alist(code.matrix, path_prefix + ".alist");
    std::ofstream out(path_prefix + ".meta", std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path_prefix + ".meta");
    out << "format=rlldpc-code-meta-v1\n";
    out << "ensemble_id=" << code.ensemble_id << "\n";
    out << "seed=" << code.seed << "\n";
    out << "ab_rows=" << code.layout.ab_rows << "\n";
    out << "cd_rows=" << code.layout.cd_rows << "\n";
    out << "typed_cols=" << code.layout.typed_cols << "\n";
    out << "identity_cols=" << code.layout.identity_cols << "\n";
    out << "adaptation=";
    for (std::size_t i = 0; i < code.adaptation.size(); ++i) {
        if (i) out << ";";
        out << rate_mode_name(code.adaptation[i].mode) << ":" << code.adaptation[i].length;
    }
    out << "\n";
    if (!out) throw std::runtime_error("write failed: " + path_prefix + ".meta");
}

RLLDPCCode read_code(const std::string& path_prefix) {
    RLLDPCCode code;
    code.matrix = read_alist(path_prefix + ".alist");

    std::ifstream in(path_prefix + ".meta", std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path_prefix + ".meta");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path_prefix + ".meta:" + std::to_string(line_no) +
                                     ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (!value.empty() && value.back() == '\r') value.pop_back();
        if (key == "format") {
            if (value != "rlldpc-code-meta-v1")
                throw std::runtime_error(path_prefix + ".meta: unknown format '" + value + "'");
        } else if (key == "ensemble_id") {
            code.ensemble_id = value;
        } else if (key == "seed") {
            code.seed = std::stoull(value);
        } else if (key == "ab_rows") {
            code.layout.ab_rows = std::stoll(value);
        } else if (key == "cd_rows") {
            code.layout.cd_rows = std::stoll(value);
        } else if (key == "typed_cols") {
            code.layout.typed_cols = std::stoll(value);
        } else if (key == "identity_cols") {
            code.layout.identity_cols = std::stoll(value);
        } else if (key == "adaptation") {
            std::istringstream steps(value);
            std::string step;
            while (std::getline(steps, step, ';')) {
                if (step.empty()) continue;
                auto colon = step.find(':');
                if (colon == std::string::npos)
                    throw std::runtime_error(path_prefix + ".meta: bad adaptation entry '" + step +
                                             "'");
                std::string mode = step.substr(0, colon);
                std::int64_t length = std::stoll(step.substr(colon + 1));
                if (mode == "puncture")
                    code.adaptation.push_back({RateMode::Puncture, length});
                else if (mode == "extend")
                    code.adaptation.push_back({RateMode::Extend, length});
                else if (mode == "none")
                    code.adaptation.push_back({RateMode::None, length});
                else
                    throw std::runtime_error(path_prefix + ".meta: bad adaptation mode '" + mode +
                                             "'");
            }
        }
        // unknown keys ignored
    }
    if (code.layout.ab_rows + code.layout.cd_rows != code.matrix.rows() ||
        code.layout.typed_cols + code.layout.identity_cols != code.matrix.cols())
        throw std::runtime_error(path_prefix + ".meta: layout disagrees with matrix dimensions");
    return code;
}

}  // namespace rlldpc
