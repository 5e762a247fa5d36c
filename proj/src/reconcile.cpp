#include "rlldpc/reconcile.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace rlldpc {

Vec8 Mat8::apply(const Vec8& v) const {
    Vec8 out{};
    for (int r = 0; r < kDim; ++r) {
        double s = 0.0;
        for (int c = 0; c < kDim; ++c) s += at(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

Mat8 Mat8::multiply_transposed(const Mat8& other) const {
    Mat8 out;
    for (int r = 0; r < kDim; ++r)
        for (int c = 0; c < kDim; ++c) {
            double s = 0.0;
            for (int k = 0; k < kDim; ++k) s += at(r, k) * other.at(c, k);
            out.at(r, c) = s;
        }
    return out;
}

namespace {

// quaternion basis products (1, i, j, k)
constexpr int kQIdx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
constexpr int kQSgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};

constexpr int conj_sign(int q) { return q == 0 ? 1 : -1; }

// product of octonion basis units via the Cayley-Dickson doubling
// (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))
constexpr std::pair<int, int> octonion_unit_product(int a, int b) {
    const bool a_hi = a >= 4, b_hi = b >= 4;
    const int al = a_hi ? a - 4 : a;
    const int bl = b_hi ? b - 4 : b;
    if (!a_hi && !b_hi) return {kQSgn[al][bl], kQIdx[al][bl]};
    if (a_hi && b_hi) {
        // -conj(d) b with d = e_bl, b = e_al
        const int s = kQSgn[bl][al] * conj_sign(bl);
        return {-s, kQIdx[bl][al]};
    }
    if (!a_hi && b_hi) {
        // d a
        return {kQSgn[bl][al], kQIdx[bl][al] + 4};
    }
    // b conj(c)
    const int s = kQSgn[al][bl] * conj_sign(bl);
    return {s, kQIdx[al][bl] + 4};
}

OrthogonalBasisSet make_basis() {
    OrthogonalBasisSet basis{};
    for (int k = 0; k < kDim; ++k) {
        for (int j = 0; j < kDim; ++j) {
            auto [s, i] = octonion_unit_product(k, j);
            basis.matrices[k].at(i, j) = s;
            basis.sign[k][i] = static_cast<std::int8_t>(s);
            basis.src[k][i] = static_cast<std::uint8_t>(j);
        }
    }
    return basis;
}

double norm_of(const Vec8& w) {
    double s = 0.0;
    for (double v : w) s += v * v;
    return std::sqrt(s);
}

}  // namespace

const OrthogonalBasisSet& octonion_basis() {
    static const OrthogonalBasisSet basis = make_basis();
    return basis;
}

std::pair<Vec8, double> normalize(const Vec8& w) {
    const double norm = norm_of(w);
    if (norm == 0.0) throw std::domain_error("normalize: zero vector");
    Vec8 unit;
    for (int i = 0; i < kDim; ++i) unit[i] = w[i] / norm;
    return {unit, norm};
}

Vec8 map_bits_to_sphere(std::span<const std::uint8_t> bits) {
    if (bits.size() != kDim)
        throw std::invalid_argument("map_bits_to_sphere: need exactly 8 bits");
    const double k = 1.0 / std::sqrt(8.0);
    Vec8 u;
    for (int i = 0; i < kDim; ++i) u[i] = bits[i] ? -k : k;
    return u;
}

MappingFunction compute_mapping(const Vec8& y_unit, const Vec8& u_unit) {
    if (std::abs(norm_of(y_unit) - 1.0) > 1e-9 || std::abs(norm_of(u_unit) - 1.0) > 1e-9)
        throw std::invalid_argument("compute_mapping: inputs must be unit vectors");
    const OrthogonalBasisSet& basis = octonion_basis();
    MappingFunction mf{};
    for (int k = 0; k < kDim; ++k) {
        double alpha = 0.0;
        for (int i = 0; i < kDim; ++i)
            alpha += basis.sign[k][i] * y_unit[basis.src[k][i]] * u_unit[i];
        mf.alpha[k] = alpha;
    }
    for (int k = 0; k < kDim; ++k)
        for (int i = 0; i < kDim; ++i)
            mf.matrix.at(i, basis.src[k][i]) += mf.alpha[k] * basis.sign[k][i];
    return mf;
}

SideInformation reconcile_transmit(std::span<const double> y_frame,
                                   std::span<const std::uint8_t> key_bits) {
    if (y_frame.size() % kDim != 0)
        throw std::invalid_argument("reconcile_transmit: frame length not divisible by 8");
    if (key_bits.size() != y_frame.size())
        throw std::invalid_argument("reconcile_transmit: key length differs from frame length");
    const std::int64_t blocks = static_cast<std::int64_t>(y_frame.size()) / kDim;
    SideInformation side;
    side.mappings.resize(blocks);
    side.y_norms.resize(blocks);
    std::int64_t degenerate = -1;  // exceptions must not escape the parallel region
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
        Vec8 y;
        std::memcpy(y.data(), y_frame.data() + b * kDim, sizeof y);
        double norm = 0.0;
        for (double v : y) norm += v * v;
        if (norm == 0.0) {
            degenerate = b;
            continue;
        }
        norm = std::sqrt(norm);
        Vec8 unit;
        for (int i = 0; i < kDim; ++i) unit[i] = y[i] / norm;
        Vec8 u = map_bits_to_sphere(key_bits.subspan(b * kDim, kDim));
        side.mappings[b] = compute_mapping(unit, u);
        side.y_norms[b] = norm;
    }
    if (degenerate >= 0)
        throw std::domain_error("reconcile_transmit: zero block at index " +
                                std::to_string(degenerate));
    return side;
}

double llr_scale(double snr) {
    if (!(snr > 0.0)) throw std::invalid_argument("llr_scale: snr must be > 0");
    return 2.0 * std::sqrt(kDim * snr * (1.0 + snr));
}

std::vector<double> reconcile_receive(std::span<const double> x_frame,
                                      const SideInformation& side, double snr,
                                      ReconciliationFrame* detail) {
    if (x_frame.size() != side.mappings.size() * kDim)
        throw std::invalid_argument("reconcile_receive: frame length mismatch with side info");
    const double scale = llr_scale(snr);
    const std::int64_t blocks = static_cast<std::int64_t>(side.mappings.size());
    std::vector<double> llrs(x_frame.size());
    if (detail) {
        detail->x_norms.resize(blocks);
        detail->v.resize(x_frame.size());
        detail->llrs.resize(x_frame.size());
    }
    std::int64_t degenerate = -1;
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
        Vec8 x;
        std::memcpy(x.data(), x_frame.data() + b * kDim, sizeof x);
        double norm = 0.0;
        for (double v : x) norm += v * v;
        if (norm == 0.0) {
            degenerate = b;
            continue;
        }
        norm = std::sqrt(norm);
        Vec8 unit;
        for (int i = 0; i < kDim; ++i) unit[i] = x[i] / norm;
        Vec8 v = side.mappings[b].matrix.apply(unit);
        for (int i = 0; i < kDim; ++i) llrs[b * kDim + i] = scale * v[i];
        if (detail) {
            detail->x_norms[b] = norm;
            std::memcpy(detail->v.data() + b * kDim, v.data(), sizeof v);
        }
    }
    if (degenerate >= 0)
        throw std::domain_error("reconcile_receive: zero block at index " +
                                std::to_string(degenerate));
    if (detail) detail->llrs = llrs;
    return llrs;
}

// ---------------------------------------------------------------------------
// side-information stream

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("side info: truncated header");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    out.write(b, 8);
}

double get_f64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("side info: truncated payload");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void write_side_info(std::ostream& out, const SideInformation& side) {
    put_u32(out, static_cast<std::uint32_t>(side.mappings.size()));
    put_u32(out, kDim);
    for (const auto& mf : side.mappings)
        for (double v : mf.matrix.a) put_f64(out, v);
    if (!out) throw std::runtime_error("side info: write failed");
}

SideInformation read_side_info(std::istream& in) {
    SideInformation side;
    const std::uint32_t blocks = get_u32(in);
    const std::uint32_t dim = get_u32(in);
    if (dim != kDim)
        throw std::runtime_error("side info: dimension " + std::to_string(dim) + ", expected 8");
    side.mappings.resize(blocks);
    for (auto& mf : side.mappings) {
        for (double& v : mf.matrix.a) v = get_f64(in);
        // alpha is not part of the stream; recover the coordinates from M
        // applied to the basis action later if needed (left zero here)
    }
    return side;
}

}  // namespace rlldpc
