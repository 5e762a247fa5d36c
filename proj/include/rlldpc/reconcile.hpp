#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace rlldpc {

// Reconciliation dimension. Fixed at 8: the orthogonal-basis construction
// below is specific to the octonion algebra.
inline constexpr int kDim = 8;

using Vec8 = std::array<double, kDim>;

// 8x8 real matrix, row major
struct Mat8 {
    std::array<double, kDim * kDim> a{};

    double& at(int r, int c) { return a[r * kDim + c]; }
    double at(int r, int c) const { return a[r * kDim + c]; }
    Vec8 apply(const Vec8& v) const;
    Mat8 multiply_transposed(const Mat8& other) const;  // this * other^T
};

// Left-multiplication matrices A_1..A_8 of the octonion basis units
// (A_1 = identity). Each is a signed permutation, and for any unit y the set
// {A_i y} is an orthonormal basis of R^8.
struct OrthogonalBasisSet {
    std::array<Mat8, kDim> matrices;
    // signed-permutation form: row r of A_k is sign[k][r] at column src[k][r]
    std::array<std::array<std::int8_t, kDim>, kDim> sign;
    std::array<std::array<std::uint8_t, kDim>, kDim> src;
};

const OrthogonalBasisSet& octonion_basis();

// Orthogonal map M with M y = u, plus the coordinates alpha of u in the
// basis {A_i y}.
struct MappingFunction {
    Mat8 matrix;
    Vec8 alpha;
};

// (w / |w|, |w|). Throws std::domain_error on the zero vector.
std::pair<Vec8, double> normalize(const Vec8& w);

// u_i = (-1)^{b_i} / sqrt(8)
Vec8 map_bits_to_sphere(std::span<const std::uint8_t> bits);

// alpha_i = (A_i y) . u ; M = sum_i alpha_i A_i. Inputs must be unit vectors
// (within 1e-9).
MappingFunction compute_mapping(const Vec8& y_unit, const Vec8& u_unit);

struct SideInformation {
    std::vector<MappingFunction> mappings;
    std::vector<double> y_norms;  // held locally; not part of the disclosed stream
};

// Bob's side: per 8-block, normalize y, map key bits onto the sphere, and
// compute the mapping function. Frame length must be divisible by 8.
SideInformation reconcile_transmit(std::span<const double> y_frame,
                                   std::span<const std::uint8_t> key_bits);

// Per-coordinate LLR scale of the virtual channel, 2*sqrt(8*snr*(1+snr)).
// The rotated observation is v = (|Y|/|X|) u + M z/|X| with z the physical
// noise, i.e. signal amplitude sqrt(snr/(1+snr))/sqrt(8) and noise variance
// 1/(8(1+snr)); 2*amplitude/variance folds to the constant above.
double llr_scale(double snr);

struct ReconciliationFrame {
    std::vector<double> x_norms;
    std::vector<double> v;  // concatenated rotated blocks
    std::vector<double> llrs;
};

// Alice's side: normalize x per block, rotate by the received mapping, and
// emit LLRs with sign convention LLR > 0 <=> bit 0. Deterministic.
std::vector<double> reconcile_receive(std::span<const double> x_frame,
                                      const SideInformation& side, double snr,
                                      ReconciliationFrame* detail = nullptr);

// Binary side-information stream: little-endian u32 block count, u32
// dimension (8), then per block the 64 doubles of M row-major.
void write_side_info(std::ostream& out, const SideInformation& side);
SideInformation read_side_info(std::istream& in);

}  // namespace rlldpc
