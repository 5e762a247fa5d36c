#pragma once

#include <cstdint>

#include "rlldpc/channel.hpp"

namespace rlldpc {

struct KeyRateInputs {
    double alpha = 1.0;  // fraction of data used for key extraction
    double fer = 0.0;
    double beta = 0.95;
    ChannelParams channel;
    std::int64_t block_size_n = 10'000'000'000;
    double security_eps = 1e-10;
};

// I_AB = 1/2 log2(1 + snr)
double mutual_information(double snr);

// Bosonic entropy g(x) = ((x+1)/2)log2((x+1)/2) - ((x-1)/2)log2((x-1)/2)
double gaussian_entropy_g(double nu);

// Holevo bound chi_BE for Gaussian-modulated coherent states, homodyne
// detection, reverse reconciliation, trusted detector noise. Computed from
// the symplectic eigenvalues of the shared state before Bob's measurement
// (nu_1, nu_2) and of Eve's state conditioned on Bob's homodyne outcome
// (nu_3, nu_4):
//
//   V = V_A + 1, chi_line = (1-T)/T + xi, chi_hom = (1+v_el)/eta - 1,
//   chi_tot = chi_line + chi_hom/T
//   A = V^2 (1-2T) + 2T + T^2 (V+chi_line)^2,  B = T^2 (V chi_line + 1)^2
//   C = (A chi_hom + V sqrt(B) + T(V+chi_line)) / (T (V+chi_tot))
//   D = sqrt(B) (V + sqrt(B) chi_hom) / (T (V+chi_tot))
//   nu_{1,2}^2 = (A -+ sqrt(A^2-4B))/2,  nu_{3,4}^2 = (C -+ sqrt(C^2-4D))/2
//   chi_BE = g(nu_1)+g(nu_2)-g(nu_3)-g(nu_4)
//
// Throws std::domain_error when a symplectic eigenvalue falls below 1
// (inconsistent parameters).
double holevo_bound(const ChannelParams& params);

// Delta(n) = 7 sqrt(log2(2/eps) / n)
double finite_size_offset(std::int64_t n, double eps);

// K = alpha (1 - FER) [beta I_AB - chi_BE - Delta(n)]; negative values are
// returned as-is.
double secret_key_rate(const KeyRateInputs& inputs);

// Repeaterless bound -log2(1 - T)
double plob_bound(double transmittance);

// Golden-section search for the V_A maximizing secret_key_rate at the given
// inputs (tolerance 1e-4 in V_A). inputs.channel.modulation_variance is
// ignored.
double optimal_modulation_variance(const KeyRateInputs& inputs, double lo = 0.05,
                                   double hi = 80.0);

}  // namespace rlldpc
