#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rlldpc {

// Channel and detector parameters in shot-noise units (homodyne detection).
struct ChannelParams {
    double distance_km = 0.0;
    double loss_db_per_km = 0.2;
    double detector_efficiency = 0.6;  // eta
    double excess_noise = 0.01;        // xi, at channel input
    double electronic_noise = 0.015;   // v_el
    double modulation_variance = 2.5;  // V_A
};

// i.i.d. zero-mean Gaussian samples, deterministic per seed.
std::vector<double> gaussian_source(std::int64_t n, double variance, std::uint64_t seed);

// y_i = x_i + n_i with noise variance var(x)/snr (var measured on the input).
std::vector<double> awgn(std::span<const double> x, double snr, std::uint64_t seed);

// Returned by estimate_snr when the residual is numerically zero.
inline constexpr double kSnrCap = 1e15;

// Least-squares fit of y on x; returns var(signal)/var(noise). Requires equal
// lengths >= 1000 and non-constant x.
double estimate_snr(std::span<const double> x, std::span<const double> y);

// T = 10^(-loss * distance / 10)
double transmittance(const ChannelParams& params);

// snr = eta T V_A / (1 + v_el + eta T xi)
double distance_to_snr(const ChannelParams& params);

}  // namespace rlldpc
