#include "rlldpc/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "rlldpc/rng.hpp"

namespace rlldpc {

std::vector<double> gaussian_source(std::int64_t n, double variance, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("gaussian_source: negative count");
    if (!(variance > 0.0)) throw std::invalid_argument("gaussian_source: variance must be > 0");
    Rng rng(seed);
    const double sd = std::sqrt(variance);
    std::vector<double> out(n);
    for (auto& v : out) v = sd * rng.gaussian();
    return out;
}

namespace {

double population_variance(std::span<const double> x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    return var / static_cast<double>(x.size());
}

}  // namespace

std::vector<double> awgn(std::span<const double> x, double snr, std::uint64_t seed) {
    if (!(snr > 0.0)) throw std::invalid_argument("awgn: snr must be > 0");
    if (x.empty()) return {};
    const double sd = std::sqrt(population_variance(x) / snr);
    Rng rng(seed);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + sd * rng.gaussian();
    return y;
}

double estimate_snr(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("estimate_snr: length mismatch");
    if (x.size() < 1000) throw std::invalid_argument("estimate_snr: need at least 1000 samples");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("estimate_snr: constant input");
    const double slope = sxy / sxx;
    const double signal = slope * slope * sxx;
    const double residual = syy - slope * sxy;
    if (!(residual > 0.0) || signal > residual * kSnrCap) return kSnrCap;
    return signal / residual;
}

double transmittance(const ChannelParams& params) {
    return std::pow(10.0, -params.loss_db_per_km * params.distance_km / 10.0);
}

double distance_to_snr(const ChannelParams& params) {
    if (!(params.detector_efficiency > 0.0 && params.detector_efficiency <= 1.0))
        throw std::invalid_argument("distance_to_snr: detector efficiency must be in (0, 1]");
    if (params.excess_noise < 0.0 || params.electronic_noise < 0.0)
        throw std::invalid_argument("distance_to_snr: noise parameters must be >= 0");
    if (!(params.modulation_variance > 0.0))
        throw std::invalid_argument("distance_to_snr: modulation variance must be > 0");
    const double t = transmittance(params);
    const double eff = params.detector_efficiency * t;
    return eff * params.modulation_variance /
           (1.0 + params.electronic_noise + eff * params.excess_noise);
}

}  // namespace rlldpc
