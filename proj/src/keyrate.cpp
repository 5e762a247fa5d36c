#include "rlldpc/keyrate.hpp"

#include <cmath>
#include <stdexcept>

namespace rlldpc {

double mutual_information(double snr) {
    if (!(snr > 0.0)) throw std::invalid_argument("mutual_information: snr must be > 0");
    return 0.5 * std::log2(1.0 + snr);
}

double gaussian_entropy_g(double nu) {
    if (nu < 1.0 - 1e-9) throw std::domain_error("gaussian_entropy_g: eigenvalue below 1");
    if (nu <= 1.0 + 1e-15) return 0.0;
    const double p = (nu + 1.0) / 2.0;
    const double q = (nu - 1.0) / 2.0;
    return p * std::log2(p) - q * std::log2(q);
}

double holevo_bound(const ChannelParams& params) {
    const double t = transmittance(params);
    const double eta = params.detector_efficiency;
    const double xi = params.excess_noise;
    const double vel = params.electronic_noise;
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("holevo_bound: bad transmittance");
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("holevo_bound: bad efficiency");
    if (!(params.modulation_variance > 0.0))
        throw std::invalid_argument("holevo_bound: bad modulation variance");

    const double v = params.modulation_variance + 1.0;
    const double chi_line = (1.0 - t) / t + xi;
    const double chi_hom = (1.0 + vel) / eta - 1.0;
    const double chi_tot = chi_line + chi_hom / t;

    const double a = v * v * (1.0 - 2.0 * t) + 2.0 * t + t * t * (v + chi_line) * (v + chi_line);
    const double b = t * t * (v * chi_line + 1.0) * (v * chi_line + 1.0);
    const double sqrt_b = std::sqrt(b);
    const double disc_ab = a * a - 4.0 * b;
    if (disc_ab < -1e-9 * a * a)
        throw std::domain_error("holevo_bound: inconsistent covariance (A^2 < 4B)");
    const double root_ab = std::sqrt(std::max(0.0, disc_ab));

    const double denom = t * (v + chi_tot);
    const double c = (a * chi_hom + v * sqrt_b + t * (v + chi_line)) / denom;
    const double d = sqrt_b * (v + sqrt_b * chi_hom) / denom;
    const double disc_cd = c * c - 4.0 * d;
    if (disc_cd < -1e-9 * c * c)
        throw std::domain_error("holevo_bound: inconsistent covariance (C^2 < 4D)");
    const double root_cd = std::sqrt(std::max(0.0, disc_cd));

    auto nu = [](double sum, double root) {
        const double sq = 0.5 * (sum + root);
        if (sq < 1.0 - 1e-9) throw std::domain_error("holevo_bound: symplectic eigenvalue below 1");
        return std::sqrt(std::max(1.0, sq));
    };
    const double nu1 = nu(a, root_ab);
    const double nu2 = nu(a, -root_ab);
    const double nu3 = nu(c, root_cd);
    const double nu4 = nu(c, -root_cd);

    return gaussian_entropy_g(nu1) + gaussian_entropy_g(nu2) - gaussian_entropy_g(nu3) -
           gaussian_entropy_g(nu4);
}

double finite_size_offset(std::int64_t n, double eps) {
    if (n < 1) throw std::invalid_argument("finite_size_offset: n must be >= 1");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("finite_size_offset: eps must be in (0, 1)");
    return 7.0 * std::sqrt(std::log2(2.0 / eps) / static_cast<double>(n));
}

double secret_key_rate(const KeyRateInputs& inputs) {
    if (inputs.alpha < 0.0 || inputs.alpha > 1.0 || inputs.fer < 0.0 || inputs.fer > 1.0 ||
        inputs.beta < 0.0 || inputs.beta > 1.0)
        throw std::invalid_argument("secret_key_rate: fractions must lie in [0, 1]");
    const double snr = distance_to_snr(inputs.channel);
    const double i_ab = mutual_information(snr);
    const double chi = holevo_bound(inputs.channel);
    const double delta = finite_size_offset(inputs.block_size_n, inputs.security_eps);
    return inputs.alpha * (1.0 - inputs.fer) * (inputs.beta * i_ab - chi - delta);
}

double plob_bound(double transmittance) {
    if (!(transmittance > 0.0)) throw std::invalid_argument("plob_bound: bad transmittance");
    if (transmittance >= 1.0) return HUGE_VAL;
    return -std::log2(1.0 - transmittance);
}

double optimal_modulation_variance(const KeyRateInputs& inputs, double lo, double hi) {
    if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("optimal_modulation_variance: bad bracket");
    KeyRateInputs probe = inputs;
    auto k_of = [&probe](double va) {
        probe.channel.modulation_variance = va;
        return secret_key_rate(probe);
    };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = k_of(x1), f2 = k_of(x2);
    while (b - a > 1e-4) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = k_of(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = k_of(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace rlldpc
