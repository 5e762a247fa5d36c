#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rlldpc/rational.hpp"

namespace rlldpc {

// Degree vector of a node across edge types; entry i is the number of
// type-(i+1) edges incident to the node.
struct MultiEdgeDegree {
    std::vector<int> degrees;

    int total() const;
};

struct DegreeTerm {
    Rational coefficient;  // fraction of nodes carrying this degree profile
    MultiEdgeDegree degree;
};

// Multi-edge-type degree distribution: variable-node polynomial nu and
// check-node polynomial mu.
struct DegreeDistribution {
    int edge_types = 0;
    std::vector<DegreeTerm> variable_terms;
    std::vector<DegreeTerm> check_terms;
};

struct ValidationReport {
    std::vector<std::string> issues;

    bool ok() const { return issues.empty(); }
    std::string to_text() const;
};

// Checks coefficient ranges, coefficient sums, and per-type socket
// conservation. Violations become report entries, never exceptions.
ValidationReport validate_distribution(const DegreeDistribution& dist);

// sum(nu_d) - sum(mu_d). Rejects invalid distributions.
Rational code_rate(const DegreeDistribution& dist);

// sum_d nu_d * d_i (variable side) for edge type i in [1, ne]
Rational variable_socket_sum(const DegreeDistribution& dist, int edge_type);
Rational check_socket_sum(const DegreeDistribution& dist, int edge_type);

// C(s) = 1/2 log2(1+s), bits per channel use. Rejects snr <= 0.
double shannon_capacity(double snr);

// beta = rate / C(snr)
double efficiency(double rate, double snr);

// inverse of shannon_capacity: s = 2^(2C) - 1
double snr_for_capacity(double capacity);

enum class RateMode { None, Puncture, Extend };

const char* rate_mode_name(RateMode mode);

struct RatePlan {
    RateMode mode = RateMode::None;
    std::int64_t length = 0;  // punctured or extended length, in columns/rows
    Rational achieved_rate{0};
    double achieved_efficiency = 0.0;
};

struct RateLimits {
    std::int64_t max_p = 0;
    std::int64_t max_e = 0;
    std::int64_t length_multiple = 1;  // adaptation lengths rounded to this
};

// Rate formulas for puncturing / extension of an (m x n) base matrix.
Rational punctured_rate(std::int64_t n, std::int64_t m, std::int64_t p);
Rational extended_rate(std::int64_t n, std::int64_t m, std::int64_t e);

// Chooses the adaptation whose efficiency is the largest value not exceeding
// target_beta (overshooting the target risks decoding failure, undershooting
// only costs rate). Throws std::runtime_error naming the achievable interval
// when no length within the limits stays at or below the target.
RatePlan plan_rate(std::int64_t base_n, std::int64_t base_m, double snr,
                   double target_beta, const RateLimits& limits);

// Ensemble text format: one line "edge_types=<ne>", then one line per term,
// "v <coeff> <d1> ... <dne>" or "c <coeff> <d1> ... <dne>". Coefficients are
// decimal strings parsed exactly.
DegreeDistribution parse_ensemble(std::istream& in, const std::string& name = "<stream>");
DegreeDistribution load_ensemble(const std::string& path);
void save_ensemble(const DegreeDistribution& dist, std::ostream& out);

// Built-in reference distributions (identical to data/r002.met, data/r005.met).
DegreeDistribution ensemble_rate002();
DegreeDistribution ensemble_rate005();

}  // namespace rlldpc
