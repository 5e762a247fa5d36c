#include "rlldpc/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rlldpc {

int MultiEdgeDegree::total() const {
    int t = 0;
    for (int d : degrees) t += d;
    return t;
}

namespace {

Rational coefficient_sum(const std::vector<DegreeTerm>& terms) {
    Rational s(0);
    for (const auto& t : terms) s += t.coefficient;
    return s;
}

Rational socket_sum(const std::vector<DegreeTerm>& terms, int edge_type) {
    Rational s(0);
    for (const auto& t : terms) {
        int d = t.degree.degrees.at(static_cast<std::size_t>(edge_type - 1));
        s += t.coefficient * d;
    }
    return s;
}

void check_terms_shape(const DegreeDistribution& dist, const std::vector<DegreeTerm>& terms,
                       const char* side, ValidationReport& report) {
    int index = 0;
    for (const auto& t : terms) {
        ++index;
        std::ostringstream tag;
        tag << side << " term " << index;
        if (static_cast<int>(t.degree.degrees.size()) != dist.edge_types)
            report.issues.push_back(tag.str() + ": degree vector length " +
                                    std::to_string(t.degree.degrees.size()) + " != edge_types " +
                                    std::to_string(dist.edge_types));
        if (t.coefficient <= Rational(0) || t.coefficient > Rational(1))
            report.issues.push_back(tag.str() + ": coefficient " + format_rational(t.coefficient) +
                                    " outside (0, 1]");
        bool any_positive = false;
        for (int d : t.degree.degrees) {
            if (d < 0)
                report.issues.push_back(tag.str() + ": negative degree");
            if (d > 0) any_positive = true;
        }
        if (!any_positive) report.issues.push_back(tag.str() + ": all degrees zero");
    }
}

}  // namespace

std::string ValidationReport::to_text() const {
    if (issues.empty()) return "ok\n";
    std::string out;
    for (const auto& i : issues) {
        out += i;
        out += '\n';
    }
    return out;
}

ValidationReport validate_distribution(const DegreeDistribution& dist) {
    ValidationReport report;
    if (dist.edge_types < 1) report.issues.push_back("edge_types must be >= 1");
    if (dist.variable_terms.empty()) report.issues.push_back("no variable terms");
    if (dist.check_terms.empty()) report.issues.push_back("no check terms");
    if (!report.ok()) return report;

    check_terms_shape(dist, dist.variable_terms, "variable", report);
    check_terms_shape(dist, dist.check_terms, "check", report);
    if (!report.ok()) return report;

    Rational nu_sum = coefficient_sum(dist.variable_terms);
    Rational mu_sum = coefficient_sum(dist.check_terms);
    if (nu_sum != Rational(1))
        report.issues.push_back("variable coefficients sum to " + format_rational(nu_sum) +
                                ", expected 1");
    Rational rate = nu_sum - mu_sum;
    if (mu_sum != Rational(1) - rate)
        report.issues.push_back("check coefficients sum to " + format_rational(mu_sum) +
                                ", expected 1 - rate = " + format_rational(Rational(1) - rate));

    for (int type = 1; type <= dist.edge_types; ++type) {
        Rational v = socket_sum(dist.variable_terms, type);
        Rational c = socket_sum(dist.check_terms, type);
        if (v != c)
            report.issues.push_back("edge type " + std::to_string(type) +
                                    ": socket conservation violated, variable side " +
                                    format_rational(v) + " != check side " + format_rational(c));
    }
    return report;
}

Rational code_rate(const DegreeDistribution& dist) {
    ValidationReport report = validate_distribution(dist);
    if (!report.ok())
        throw std::invalid_argument("invalid degree distribution:\n" + report.to_text());
    return coefficient_sum(dist.variable_terms) - coefficient_sum(dist.check_terms);
}

Rational variable_socket_sum(const DegreeDistribution& dist, int edge_type) {
    return socket_sum(dist.variable_terms, edge_type);
}

Rational check_socket_sum(const DegreeDistribution& dist, int edge_type) {
    return socket_sum(dist.check_terms, edge_type);
}

double shannon_capacity(double snr) {
    if (!(snr > 0.0)) throw std::invalid_argument("shannon_capacity: snr must be > 0");
    return 0.5 * std::log2(1.0 + snr);
}

double efficiency(double rate, double snr) {
    if (!(rate > 0.0 && rate < 1.0)) throw std::invalid_argument("efficiency: rate must be in (0,1)");
    return rate / shannon_capacity(snr);
}

double snr_for_capacity(double capacity) {
    if (!(capacity > 0.0)) throw std::invalid_argument("snr_for_capacity: capacity must be > 0");
    return std::exp2(2.0 * capacity) - 1.0;
}

const char* rate_mode_name(RateMode mode) {
    switch (mode) {
        case RateMode::None: return "none";
        case RateMode::Puncture: return "puncture";
        case RateMode::Extend: return "extend";
    }
    return "?";
}

Rational punctured_rate(std::int64_t n, std::int64_t m, std::int64_t p) {
    if (p < 0 || p >= n) throw std::invalid_argument("punctured_rate: bad p");
    return Rational(n - m, n - p);
}

Rational extended_rate(std::int64_t n, std::int64_t m, std::int64_t e) {
    if (e < 0) throw std::invalid_argument("extended_rate: bad e");
    return Rational(n - m, n + e);
}

namespace {

// rate stays at or below the target, with a 1e-12 relative allowance for the
// floating-point target
bool rate_within_target(const Rational& rate, double target) {
    return to_double(rate) <= target * (1.0 + 1e-12);
}

}  // namespace

RatePlan plan_rate(std::int64_t base_n, std::int64_t base_m, double snr, double target_beta,
                   const RateLimits& limits) {
    if (base_n <= base_m) throw std::invalid_argument("plan_rate: need base_n > base_m");
    if (!(target_beta > 0.0 && target_beta <= 1.0))
        throw std::invalid_argument("plan_rate: target_beta must be in (0, 1]");
    const std::int64_t mult = std::max<std::int64_t>(1, limits.length_multiple);
    const double capacity = shannon_capacity(snr);
    const double rate_target = target_beta * capacity;

    RatePlan plan;
    if (rate_within_target(Rational(base_n - base_m, base_n), rate_target)) {
        // candidate: largest aligned p with rate still <= target
        std::int64_t lo = 0;
        std::int64_t hi = std::min(limits.max_p, base_n - base_m > 0 ? base_n - 1 : 0) / mult;
        while (lo < hi) {
            std::int64_t mid = lo + (hi - lo + 1) / 2;
            if (rate_within_target(punctured_rate(base_n, base_m, mid * mult), rate_target))
                lo = mid;
            else
                hi = mid - 1;
        }
        const std::int64_t p = lo * mult;
        plan.mode = p == 0 ? RateMode::None : RateMode::Puncture;
        plan.length = p;
        plan.achieved_rate = punctured_rate(base_n, base_m, p);
    } else {
        // smallest aligned e bringing the rate down to the target
        std::int64_t lo = 0;
        std::int64_t hi = limits.max_e / mult;
        if (!rate_within_target(extended_rate(base_n, base_m, hi * mult), rate_target)) {
            const double beta_lo =
                to_double(extended_rate(base_n, base_m, limits.max_e)) / capacity;
            const double beta_hi =
                to_double(punctured_rate(base_n, base_m, limits.max_p)) / capacity;
            std::ostringstream msg;
            msg << "plan_rate: target efficiency " << target_beta
                << " out of adaptation range; achievable efficiency in [" << beta_lo << ", "
                << beta_hi << "]";
            throw std::runtime_error(msg.str());
        }
        while (lo < hi) {
            std::int64_t mid = lo + (hi - lo) / 2;
            if (rate_within_target(extended_rate(base_n, base_m, mid * mult), rate_target))
                hi = mid;
            else
                lo = mid + 1;
        }
        plan.mode = RateMode::Extend;
        plan.length = lo * mult;
        plan.achieved_rate = extended_rate(base_n, base_m, lo * mult);
    }
    plan.achieved_efficiency = to_double(plan.achieved_rate) / capacity;
    return plan;
}

namespace {

DegreeTerm make_term(const char* coeff, std::initializer_list<int> degrees) {
    DegreeTerm t;
    t.coefficient = parse_rational(coeff);
    t.degree.degrees.assign(degrees);
    return t;
}

}  // namespace

DegreeDistribution ensemble_rate002() {
    DegreeDistribution d;
    d.edge_types = 3;
    d.variable_terms = {
        make_term("0.0225", {2, 57, 0}),
        make_term("0.0175", {3, 57, 0}),
        make_term("0.96", {0, 0, 1}),
    };
    d.check_terms = {
        make_term("0.010625", {3, 0, 0}),
        make_term("0.009375", {7, 0, 0}),
        make_term("0.6", {0, 2, 1}),
        make_term("0.36", {0, 3, 1}),
    };
    return d;
}

DegreeDistribution ensemble_rate005() {
    DegreeDistribution d;
    d.edge_types = 3;
    d.variable_terms = {
        make_term("0.04", {2, 34, 0}),
        make_term("0.03", {3, 34, 0}),
        make_term("0.93", {0, 0, 1}),
    };
    d.check_terms = {
        make_term("0.01", {8, 0, 0}),
        make_term("0.01", {9, 0, 0}),
        make_term("0.41", {0, 2, 1}),
        make_term("0.52", {0, 3, 1}),
    };
    return d;
}

DegreeDistribution parse_ensemble(std::istream& in, const std::string& name) {
    DegreeDistribution dist;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    auto fail = [&](const std::string& what) {
        throw std::runtime_error(name + ":" + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = line;
        if (auto hash = trimmed.find('#'); hash != std::string::npos) trimmed.resize(hash);
        std::istringstream ls(trimmed);
        std::string first;
        if (!(ls >> first)) continue;
        if (!have_header) {
            if (first.rfind("edge_types=", 0) != 0) fail("expected edge_types=<ne>");
            dist.edge_types = std::stoi(first.substr(11));
            if (dist.edge_types < 1) fail("edge_types must be >= 1");
            have_header = true;
            continue;
        }
        if (first != "v" && first != "c") fail("expected 'v' or 'c' line");
        std::string coeff;
        if (!(ls >> coeff)) fail("missing coefficient");
        DegreeTerm term;
        try {
            term.coefficient = parse_rational(coeff);
        } catch (const std::exception& e) {
            fail(e.what());
        }
        int d = 0;
        while (ls >> d) term.degree.degrees.push_back(d);
        if (static_cast<int>(term.degree.degrees.size()) != dist.edge_types)
            fail("expected " + std::to_string(dist.edge_types) + " degree entries");
        (first == "v" ? dist.variable_terms : dist.check_terms).push_back(std::move(term));
    }
    if (!have_header) throw std::runtime_error(name + ": empty ensemble file");
    return dist;
}

DegreeDistribution load_ensemble(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ensemble file: " + path);
    return parse_ensemble(in, path);
}

void save_ensemble(const DegreeDistribution& dist, std::ostream& out) {
    out << "edge_types=" << dist.edge_types << "\n";
    auto emit = [&](const char* tag, const std::vector<DegreeTerm>& terms) {
        for (const auto& t : terms) {
            out << tag << ' ' << format_rational(t.coefficient);
            for (int d : t.degree.degrees) out << ' ' << d;
            out << "\n";
        }
    };
    emit("v", dist.variable_terms);
    emit("c", dist.check_terms);
}

}  // namespace rlldpc
