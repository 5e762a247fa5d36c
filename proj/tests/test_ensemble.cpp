#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "rlldpc/ensemble.hpp"

using namespace rlldpc;

namespace {

DegreeDistribution load_fixture(const char* name) {
    return load_ensemble(std::string(RLLDPC_DATA_DIR) + "/" + name);
}

// bisection oracle for C(s) = target, independent of snr_for_capacity
double snr_where_capacity(double target) {
    double lo = 1e-12, hi = 1e6;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (0.5 * std::log2(1.0 + mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("rational parsing is exact") {
    CHECK(parse_rational("0.010625") == Rational(17, 1600));
    CHECK(parse_rational("0.0225") == Rational(9, 400));
    CHECK(parse_rational("1/25") == Rational(1, 25));
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-0.5") == Rational(-1, 2));
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK(format_rational(Rational(17, 1600)) == "17/1600");
    CHECK(round_rational(Rational(5, 2)) == 3);
    CHECK(round_rational(Rational(-5, 2)) == -3);
    CHECK(round_rational(Rational(7, 3)) == 2);
}

TEST_CASE("table distributions validate with exact socket sums") {
    for (auto dist : {ensemble_rate002(), load_fixture("r002.met")}) {
        ValidationReport report = validate_distribution(dist);
        CHECK_MESSAGE(report.ok(), report.to_text());
        CHECK(variable_socket_sum(dist, 2) == Rational(57, 25));  // 2.28
        CHECK(check_socket_sum(dist, 2) == Rational(57, 25));
        CHECK(variable_socket_sum(dist, 1) == Rational(39, 400));  // 0.0975
        CHECK(check_socket_sum(dist, 1) == Rational(39, 400));
        CHECK(variable_socket_sum(dist, 3) == Rational(24, 25));
        CHECK(code_rate(dist) == Rational(1, 50));
    }
    for (auto dist : {ensemble_rate005(), load_fixture("r005.met")}) {
        ValidationReport report = validate_distribution(dist);
        CHECK_MESSAGE(report.ok(), report.to_text());
        CHECK(variable_socket_sum(dist, 1) == Rational(17, 100));  // 0.17
        CHECK(check_socket_sum(dist, 1) == Rational(17, 100));
        CHECK(variable_socket_sum(dist, 2) == Rational(119, 50));  // 2.38
        CHECK(check_socket_sum(dist, 2) == Rational(119, 50));
        CHECK(code_rate(dist) == Rational(1, 20));
    }
}

TEST_CASE("socket conservation violations are reported, not thrown") {
    DegreeDistribution dist;
    dist.edge_types = 1;
    DegreeTerm v{Rational(1), {{2}}};
    DegreeTerm c{Rational(1), {{3}}};
    dist.variable_terms = {v};
    dist.check_terms = {c};
    ValidationReport report = validate_distribution(dist);
    CHECK(!report.ok());
    bool socket_issue = false;
    for (const auto& issue : report.issues)
        socket_issue |= issue.find("socket conservation") != std::string::npos;
    CHECK(socket_issue);
    CHECK_THROWS_AS(code_rate(dist), std::invalid_argument);
}

TEST_CASE("zero-rate edge case") {
    DegreeDistribution dist;
    dist.edge_types = 1;
    dist.variable_terms = {DegreeTerm{Rational(1), {{3}}}};
    dist.check_terms = {DegreeTerm{Rational(1), {{3}}}};
    ValidationReport report = validate_distribution(dist);
    CHECK_MESSAGE(report.ok(), report.to_text());
    CHECK(code_rate(dist) == Rational(0));
}

TEST_CASE("shannon capacity and efficiency") {
    CHECK(shannon_capacity(1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(shannon_capacity(3.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(shannon_capacity(0.0226) == doctest::Approx(0.016121).epsilon(1e-4));
    CHECK(std::abs(shannon_capacity(0.0226) - 0.016121) < 1e-6);
    CHECK_THROWS_AS(shannon_capacity(0.0), std::invalid_argument);
    CHECK_THROWS_AS(shannon_capacity(-1.0), std::invalid_argument);

    // beta = 1 exactly at C(s) = rate
    const double s1 = std::exp2(2.0 * 0.02) - 1.0;
    CHECK(efficiency(0.02, s1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(efficiency(0.016, 0.0226) == doctest::Approx(0.016 / shannon_capacity(0.0226)).epsilon(1e-12));
    CHECK(efficiency(0.016, 0.0226) == doctest::Approx(0.9925).epsilon(2e-4));
    // root-finding oracle: snr with C(s) = 0.02/0.96
    const double s96 = snr_where_capacity(0.02 / 0.96);
    CHECK(s96 == doctest::Approx(0.029314).epsilon(1e-4));
    CHECK(efficiency(0.02, s96) == doctest::Approx(0.96).epsilon(1e-9));
    // snr_for_capacity agrees with the bisection oracle
    CHECK(snr_for_capacity(0.02 / 0.96) == doctest::Approx(s96).epsilon(1e-9));
}

TEST_CASE("plan_rate picks the largest efficiency at or below the target") {
    const std::int64_t n = 1'000'000, m = 980'000;
    RateLimits limits{500'000, 500'000, 1};

    SUBCASE("puncture plan matches closed-form inversion") {
        // target beta 0.98 at C(s) = 0.02/0.96: target rate above the base
        // rate, so the planner punctures
        const double snr = snr_for_capacity(0.02 / 0.96);
        const double target = 0.98;
        RatePlan plan = plan_rate(n, m, snr, target, limits);
        CHECK(plan.mode == RateMode::Puncture);
        // closed form: p = floor(n - (n-m) / (target * C))
        const double cap = shannon_capacity(snr);
        CHECK(plan.length == static_cast<std::int64_t>(n - (n - m) / (target * cap)));
        // cross-check by scanning p +- 2
        for (std::int64_t p = plan.length - 2; p <= plan.length + 2; ++p) {
            if (p < 0) continue;
            const double beta = to_double(punctured_rate(n, m, p)) / cap;
            if (p <= plan.length)
                CHECK(beta <= target * (1 + 1e-9));
            else
                CHECK(beta > target);
        }
        CHECK(plan.achieved_efficiency <= target * (1 + 1e-9));
        CHECK(plan.achieved_rate == punctured_rate(n, m, plan.length));
    }

    SUBCASE("base rate exactly on target plans no adaptation") {
        const double snr = snr_for_capacity(0.02 / 0.96);
        RatePlan plan = plan_rate(n, m, snr, 0.96, limits);
        CHECK(plan.mode == RateMode::None);
        CHECK(plan.achieved_efficiency == doctest::Approx(0.96).epsilon(1e-9));
    }

    SUBCASE("extension reaches rate 0.016 with e = 250000") {
        // target rate 0.016 exactly: beta 0.8 at C(s) = 0.02
        const double snr = snr_for_capacity(0.02);
        RatePlan plan = plan_rate(n, m, snr, 0.8, limits);
        CHECK(plan.mode == RateMode::Extend);
        CHECK(plan.length == 250'000);
        CHECK(plan.achieved_rate == Rational(2, 125));  // 0.016
    }

    SUBCASE("identity adaptation") {
        const double snr = snr_for_capacity(0.02);
        RatePlan plan = plan_rate(n, m, snr, 1.0, limits);
        CHECK(plan.mode == RateMode::None);
        CHECK(plan.length == 0);
        CHECK(plan.achieved_rate == Rational(1, 50));
    }

    SUBCASE("unreachable target names the achievable interval") {
        const double snr = snr_for_capacity(0.02);
        RateLimits tight{100, 100, 1};
        try {
            plan_rate(n, m, snr, 0.05, tight);
            FAIL("expected out-of-range error");
        } catch (const std::runtime_error& e) {
            const std::string what = e.what();
            CHECK(what.find("out of adaptation range") != std::string::npos);
            CHECK(what.find("[") != std::string::npos);
        }
    }

    SUBCASE("monotone in target beta") {
        const double snr = snr_for_capacity(0.02);
        Rational prev(0);
        for (double beta : {0.70, 0.80, 0.90, 0.95, 0.98, 1.0}) {
            RatePlan plan = plan_rate(n, m, snr, beta, limits);
            CHECK(plan.achieved_rate >= prev);
            prev = plan.achieved_rate;
            // recomputing the rate formula from (n, m, length) is exact
            if (plan.mode == RateMode::Puncture)
                CHECK(plan.achieved_rate == punctured_rate(n, m, plan.length));
            else if (plan.mode == RateMode::Extend)
                CHECK(plan.achieved_rate == extended_rate(n, m, plan.length));
            else
                CHECK(plan.achieved_rate == Rational(n - m, n));
        }
    }

    SUBCASE("length multiple respected") {
        const double snr = snr_for_capacity(0.02 / 0.96);
        RateLimits aligned{500'000, 500'000, 8};
        RatePlan plan = plan_rate(n, m, snr, 0.96, aligned);
        CHECK(plan.length % 8 == 0);
        CHECK(plan.achieved_efficiency <= 0.96 * (1 + 1e-9));
    }
}

TEST_CASE("ensemble file round trip and parse errors") {
    DegreeDistribution dist = ensemble_rate002();
    std::ostringstream out;
    save_ensemble(dist, out);
    std::istringstream in(out.str());
    DegreeDistribution back = parse_ensemble(in);
    CHECK(back.edge_types == dist.edge_types);
    REQUIRE(back.variable_terms.size() == dist.variable_terms.size());
    for (std::size_t i = 0; i < back.variable_terms.size(); ++i) {
        CHECK(back.variable_terms[i].coefficient == dist.variable_terms[i].coefficient);
        CHECK(back.variable_terms[i].degree.degrees == dist.variable_terms[i].degree.degrees);
    }

    std::istringstream bad("edge_types=3\nv 0.5 1 2\n");
    CHECK_THROWS_WITH_AS(parse_ensemble(bad, "bad.met"),
                         doctest::Contains("bad.met:2"), std::runtime_error);
    std::istringstream nohdr("v 0.5 1 2 3\n");
    CHECK_THROWS_AS(parse_ensemble(nohdr), std::runtime_error);
}
