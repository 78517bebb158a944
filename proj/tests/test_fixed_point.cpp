#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "mcm/builtins.hpp"
#include "mcm/fixed_point.hpp"
#include "mcm/two_segment.hpp"

using namespace mcm;

TEST_CASE("contraction inequality holds for the half shift") {
    ModularConeMetricFn<double> w = builtins::inverse_parameter(2);
    ContractionSpec<double> spec = builtins::half_shift(2);
    Space<double> space = builtins::interval_space(-100, 100);

    AuditReport rep = contraction_audit(w, spec, space, 2000, 17);
    CHECK(rep.passed());
    CHECK(rep.verdict() == Verdict::pass);
    const CheckResult& ineq = rep.check("contraction-inequality");
    CHECK(ineq.samples == 2000);
    CHECK(ineq.violations == 0);
    REQUIRE(ineq.worst.contains("worst_slack"));
    CHECK(ineq.worst["worst_slack"].get<double>() >= 0.0);

    // the true modulus of T x = x/2 + 1 is 1/2: the claim passes exactly
    // down to k = 1/2 and fails below it
    ContractionSpec<double> tight = spec;
    tight.k = 0.5;
    CHECK(contraction_audit(w, tight, space, 500, 17).passed());

    ContractionSpec<double> overclaimed = spec;
    overclaimed.k = 0.4;
    AuditReport bad = contraction_audit(w, overclaimed, space, 500, 17);
    CHECK(bad.verdict() == Verdict::fail);
    CHECK(bad.check("contraction-inequality").violations == 500);
}

TEST_CASE("contraction audit fails the identity map") {
    ModularConeMetricFn<double> w = builtins::inverse_parameter(2);
    AuditReport rep =
        contraction_audit(w, builtins::identity_map(2), builtins::interval_space(), 500, 11);
    CHECK(rep.verdict() == Verdict::fail);
    const CheckResult& ineq = rep.check("contraction-inequality");
    CHECK(ineq.violations == 500);
    REQUIRE_FALSE(ineq.worst.is_null());
    CHECK(ineq.worst.contains("x"));
    CHECK(ineq.worst.contains("lhs"));
    CHECK(ineq.worst.contains("rhs"));
}

TEST_CASE("contraction audit validates its hypothesis data") {
    ModularConeMetricFn<double> plain = builtins::scaled_cone_metric(2);
    ModularConeMetricFn<double> convex = builtins::inverse_parameter(2);
    Space<double> space = builtins::interval_space();
    ContractionSpec<double> spec = builtins::half_shift(2);

    CHECK_THROWS_AS(contraction_audit(plain, spec, space, 100, 1), std::invalid_argument);

    ContractionSpec<double> bad = spec;
    bad.k = 0.0;
    CHECK_THROWS_AS(contraction_audit(convex, bad, space, 100, 1), std::invalid_argument);
    bad.k = 1.0;
    CHECK_THROWS_AS(contraction_audit(convex, bad, space, 100, 1), std::invalid_argument);
    bad.k = 1.5;
    CHECK_THROWS_AS(contraction_audit(convex, bad, space, 100, 1), std::invalid_argument);

    bad = spec;
    bad.c0 = (Vec(2) << 1.0, 0.0).finished();  // boundary parameter
    CHECK_THROWS_AS(contraction_audit(convex, bad, space, 100, 1), std::invalid_argument);

    bad = spec;
    bad.map = {};
    CHECK_THROWS_AS(contraction_audit(convex, bad, space, 100, 1), std::invalid_argument);

    CHECK_THROWS_AS(contraction_audit(convex, spec, space, 0, 1), std::invalid_argument);
}

TEST_CASE("self map audit checks image membership") {
    ContractionSpec<double> spec = builtins::half_shift(2);

    // T x = x/2 + 1 maps [-100, 100] into [-49, 51]
    AuditReport closed = self_map_audit(spec.map, builtins::interval_space(-100, 100), 1000, 3);
    CHECK(closed.passed());
    CHECK(closed.check("image-in-space").violations == 0);

    // but pushes the right half of [-5, 1] above 1
    AuditReport leaky = self_map_audit(spec.map, builtins::interval_space(-5, 1), 1000, 3);
    CHECK(leaky.verdict() == Verdict::fail);
    const CheckResult& img = leaky.check("image-in-space");
    CHECK(img.violations > 0);
    CHECK(img.violations < 1000);
    CHECK(img.worst.contains("Tx"));

    CHECK_THROWS_AS(self_map_audit(std::function<double(const double&)>{},
                                   builtins::interval_space(), 10, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(self_map_audit(spec.map, builtins::interval_space(), 0, 3),
                    std::invalid_argument);
}

TEST_CASE("picard orbit of the half shift contracts to the fixed point") {
    ContractionSpec<double> spec = builtins::half_shift(2);
    RealModularMetricFn<double> W = builtins::scalarized_unit(2);
    const std::vector<double> grid = {0.5, 1.0, 2.0};

    IterationTrace<double> tr = picard(spec, W, 100.0, grid, 1e-8, 200);
    CHECK(tr.verdict == IterationVerdict::converged);
    CHECK(tr.steps() == 35);
    CHECK(tr.iterates.size() == 36);
    CHECK(std::abs(tr.endpoint() - 2.0) <= 1e-8);

    // first step: |100 - 51| = 49 against lambda in {1/2, 1, 2}
    REQUIRE(tr.residuals.size() == 35);
    CHECK(tr.residuals[0][0] == 98.0);
    CHECK(tr.residuals[0][1] == 49.0);
    CHECK(tr.residuals[0][2] == 24.5);

    // the orbit gap halves exactly, so every observed ratio is exactly 1/2
    REQUIRE(tr.ratio_series.size() == 34);
    for (double r : tr.ratio_series) CHECK(r == 0.5);

    // starting on the fixed point stops after one zero-residual step
    IterationTrace<double> at = picard(spec, W, 2.0, grid, 1e-8, 200);
    CHECK(at.verdict == IterationVerdict::converged);
    CHECK(at.steps() == 1);
    CHECK(at.endpoint() == 2.0);
    CHECK(at.residuals[0] == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(at.ratio_series.empty());

    // a tight budget ends with the max-iter verdict
    IterationTrace<double> cut = picard(spec, W, 100.0, grid, 1e-8, 5);
    CHECK(cut.verdict == IterationVerdict::max_iter);
    CHECK(cut.steps() == 5);
}

TEST_CASE("picard flags escaping and domain-leaving orbits as diverged") {
    RealModularMetricFn<double> W = builtins::scalarized_unit(2);
    const std::vector<double> grid = {1.0};

    ContractionSpec<double> square;
    square.map = [](double x) { return x * x; };
    square.k = 0.5;
    square.c0 = Vec::Ones(2);
    IterationTrace<double> tr = picard(square, W, 10.0, grid, 1e-8, 100);
    CHECK(tr.verdict == IterationVerdict::diverged);
    CHECK_FALSE(std::isfinite(tr.endpoint()));
    CHECK(tr.steps() == 8);          // 10 -> 1e2 -> ... -> 1e256 -> overflow
    CHECK(tr.iterates.size() == 10); // the non-finite iterate is kept for the record

    ContractionSpec<double> leaving;
    leaving.map = [](double x) {
        if (x > 50.0) throw std::domain_error("outside");
        return 2.0 * x;
    };
    leaving.k = 0.5;
    leaving.c0 = Vec::Ones(2);
    IterationTrace<double> left = picard(leaving, W, 30.0, grid, 1e-8, 100);
    CHECK(left.verdict == IterationVerdict::diverged);
    CHECK(left.iterates == std::vector<double>{30.0, 60.0});
    CHECK(left.steps() == 1);
}

TEST_CASE("picard validates its parameters") {
    ContractionSpec<double> spec = builtins::half_shift(2);
    RealModularMetricFn<double> W = builtins::scalarized_unit(2);

    CHECK_THROWS_AS(picard(spec, W, 0.0, {1.0}, 0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(picard(spec, W, 0.0, {1.0}, 1e-8, 0), std::invalid_argument);
    CHECK_THROWS_AS(picard(spec, W, 0.0, std::vector<double>{}, 1e-8, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(picard(spec, W, 0.0, {1.0, -1.0}, 1e-8, 10), std::invalid_argument);

    ContractionSpec<double> hollow;
    hollow.k = 0.5;
    hollow.c0 = Vec::Ones(2);
    CHECK_THROWS_AS(picard(hollow, W, 0.0, {1.0}, 1e-8, 10), std::invalid_argument);

    RealModularMetricFn<double> no_metric;
    CHECK_THROWS_AS(picard(spec, no_metric, 0.0, {1.0}, 1e-8, 10), std::invalid_argument);
}

TEST_CASE("uniqueness probe accepts a contraction from spread starts") {
    ContractionSpec<double> spec = builtins::half_shift(2);
    RealModularMetricFn<double> W = builtins::scalarized_unit(2);
    const std::vector<double> grid = {0.5, 1.0, 2.0};

    UniquenessReport<double> rep =
        uniqueness_probe(spec, W, {0.0, 100.0, -50.0}, grid, 1e-8, 200);
    CHECK(rep.all_converged);
    CHECK(rep.endpoints_close);
    CHECK_FALSE(rep.inconclusive);
    CHECK_FALSE(rep.oscillation);
    CHECK(rep.max_pairwise > 0.0);
    CHECK(rep.max_pairwise <= 1e-7);  // 10 tol pairwise bound
    REQUIRE(rep.runs.size() == 3);
    for (const auto& run : rep.runs) CHECK(std::abs(run.endpoint() - 2.0) <= 1e-8);

    // a single start probes nothing pairwise but still reports cleanly
    UniquenessReport<double> lone = uniqueness_probe(spec, W, {7.0}, grid, 1e-8, 200);
    CHECK(lone.all_converged);
    CHECK(lone.endpoints_close);
    CHECK(lone.max_pairwise == 0.0);

    CHECK_THROWS_AS(uniqueness_probe(spec, W, std::vector<double>{}, grid, 1e-8, 200),
                    std::invalid_argument);
}

TEST_CASE("uniqueness probe separates distinct trivial limits") {
    // the identity stops immediately at every start: successive-iterate
    // stopping certifies orbit stabilization, never uniqueness by itself
    ContractionSpec<double> spec = builtins::identity_map(2);
    RealModularMetricFn<double> W = builtins::scalarized_unit(2);

    UniquenessReport<double> rep =
        uniqueness_probe(spec, W, {0.0, 1.0}, {0.5, 1.0, 2.0}, 1e-8, 50);
    CHECK(rep.all_converged);
    CHECK_FALSE(rep.endpoints_close);
    CHECK(rep.max_pairwise == 2.0);  // W at lambda = 1/2 of the unit gap
}

TEST_CASE("uniqueness probe flags oscillation and domain escape") {
    RealModularMetricFn<double> W = builtins::scalarized_unit(2);

    ContractionSpec<double> flip;
    flip.map = [](double x) { return -x; };
    flip.k = 0.5;
    flip.c0 = Vec::Ones(2);
    UniquenessReport<double> rep = uniqueness_probe(flip, W, {1.0}, {0.5, 1.0}, 1e-8, 20);
    CHECK_FALSE(rep.all_converged);
    CHECK(rep.inconclusive);
    CHECK(rep.oscillation);
    CHECK(rep.runs[0].verdict == IterationVerdict::max_iter);

    // the two-segment orbit leaves its domain on the third return
    ContractionSpec<twoseg::SegPoint> ts = builtins::two_segment_map();
    RealModularMetricFn<twoseg::SegPoint> w43 = twoseg::make_modular();
    UniquenessReport<twoseg::SegPoint> orbit = uniqueness_probe(
        ts, w43, {twoseg::SegPoint::h(1.0)}, {0.5, 1.0, 2.0}, 1e-8, 50);
    CHECK(orbit.inconclusive);
    CHECK(orbit.oscillation);
    REQUIRE(orbit.runs.size() == 1);
    CHECK(orbit.runs[0].verdict == IterationVerdict::diverged);
    CHECK(orbit.runs[0].steps() == 3);  // h(1) -> v(1) -> h(1/2) -> v(1/2) -> out
}

TEST_CASE("iteration csv and summary are deterministic") {
    ContractionSpec<double> spec = builtins::half_shift(2);
    RealModularMetricFn<double> W = builtins::scalarized_unit(2);
    IterationTrace<double> tr = picard(spec, W, 1.0, {1.0}, 1e-8, 100);
    CHECK(tr.verdict == IterationVerdict::converged);
    CHECK(tr.steps() == 27);

    std::ostringstream a;
    write_iteration_csv(a, tr);
    std::string text = a.str();
    CHECK(text.substr(0, text.find('\n')) == "n,x0,residual_lambda_1,ratio");
    CHECK(text.find("0,1,0.5,\n") != std::string::npos);
    CHECK(text.find("1,1.5,0.25,0.5\n") != std::string::npos);
    CHECK(text.find("2,1.75,0.125,0.5\n") != std::string::npos);
    // endpoint row: no outgoing step, empty residual and ratio cells
    CHECK(text.rfind(",,\n") == text.size() - 3);

    std::ostringstream b;
    write_iteration_csv(b, tr);
    CHECK(a.str() == b.str());

    nlohmann::json j = iteration_summary_json(tr);
    CHECK(j["schema_version"] == 1);
    CHECK(j["verdict"] == "converged");
    CHECK(j["steps"] == 27);
    REQUIRE(j["lambda_grid"].size() == 1);
    CHECK(j["final_residuals"][0].get<double>() == std::ldexp(1.0, -27));
    REQUIRE(j["endpoint"].is_array());
    CHECK(j["endpoint"][0].get<double>() == Catch::Approx(2.0).margin(1e-7));

    IterationTrace<double> empty;
    CHECK_THROWS_AS(write_iteration_csv(a, empty), std::invalid_argument);
}
