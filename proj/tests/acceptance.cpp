// Acceptance gate: one line per criterion, exit code = number of failures.
// Every tolerance is pinned here; a change in any audited number must show
// up as a red line, never as a silent drift.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "mcm/mcm.hpp"

using namespace mcm;

namespace {

constexpr double kXiTol = 1e-9;        // closed form vs membership oracle
constexpr double kEndpointTol = 1e-8;  // Picard endpoint distance to the fixed point
constexpr double kPairwiseTol = 1e-7;  // endpoint spread across starts
constexpr double kRatioTol = 1e-12;    // contraction ratio sup against 3/4
constexpr double kGridTol = 1e-6;      // grid minima against their closed forms
constexpr long kSamples = 10000;

int failures = 0;

void criterion(int n, bool ok, const std::string& text) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, text.c_str());
    if (!ok) ++failures;
}

Vec box_sample(Rng& rng, Eigen::Index m) {
    Vec y(m);
    for (Eigen::Index i = 0; i < m; ++i) y[i] = rng.uniform(-10.0, 10.0);
    return y;
}

// decisive convergent window: geometric decay toward a limit
std::vector<double> convergent_window(Rng& rng, double& limit) {
    limit = rng.uniform(-2.0, 2.0);
    double gap = rng.uniform(0.5, 2.0);
    const double rho = rng.uniform(0.4, 0.75);
    std::vector<double> seq;
    for (int n = 0; n < 150; ++n) {
        seq.push_back(limit + (rng.coin() ? gap : -gap));
        gap *= rho;
    }
    return seq;
}

// decisive divergent window: bounded oscillation that never shrinks
std::vector<double> divergent_window(Rng& rng, double& limit) {
    limit = rng.uniform(-2.0, 2.0);
    const double amp = rng.uniform(0.3, 1.0);
    std::vector<double> seq;
    for (int n = 0; n < 150; ++n) seq.push_back(limit + (n % 2 == 0 ? amp : -amp));
    return seq;
}

}  // namespace

int main() {
    // 1: the closed-form scalarization and the membership-only bisection
    // oracle agree on random points over every builtin cone
    {
        Rng rng(0xacc1);
        double max_diff = 0.0;
        for (const PolyCone& P : builtins::audit_cones()) {
            for (int k = 0; k < kSamples / 4; ++k) {
                Vec e = sample_interior_point(P, rng);
                ScalarizationContext ctx(P, e);
                Vec y = box_sample(rng, P.dim());
                max_diff = std::max(max_diff, std::abs(xi(ctx, y) - xi_oracle(ctx, y)));
            }
        }
        std::ostringstream line;
        line << "scalarization closed form tracks the membership oracle (max diff "
             << fmt_double(max_diff) << " <= " << fmt_double(kXiTol) << ")";
        criterion(1, max_diff <= kXiTol, line.str());
    }

    // 2: all five scalarization laws audit clean on every builtin cone
    {
        bool ok = true;
        long checks = 0;
        for (const PolyCone& P : builtins::audit_cones()) {
            ScalarizationContext ctx(P, P.slater());
            AuditReport rep = audit_scalarization_laws(ctx, kSamples, 0xacc2);
            ok = ok && rep.verdict() == Verdict::pass && rep.checks.size() == 5;
            for (const CheckResult& c : rep.checks)
                ok = ok && c.samples == kSamples && c.violations == 0;
            checks += static_cast<long>(rep.checks.size());
        }
        std::ostringstream line;
        line << "scalarization laws hold on " << checks << " checks across the builtin cones";
        criterion(2, ok, line.str());
    }

    // 3: the modular axiom audits pass the sound constructions and catch the
    // deliberately broken weight quickly
    {
        AuditReport scaled = audit_modular_cone_axioms(builtins::scaled_cone_metric(2),
                                                       builtins::interval_space(), kSamples, 0xacc3);
        AuditReport convex = audit_convex_axioms(builtins::inverse_parameter(2),
                                                 builtins::interval_space(), kSamples, 0xacc3);
        AuditReport broken = audit_modular_cone_axioms(builtins::broken_phi(2),
                                                       builtins::interval_space(), 1000, 0xacc3);
        bool ok = scaled.passed() && scaled.total_violations() == 0 && convex.passed() &&
                  convex.total_violations() == 0 &&
                  broken.check("triangle-split").violations >= 1;
        std::ostringstream line;
        line << "axiom audits pass sound constructions and flag the increasing weight ("
             << broken.check("triangle-split").violations << " triangle violations in 1000)";
        criterion(3, ok, line.str());
    }

    // 4: scalarized metrics audit clean, as plain and as convex modular metrics
    {
        AuditReport plain = audit_real_modular(builtins::scalarized(2), builtins::interval_space(),
                                               kSamples, false, 0xacc4);
        AuditReport convex = audit_real_modular(builtins::scalarized_unit(2),
                                                builtins::interval_space(), kSamples, true, 0xacc4);
        bool ok = plain.passed() && plain.total_violations() == 0 && convex.passed() &&
                  convex.total_violations() == 0;
        criterion(4, ok, "scalarized metrics satisfy the real modular axioms, plain and convex");
    }

    // 5: the order-ball criterion, the norm criterion, and the scalarized
    // criterion give one verdict on decisive windows
    {
        ModularConeMetricFn<double> w = builtins::inverse_parameter(2);
        const std::vector<Vec> probes = default_probes(w.cone);
        const Vec e = Vec(Vec::Ones(2));
        const std::vector<double> grid = {0.5, 1.0, 2.0};
        Rng rng(0xacc5);
        int agreed = 0;
        const int rounds = 100;
        for (int k = 0; k < 2 * rounds; ++k) {
            double limit = 0.0;
            bool expect = k < rounds;
            std::vector<double> seq =
                expect ? convergent_window(rng, limit) : divergent_window(rng, limit);
            DualVerdict vs_norm = check_order_vs_norm(w, seq, limit, probes);
            DualVerdict vs_scalar = check_order_vs_scalarized(w, e, seq, limit, grid);
            if (vs_norm.agree && vs_scalar.agree && vs_norm.order_verdict == expect &&
                vs_scalar.order_verdict == expect)
                ++agreed;
        }
        std::ostringstream line;
        line << "convergence criteria agree on " << agreed << " of " << 2 * rounds
             << " decisive windows";
        criterion(5, agreed == 2 * rounds, line.str());
    }

    // 6: the contraction gate accepts the half shift and Picard iteration
    // lands on its fixed point from spread starts
    {
        ModularConeMetricFn<double> w = builtins::inverse_parameter(2);
        ContractionSpec<double> spec = builtins::half_shift(2);
        RealModularMetricFn<double> W = builtins::scalarized_unit(2);
        const std::vector<double> grid = {0.5, 1.0, 2.0};

        AuditReport gate =
            contraction_audit(w, spec, builtins::interval_space(-100.0, 100.0), kSamples, 0xacc6);
        UniquenessReport<double> up =
            uniqueness_probe(spec, W, {0.0, 100.0, -50.0}, grid, kEndpointTol, 60);
        bool ok = gate.passed() && up.all_converged && up.endpoints_close &&
                  up.max_pairwise <= kPairwiseTol;
        for (const auto& run : up.runs)
            ok = ok && run.steps() <= 60 && std::abs(run.endpoint() - 2.0) <= kEndpointTol;
        std::ostringstream line;
        line << "gated Picard iteration reaches the fixed point (endpoint spread "
             << fmt_double(up.max_pairwise) << " <= " << fmt_double(kPairwiseTol) << ")";
        criterion(6, ok, line.str());
    }

    // 7: the two-segment counterexample reproduces its published numbers:
    // ratio sup 3/4, cross infimum 7/6 against the printed 7/3, positive
    // minimal displacement 5/6, and the vertical self-map failure
    {
        twoseg::ContractionClaimReport ratio = twoseg::audit_contraction_claim(1e-3);
        twoseg::CrossBoundReport cross = twoseg::audit_cross_bound(1e-3);
        twoseg::NoFixedPointReport nofix = twoseg::audit_no_fixed_point(1e-3);
        twoseg::SelfMapReport selfmap = twoseg::audit_self_map(1e-3);
        bool ok = std::abs(ratio.sup_ratio - 0.75) <= kRatioTol && ratio.within_claim &&
                  ratio.arg_case == "horizontal-horizontal" &&
                  std::abs(cross.computed_inf - 7.0 / 6.0) <= kGridTol && !cross.matches_stated &&
                  nofix.min_scaled > 0.0 && std::abs(nofix.min_scaled - 5.0 / 6.0) <= kGridTol &&
                  selfmap.violations == selfmap.grid_points - 1 && selfmap.boundary_maps_inside &&
                  selfmap.horizontal_side_ok && selfmap.min_violating == 0.5 &&
                  std::abs(selfmap.max_violating - 0.999) <= 1e-12;
        std::ostringstream line;
        line << "two-segment numbers land exactly (ratio sup " << fmt_double(ratio.sup_ratio)
             << ", cross inf " << fmt_double(cross.computed_inf) << ", min displacement "
             << fmt_double(nofix.min_scaled) << ")";
        criterion(7, ok, line.str());
    }

    // 8: separation witnesses and local base scales re-verify independently
    {
        ModularConeMetricFn<double> w = builtins::inverse_parameter(2);
        Space<double> grid = builtins::grid_space(0.0, 1.0, 21);
        const std::vector<double> pts = grid.points();
        Space<double> narrow = builtins::interval_space(-0.05, 0.05);
        Rng rng(0xacc8);
        bool ok = true;

        for (int k = 0; k < 100; ++k) {
            std::size_t i = rng.index(pts.size());
            std::size_t j = rng.index(pts.size());
            if (i == j) j = (j + 1) % pts.size();
            HausdorffWitness hw =
                hausdorff_witness(w, pts[i], pts[j], default_probes(w.cone), 64, grid);
            ok = ok && hw.found && hw.exact_disjointness;
            if (!hw.found) continue;
            Vec c = Vec(hw.c0 / (2.0 * static_cast<double>(hw.n)));
            for (double p : pts)
                ok = ok && !(in_ball(w, pts[i], c, p) && in_ball(w, pts[j], c, p));
        }

        for (int k = 0; k < 100; ++k) {
            Vec c(2), c1(2);
            for (Eigen::Index d = 0; d < 2; ++d) {
                c[d] = rng.uniform(0.05, 3.0);
                c1[d] = rng.uniform(0.05, 3.0);
            }
            LocalBaseReport rep = local_base_inclusion(w, 0.0, c, c1, 1000000, &narrow, 256);
            ok = ok && w.cone.way_below(Vec(c / static_cast<double>(rep.n)), c1) &&
                 (rep.n == 1 || !w.cone.way_below(Vec(c / static_cast<double>(rep.n - 1)), c1)) &&
                 rep.inclusion_ok;
        }
        criterion(8, ok, "separation witnesses and minimal local base scales re-verify");
    }

    // 9: every machine-readable artifact is byte-identical across reruns
    {
        std::string ledger_a = twoseg::claim_ledger(1e-2, 2000, 0xacc9).dump(2);
        std::string ledger_b = twoseg::claim_ledger(1e-2, 2000, 0xacc9).dump(2);

        ModularConeMetricFn<double> scaled = builtins::scaled_cone_metric(2);
        std::string audit_a =
            audit_modular_cone_axioms(scaled, builtins::interval_space(), 2000, 0xacc9)
                .to_json().dump(2);
        std::string audit_b =
            audit_modular_cone_axioms(scaled, builtins::interval_space(), 2000, 0xacc9)
                .to_json().dump(2);

        IterationTrace<double> tr = picard(builtins::half_shift(2), builtins::scalarized_unit(2),
                                           100.0, {0.5, 1.0, 2.0}, 1e-8, 200);
        std::ostringstream csv_a, csv_b;
        write_iteration_csv(csv_a, tr);
        write_iteration_csv(csv_b, tr);

        bool ok = ledger_a == ledger_b && audit_a == audit_b && csv_a.str() == csv_b.str();
        criterion(9, ok, "ledgers, audit reports, and iteration traces rerun byte-identically");
    }

    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures;
}
