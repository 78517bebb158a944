#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcm/modular.hpp"

namespace mcm {

/// canonical probe parameters: the Slater direction at four scales
inline std::vector<Vec> default_probes(const PolyCone& P) {
    return {Vec(0.1 * P.slater()), Vec(0.5 * P.slater()), Vec(1.0 * P.slater()),
            Vec(2.0 * P.slater())};
}

/// y lies in the ball around x of parameter c: w_c(x, y) << c
template <class Point>
bool in_ball(const ModularConeMetricFn<Point>& w, const Point& x, const Vec& c, const Point& y) {
    if (!w.cone.interior_contains(c))
        throw std::invalid_argument("in_ball: ball parameter must be interior");
    return w.cone.way_below(w.eval(c, x, y), c);
}

/// Per-probe window result. settle_index is the least 1-based N such that
/// every element (or pair) from N on satisfies the strict-order predicate;
/// -1 when even the window tail fails. residuals hold the scalarized
/// diagnostic xi_c(w_c(...)), which sits below 1 exactly on satisfied
/// elements (margin-0 cones).
struct ProbeTrace {
    Vec probe;
    bool satisfied = false;
    long settle_index = -1;
    std::vector<double> residuals;
};

struct SequenceTrace {
    std::vector<ProbeTrace> probes;
    bool verdict = false;  // all probes satisfied within the window
};

namespace detail {

inline long settle_from_flags(const std::vector<bool>& ok) {
    // least 1-based N with ok[n] for all n >= N-1 (0-based)
    long last_bad = -1;
    for (long n = 0; n < static_cast<long>(ok.size()); ++n)
        if (!ok[n]) last_bad = n;
    return last_bad + 2;
}

}  // namespace detail

/// Window convergence check of x_n -> x against each probe parameter:
/// verdicts speak about this window only, never about the limit.
template <class Point>
SequenceTrace check_convergence(const ModularConeMetricFn<Point>& w,
                                const std::vector<Point>& seq, const Point& x,
                                const std::vector<Vec>& probes) {
    if (!w.eval) throw std::invalid_argument("check_convergence: metric has no evaluator");
    if (seq.empty()) throw std::invalid_argument("check_convergence: empty sequence");
    if (probes.empty()) throw std::invalid_argument("check_convergence: no probe parameters");
    SequenceTrace trace;
    for (const Vec& c : probes) {
        if (!w.cone.interior_contains(c))
            throw std::invalid_argument("check_convergence: probe parameter must be interior");
        ScalarizationContext ctx(w.cone, c);
        ProbeTrace pt;
        pt.probe = c;
        std::vector<bool> ok(seq.size());
        for (std::size_t n = 0; n < seq.size(); ++n) {
            Vec v = w.eval(c, seq[n], x);
            ok[n] = w.cone.way_below(v, c);
            pt.residuals.push_back(xi(ctx, v));
        }
        long settle = detail::settle_from_flags(ok);
        pt.satisfied = settle <= static_cast<long>(seq.size());
        pt.settle_index = pt.satisfied ? settle : -1;
        trace.probes.push_back(std::move(pt));
    }
    trace.verdict = true;
    for (const auto& pt : trace.probes) trace.verdict = trace.verdict && pt.satisfied;
    return trace;
}

/// Window Cauchy check: for each probe, the least 1-based N such that every
/// pair n, m >= N inside the window satisfies w_c(x_n, x_m) << c. The last
/// element alone spans no pair, so satisfaction needs N to leave at least
/// two tail elements (a one-element window is vacuously Cauchy).
/// residuals[n] = max over m > n of xi_c(w_c(x_n, x_m)), 0 for the last.
template <class Point>
SequenceTrace check_cauchy(const ModularConeMetricFn<Point>& w,
                           const std::vector<Point>& seq,
                           const std::vector<Vec>& probes) {
    if (!w.eval) throw std::invalid_argument("check_cauchy: metric has no evaluator");
    if (seq.empty()) throw std::invalid_argument("check_cauchy: empty sequence");
    if (probes.empty()) throw std::invalid_argument("check_cauchy: no probe parameters");
    const long len = static_cast<long>(seq.size());
    SequenceTrace trace;
    for (const Vec& c : probes) {
        if (!w.cone.interior_contains(c))
            throw std::invalid_argument("check_cauchy: probe parameter must be interior");
        ScalarizationContext ctx(w.cone, c);
        ProbeTrace pt;
        pt.probe = c;
        pt.residuals.assign(seq.size(), 0.0);
        long worst_min = -1;  // max over bad pairs of min(n, m)
        for (long n = 0; n < len; ++n) {
            for (long m = n + 1; m < len; ++m) {
                Vec v = w.eval(c, seq[n], seq[m]);
                if (!w.cone.way_below(v, c)) worst_min = std::max(worst_min, n);
                pt.residuals[n] = std::max(pt.residuals[n], xi(ctx, v));
            }
        }
        long settle = worst_min + 2;  // 1-based, first index past the worst bad pair
        pt.satisfied = len == 1 || settle <= len - 1;
        pt.settle_index = pt.satisfied ? settle : -1;
        trace.probes.push_back(std::move(pt));
    }
    trace.verdict = true;
    for (const auto& pt : trace.probes) trace.verdict = trace.verdict && pt.satisfied;
    return trace;
}

// -- dual-criterion equivalence checks ---------------------------------------

/// Order-ball convergence vs plain norm convergence of w_c(x_n, x) -> theta.
/// The norm criterion is the textbook route for normal cones; it is compared
/// on the orthant where the normality constant is exactly 1, so the two
/// verdicts must agree on decisive windows.
struct DualVerdict {
    bool order_verdict = false;
    bool second_verdict = false;
    bool agree = false;
    SequenceTrace order_trace;
    std::vector<long> second_settle;  // per probe / per lambda, -1 when unsatisfied
};

template <class Point>
DualVerdict check_order_vs_norm(const ModularConeMetricFn<Point>& w,
                                const std::vector<Point>& seq, const Point& x,
                                const std::vector<Vec>& probes, double eta = 1e-8) {
    if (!w.cone.is_orthant())
        throw std::invalid_argument("check_order_vs_norm: norm criterion calibrated for the orthant only");
    if (!(eta > 0.0)) throw std::invalid_argument("check_order_vs_norm: eta must be positive");
    DualVerdict dv;
    dv.order_trace = check_convergence(w, seq, x, probes);
    dv.order_verdict = dv.order_trace.verdict;
    dv.second_verdict = true;
    for (const Vec& c : probes) {
        std::vector<bool> ok(seq.size());
        for (std::size_t n = 0; n < seq.size(); ++n)
            ok[n] = (w.eval(c, seq[n], x)).template lpNorm<Eigen::Infinity>() <= eta;
        long settle = detail::settle_from_flags(ok);
        bool sat = settle <= static_cast<long>(seq.size());
        dv.second_settle.push_back(sat ? settle : -1);
        dv.second_verdict = dv.second_verdict && sat;
    }
    dv.agree = dv.order_verdict == dv.second_verdict;
    return dv;
}

/// Order-ball convergence vs convergence of the scalarized metric
/// W_lambda(x_n, x) -> 0 on a lambda grid.
template <class Point>
DualVerdict check_order_vs_scalarized(const ModularConeMetricFn<Point>& w, const Vec& e,
                                      const std::vector<Point>& seq, const Point& x,
                                      const std::vector<double>& lambda_grid,
                                      double tol = 1e-8) {
    if (lambda_grid.empty())
        throw std::invalid_argument("check_order_vs_scalarized: empty lambda grid");
    if (!(tol > 0.0)) throw std::invalid_argument("check_order_vs_scalarized: tol must be positive");
    DualVerdict dv;
    dv.order_trace = check_convergence(w, seq, x, default_probes(w.cone));
    dv.order_verdict = dv.order_trace.verdict;
    RealModularMetricFn<Point> W = scalarize(w, e);
    dv.second_verdict = true;
    for (double l : lambda_grid) {
        if (!(l > 0.0))
            throw std::invalid_argument("check_order_vs_scalarized: lambda must be positive");
        std::vector<bool> ok(seq.size());
        for (std::size_t n = 0; n < seq.size(); ++n) {
            ExtReal v = W.eval(l, seq[n], x);
            ok[n] = v.finite() && v.value() <= tol;
        }
        long settle = detail::settle_from_flags(ok);
        bool sat = settle <= static_cast<long>(seq.size());
        dv.second_settle.push_back(sat ? settle : -1);
        dv.second_verdict = dv.second_verdict && sat;
    }
    dv.agree = dv.order_verdict == dv.second_verdict;
    return dv;
}

// -- separation and local base ------------------------------------------------

/// Separation witness for distinct x, y: a parameter c0 with
/// w_{c0}(x, y) != theta and an n with B(x, c0/(2n)) and B(y, c0/(2n))
/// disjoint over the audited point set. Disjointness over a region is
/// checked on sampled points only (exact_disjointness false).
struct HausdorffWitness {
    bool found = false;
    Vec c0;
    long n = -1;
    bool exact_disjointness = true;
    long checked_points = 0;
};

template <class Point>
HausdorffWitness hausdorff_witness(const ModularConeMetricFn<Point>& w, const Point& x,
                                   const Point& y, const std::vector<Vec>& c0_candidates,
                                   long n_max, const Space<Point>& space,
                                   long region_samples = 512, std::uint64_t seed = 0xba11) {
    if (point_equal(x, y))
        throw std::invalid_argument("hausdorff_witness: points must be distinct");
    if (c0_candidates.empty())
        throw std::invalid_argument("hausdorff_witness: no separation candidates");
    if (n_max < 1) throw std::invalid_argument("hausdorff_witness: n_max must be >= 1");

    HausdorffWitness hw;
    std::vector<Point> pts;
    if (space.finite_kind()) {
        pts = space.points();
    } else {
        hw.exact_disjointness = false;
        Rng rng(seed);
        for (long k = 0; k < region_samples; ++k) pts.push_back(space.sample(rng));
    }
    hw.checked_points = static_cast<long>(pts.size());

    const Vec* sep = nullptr;
    for (const Vec& c0 : c0_candidates) {
        if (!w.cone.interior_contains(c0))
            throw std::invalid_argument("hausdorff_witness: candidate parameter must be interior");
        if (!w.eval(c0, x, y).isZero(0.0)) { sep = &c0; break; }
    }
    if (!sep) return hw;  // no candidate separates; report failure

    for (long n = 1; n <= n_max; ++n) {
        Vec c = *sep / (2.0 * static_cast<double>(n));
        if (!w.cone.interior_contains(c)) continue;
        bool disjoint = true;
        for (const Point& p : pts) {
            if (in_ball(w, x, c, p) && in_ball(w, y, c, p)) { disjoint = false; break; }
        }
        if (disjoint) {
            hw.found = true;
            hw.c0 = *sep;
            hw.n = n;
            return hw;
        }
    }
    return hw;
}

/// Least n >= 1 with c/n << c1, re-verified by spot membership: sampled
/// points inside B(x, c/n) must lie inside B(x, c1).
struct LocalBaseReport {
    long n = 0;
    long spot_checked = 0;
    bool inclusion_ok = true;
};

template <class Point>
LocalBaseReport local_base_inclusion(const ModularConeMetricFn<Point>& w, const Point& x,
                                     const Vec& c, const Vec& c1, long n_cap = 1000000,
                                     const Space<Point>* spot_space = nullptr,
                                     long spot_samples = 256, std::uint64_t seed = 0x10ca1) {
    if (!w.cone.interior_contains(c) || !w.cone.interior_contains(c1))
        throw std::invalid_argument("local_base_inclusion: parameters must be interior");
    LocalBaseReport rep;
    long n = 0;
    for (long k = 1; k <= n_cap; ++k) {
        if (w.cone.way_below(c / static_cast<double>(k), c1)) { n = k; break; }
    }
    if (n == 0) throw std::runtime_error("local_base_inclusion: scale cap exceeded");
    rep.n = n;

    if (spot_space) {
        Rng rng(seed);
        Vec cn = c / static_cast<double>(n);
        for (long k = 0; k < spot_samples; ++k) {
            Point p = spot_space->sample(rng);
            if (in_ball(w, x, cn, p)) {
                ++rep.spot_checked;
                if (!in_ball(w, x, c1, p)) rep.inclusion_ok = false;
            }
        }
    }
    return rep;
}

// -- CSV traces ---------------------------------------------------------------

/// shortest round-tripping decimal form, deterministic across reruns
inline std::string fmt_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Columns: n, one column per point coordinate, one residual column per
/// probe. Deterministic bytes for identical traces.
template <class Point>
void write_trace_csv(std::ostream& os, const std::vector<Point>& seq,
                     const SequenceTrace& trace) {
    if (seq.empty()) throw std::invalid_argument("write_trace_csv: empty sequence");
    const std::size_t ncoords = point_coords(seq[0]).size();
    os << "n";
    for (std::size_t i = 0; i < ncoords; ++i) os << ",x" << i;
    for (std::size_t p = 0; p < trace.probes.size(); ++p) os << ",residual_probe" << p;
    os << "\n";
    for (std::size_t n = 0; n < seq.size(); ++n) {
        os << n;
        for (double v : point_coords(seq[n])) os << "," << fmt_double(v);
        for (const auto& pt : trace.probes) os << "," << fmt_double(pt.residuals[n]);
        os << "\n";
    }
}

}  // namespace mcm
