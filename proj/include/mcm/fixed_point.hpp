#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcm/modular.hpp"
#include "mcm/topology.hpp"

namespace mcm {

/// Candidate contraction: a self map T with claimed modulus k in (0, 1)
/// against the hypothesis w_{k c}(T x, T y) <= w_c(x, y) for interior
/// parameters theta << c << c0. Plain data; contraction_audit validates it.
template <class Point>
struct ContractionSpec {
    std::function<Point(const Point&)> map;
    double k = 0.0;
    Vec c0;
};

/// Sampled check of the contraction hypothesis on a convex modular metric.
/// Probes c = t c0 for t in (0, 1) plus accepted perturbations (rejected
/// unless theta << c << c0 still holds). Reports the worst slack
/// min_rows(rhs - lhs) even when every sample passes.
template <class Point>
AuditReport contraction_audit(const ModularConeMetricFn<Point>& w,
                              const ContractionSpec<Point>& spec, const Space<Point>& space,
                              long samples, std::uint64_t seed, double tol = 1e-9) {
    if (!w.eval) throw std::invalid_argument("contraction_audit: metric has no evaluator");
    if (!spec.map) throw std::invalid_argument("contraction_audit: no map");
    if (w.cls != ModularClass::convex)
        throw std::invalid_argument("contraction_audit: hypothesis is stated for convex modular metrics");
    if (!(spec.k > 0.0) || !(spec.k < 1.0))
        throw std::invalid_argument("contraction_audit: modulus k must lie in (0, 1)");
    if (!w.cone.interior_contains(spec.c0))
        throw std::invalid_argument("contraction_audit: c0 must be interior");
    if (samples < 1) throw std::invalid_argument("contraction_audit: samples must be >= 1");

    AuditReport rep;
    rep.subject = "contraction-hypothesis";
    rep.seed = seed;
    Rng rng(seed);
    CheckResult& ineq = rep.check("contraction-inequality");
    double worst_slack = std::numeric_limits<double>::infinity();

    for (long s = 0; s < samples; ++s) {
        Point x = space.sample(rng);
        Point y = space.sample(rng);
        double t = rng.uniform(0.05, 0.95);
        Vec c = t * spec.c0;
        if (s % 2 == 1) {  // perturb off the ray when the window allows it
            Vec cand = c;
            for (Eigen::Index i = 0; i < c.size(); ++i)
                cand[i] += rng.uniform(-0.05 * t, 0.05 * t);
            if (w.cone.interior_contains(cand) && w.cone.way_below(cand, spec.c0)) c = cand;
        }

        Vec lhs = w.eval(spec.k * c, spec.map(x), spec.map(y));
        Vec rhs = w.eval(c, x, y);
        double slack = (w.cone.halfspaces() * (rhs - lhs)).minCoeff();
        worst_slack = std::min(worst_slack, slack);
        ineq.count(w.cone.partial_le(lhs, rhs, tol), -slack, [&] {
            return nlohmann::json{{"x", coords_json(x)}, {"y", coords_json(y)}, {"c", vec_json(c)},
                                  {"lhs", vec_json(lhs)}, {"rhs", vec_json(rhs)}};
        });
    }
    if (ineq.violations == 0)
        ineq.worst = nlohmann::json{{"worst_slack", worst_slack}};
    return rep;
}

/// T maps sampled points back into the space.
template <class Point>
AuditReport self_map_audit(const std::function<Point(const Point&)>& map,
                           const Space<Point>& space, long samples, std::uint64_t seed) {
    if (!map) throw std::invalid_argument("self_map_audit: no map");
    if (samples < 1) throw std::invalid_argument("self_map_audit: samples must be >= 1");
    AuditReport rep;
    rep.subject = "self-map";
    rep.seed = seed;
    Rng rng(seed);
    CheckResult& closed = rep.check("image-in-space");
    for (long s = 0; s < samples; ++s) {
        Point x = space.sample(rng);
        Point tx = map(x);
        closed.count(space.member(tx), 0.0, [&] {
            return nlohmann::json{{"x", coords_json(x)}, {"Tx", coords_json(tx)}};
        });
    }
    return rep;
}

enum class IterationVerdict { converged, max_iter, diverged };

inline std::string to_string(IterationVerdict v) {
    switch (v) {
        case IterationVerdict::converged: return "converged";
        case IterationVerdict::max_iter: return "max-iter";
        case IterationVerdict::diverged: return "diverged";
    }
    throw std::logic_error("unreachable");
}

/// Picard orbit with successive-iterate stopping: residual of step n is
/// max over the lambda grid of W_lambda(x_n, x_{n+1}); the run converges
/// when that drops below tol. residuals[n] holds the per-lambda values for
/// the step x_n -> x_{n+1}; ratio_series tracks successive max-residual
/// quotients (the observable contraction rate).
template <class Point>
struct IterationTrace {
    std::vector<Point> iterates;  // x_0 .. x_N
    std::vector<double> lambda_grid;
    std::vector<std::vector<double>> residuals;
    std::vector<double> ratio_series;
    IterationVerdict verdict = IterationVerdict::max_iter;

    const Point& endpoint() const { return iterates.back(); }
    long steps() const { return static_cast<long>(residuals.size()); }
};

/// Runs T from x0. A map that leaves its domain signals by throwing
/// std::domain_error; the orbit is truncated with the diverged verdict, as
/// is any non-finite iterate.
template <class Point>
IterationTrace<Point> picard(const ContractionSpec<Point>& spec,
                             const RealModularMetricFn<Point>& W, const Point& x0,
                             const std::vector<double>& lambda_grid, double tol,
                             long max_iter) {
    if (!spec.map) throw std::invalid_argument("picard: no map");
    if (!W.eval) throw std::invalid_argument("picard: no metric");
    if (!(tol > 0.0)) throw std::invalid_argument("picard: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("picard: max_iter must be >= 1");
    if (lambda_grid.empty()) throw std::invalid_argument("picard: empty lambda grid");
    for (double l : lambda_grid)
        if (!(l > 0.0)) throw std::invalid_argument("picard: lambda must be positive");

    IterationTrace<Point> trace;
    trace.lambda_grid = lambda_grid;
    trace.iterates.push_back(x0);
    Point x = x0;
    double prev_max = -1.0;

    for (long n = 0; n < max_iter; ++n) {
        std::optional<Point> stepped;
        try {
            stepped = spec.map(x);
        } catch (const std::domain_error&) {
            trace.verdict = IterationVerdict::diverged;
            return trace;
        }
        Point next = std::move(*stepped);
        bool finite = true;
        for (double v : point_coords(next)) finite = finite && std::isfinite(v);
        if (!finite) {
            trace.iterates.push_back(next);
            trace.verdict = IterationVerdict::diverged;
            return trace;
        }

        std::vector<double> row;
        double step_max = 0.0;
        for (double l : lambda_grid) {
            double v = W.eval(l, x, next).value();
            row.push_back(v);
            step_max = std::max(step_max, v);
        }
        trace.iterates.push_back(next);
        trace.residuals.push_back(std::move(row));
        if (prev_max > 0.0 && std::isfinite(prev_max) && std::isfinite(step_max))
            trace.ratio_series.push_back(step_max / prev_max);
        prev_max = step_max;

        if (step_max < tol) {
            trace.verdict = IterationVerdict::converged;
            return trace;
        }
        x = next;
    }
    trace.verdict = IterationVerdict::max_iter;
    return trace;
}

/// Multi-start probe for uniqueness of the limit: every start must converge
/// and all endpoint pairs must sit within 10 tol of each other under every
/// grid lambda. A non-converged start makes the probe inconclusive; a
/// non-decaying residual tail there is flagged as oscillation.
template <class Point>
struct UniquenessReport {
    std::vector<IterationTrace<Point>> runs;
    bool all_converged = false;
    bool endpoints_close = false;
    bool inconclusive = true;
    bool oscillation = false;
    double max_pairwise = 0.0;
};

template <class Point>
UniquenessReport<Point> uniqueness_probe(const ContractionSpec<Point>& spec,
                                         const RealModularMetricFn<Point>& W,
                                         const std::vector<Point>& starts,
                                         const std::vector<double>& lambda_grid, double tol,
                                         long max_iter) {
    if (starts.empty()) throw std::invalid_argument("uniqueness_probe: no starts");
    UniquenessReport<Point> rep;
    for (const Point& x0 : starts)
        rep.runs.push_back(picard(spec, W, x0, lambda_grid, tol, max_iter));

    rep.all_converged = true;
    for (const auto& run : rep.runs) {
        if (run.verdict == IterationVerdict::converged) continue;
        rep.all_converged = false;
        if (run.residuals.size() >= 2) {
            double first = 0.0, last = 0.0;
            for (double v : run.residuals.front()) first = std::max(first, v);
            for (double v : run.residuals.back()) last = std::max(last, v);
            if (last >= 0.5 * first && first > 0.0) rep.oscillation = true;
        }
    }
    rep.inconclusive = !rep.all_converged;
    if (!rep.all_converged) return rep;

    rep.endpoints_close = true;
    for (std::size_t i = 0; i < rep.runs.size(); ++i) {
        for (std::size_t j = i + 1; j < rep.runs.size(); ++j) {
            for (double l : lambda_grid) {
                double v = W.eval(l, rep.runs[i].endpoint(), rep.runs[j].endpoint()).value();
                rep.max_pairwise = std::max(rep.max_pairwise, v);
                if (!(v <= 10.0 * tol)) rep.endpoints_close = false;
            }
        }
    }
    return rep;
}

/// Columns: n, iterate coordinates, per-lambda residuals of the outgoing
/// step, ratio of max residuals. The endpoint row has no outgoing step, so
/// its residual and ratio cells stay empty.
template <class Point>
void write_iteration_csv(std::ostream& os, const IterationTrace<Point>& trace) {
    if (trace.iterates.empty()) throw std::invalid_argument("write_iteration_csv: empty trace");
    const std::size_t ncoords = point_coords(trace.iterates[0]).size();
    os << "n";
    for (std::size_t i = 0; i < ncoords; ++i) os << ",x" << i;
    for (double l : trace.lambda_grid) os << ",residual_lambda_" << fmt_double(l);
    os << ",ratio\n";
    for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
        os << n;
        for (double v : point_coords(trace.iterates[n])) os << "," << fmt_double(v);
        if (n < trace.residuals.size()) {
            for (double v : trace.residuals[n]) os << "," << fmt_double(v);
        } else {
            for (std::size_t i = 0; i < trace.lambda_grid.size(); ++i) os << ",";
        }
        if (n >= 1 && n - 1 < trace.ratio_series.size())
            os << "," << fmt_double(trace.ratio_series[n - 1]);
        else
            os << ",";
        os << "\n";
    }
}

/// summary of one iteration run as ordered JSON
template <class Point>
nlohmann::json iteration_summary_json(const IterationTrace<Point>& trace) {
    nlohmann::json grid = nlohmann::json::array();
    for (double l : trace.lambda_grid) grid.push_back(l);
    nlohmann::json final_res = nlohmann::json::array();
    if (!trace.residuals.empty())
        for (double v : trace.residuals.back()) final_res.push_back(v);
    return {{"schema_version", kReportSchemaVersion},
            {"verdict", to_string(trace.verdict)},
            {"steps", trace.steps()},
            {"lambda_grid", grid},
            {"final_residuals", final_res},
            {"endpoint", coords_json(trace.endpoint())}};
}

}  // namespace mcm
