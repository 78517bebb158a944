#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mcm/cone.hpp"
#include "mcm/extended_real.hpp"
#include "mcm/random.hpp"
#include "mcm/report.hpp"
#include "mcm/scalarization.hpp"

namespace mcm {

// -- point customization ----------------------------------------------------
//
// Spaces, metrics and traces are templated over the point type. A point type
// participates by providing point_equal and point_coords overloads (found by
// ADL or these defaults). Coordinates feed CSV traces and report payloads.

inline bool point_equal(double a, double b) { return a == b; }
inline bool point_equal(const Vec& a, const Vec& b) {
    return a.size() == b.size() && (a - b).isZero(0.0);
}
template <class P>
bool point_equal(const P& a, const P& b) {
    return a == b;
}

inline std::vector<double> point_coords(double x) { return {x}; }
inline std::vector<double> point_coords(const Vec& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

template <class P>
nlohmann::json coords_json(const P& p) {
    nlohmann::json a = nlohmann::json::array();
    for (double v : point_coords(p)) a.push_back(v);
    return a;
}

inline nlohmann::json vec_json(const Vec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

// -- spaces -------------------------------------------------------------------

/// Point set to audit over: either an explicit finite list or a region given
/// by a membership predicate plus a seeded sampler.
template <class Point>
class Space {
public:
    static Space finite(std::vector<Point> pts) {
        if (pts.empty()) throw std::invalid_argument("Space: finite space needs at least one point");
        std::vector<Point> dedup;
        for (const auto& p : pts) {
            bool seen = false;
            for (const auto& q : dedup)
                if (point_equal(p, q)) { seen = true; break; }
            if (!seen) dedup.push_back(p);
        }
        Space s;
        s.points_ = std::move(dedup);
        s.finite_ = true;
        return s;
    }

    static Space region(std::function<bool(const Point&)> member,
                        std::function<Point(Rng&)> sampler) {
        if (!member || !sampler) throw std::invalid_argument("Space: region needs member and sampler");
        Space s;
        s.member_ = std::move(member);
        s.sampler_ = std::move(sampler);
        s.finite_ = false;
        return s;
    }

    bool finite_kind() const { return finite_; }

    const std::vector<Point>& points() const {
        if (!finite_) throw std::logic_error("Space: region space has no point list");
        return points_;
    }

    bool member(const Point& p) const {
        if (finite_) {
            for (const auto& q : points_)
                if (point_equal(p, q)) return true;
            return false;
        }
        return member_(p);
    }

    Point sample(Rng& rng) const {
        if (finite_) return points_[rng.index(points_.size())];
        Point p = sampler_(rng);
        if (!member_(p)) throw std::logic_error("Space: sampler produced a non-member point");
        return p;
    }

    /// distinct pair when the space has one; throws on a one-point space
    std::pair<Point, Point> sample_distinct(Rng& rng) const {
        if (finite_ && points_.size() < 2)
            throw std::invalid_argument("Space: no distinct pair in a one-point space");
        for (int tries = 0; tries < 64; ++tries) {
            Point a = sample(rng), b = sample(rng);
            if (!point_equal(a, b)) return {a, b};
        }
        throw std::runtime_error("Space: sampler keeps returning equal points");
    }

private:
    std::vector<Point> points_;
    std::function<bool(const Point&)> member_;
    std::function<Point(Rng&)> sampler_;
    bool finite_ = true;
};

// -- metric function objects --------------------------------------------------

/// cone metric d : X x X -> P (codomain ordered by the cone)
template <class Point>
struct ConeMetricFn {
    PolyCone cone;
    std::function<Vec(const Point&, const Point&)> eval;
};

enum class ModularClass { plain, convex, strict };

/// modular cone metric w : intP x X x X -> E, evaluated as w.eval(c, x, y).
/// cls records which triangle axiom the object claims (plain split, convex
/// weights) or whether identity-of-indiscernibles holds per parameter
/// (strict). phi_monotone_spot_ok records the construction-time spot audit
/// of c-monotonicity where one applies.
template <class Point>
struct ModularConeMetricFn {
    PolyCone cone;
    ModularClass cls = ModularClass::plain;
    std::function<Vec(const Vec&, const Point&, const Point&)> eval;
    bool phi_monotone_spot_ok = true;
};

/// real modular metric W : (0, inf) x X x X -> [0, inf]
template <class Point>
struct RealModularMetricFn {
    bool convex = false;
    std::function<ExtReal(double, const Point&, const Point&)> eval;
};

// -- constructions ------------------------------------------------------------

/// w_c(x, y) = phi(c) d(x, y) for a positive, order-decreasing weight phi on
/// intP. Default phi is 1/xi_e with e the cone's Slater point. Positivity is
/// enforced by spot samples at construction (nonpositive phi throws);
/// decreasingness is spot-audited and only recorded in the result's
/// phi_monotone_spot_ok flag, so a deliberately broken weight still
/// constructs and the axiom audit can catch it.
template <class Point>
ModularConeMetricFn<Point> from_cone_metric(const ConeMetricFn<Point>& d,
                                            std::function<double(const Vec&)> phi = {},
                                            std::uint64_t spot_seed = 0x0600d) {
    if (!d.eval) throw std::invalid_argument("from_cone_metric: metric has no evaluator");
    std::function<double(const Vec&)> weight = std::move(phi);
    if (!weight) {
        auto ctx = std::make_shared<ScalarizationContext>(d.cone, d.cone.slater());
        weight = [ctx](const Vec& c) { return 1.0 / xi(*ctx, c); };
    }

    bool monotone_ok = true;
    Rng rng(spot_seed);
    for (int k = 0; k < 64; ++k) {
        Vec c1 = sample_interior_point(d.cone, rng);
        double v1 = weight(c1);
        if (!(v1 > 0.0) || !std::isfinite(v1))
            throw std::invalid_argument("from_cone_metric: phi must be finite and positive on the interior");
        Vec c2 = c1 + sample_interior_point(d.cone, rng);  // c1 << c2
        if (weight(c2) > v1 + 1e-12) monotone_ok = false;
    }

    auto eval = [weight, f = d.eval](const Vec& c, const Point& x, const Point& y) {
        return Vec(weight(c) * f(x, y));
    };
    return ModularConeMetricFn<Point>{d.cone, ModularClass::plain, std::move(eval), monotone_ok};
}

/// w_c(x, y) = d(x, y) / c componentwise. Requires the orthant (the only
/// cone whose componentwise product is order-compatible); a boundary c at
/// evaluation throws via pointwise_invert.
template <class Point>
ModularConeMetricFn<Point> convex_from_cone_metric(const ConeMetricFn<Point>& d) {
    if (!d.eval) throw std::invalid_argument("convex_from_cone_metric: metric has no evaluator");
    if (!d.cone.is_orthant())
        throw std::invalid_argument("convex_from_cone_metric: requires the orthant cone");
    auto eval = [cone = d.cone, f = d.eval](const Vec& c, const Point& x, const Point& y) {
        return Vec(f(x, y).cwiseProduct(pointwise_invert(c, cone)));
    };
    return ModularConeMetricFn<Point>{d.cone, ModularClass::convex, std::move(eval), true};
}

/// W_lambda(x, y) = xi_e(w_{lambda e}(x, y)). Nonnegative for any w with
/// values in the cone; float fuzz at w ~ theta is clamped to 0, anything
/// genuinely negative means w left the cone and throws. The convex flag
/// survives only along the route that preserves it: convex w over the
/// orthant scalarized along e = (1,...,1).
template <class Point>
RealModularMetricFn<Point> scalarize(const ModularConeMetricFn<Point>& w, const Vec& e) {
    if (!w.eval) throw std::invalid_argument("scalarize: metric has no evaluator");
    auto ctx = std::make_shared<ScalarizationContext>(w.cone, e);
    RealModularMetricFn<Point> W;
    W.convex = w.cls == ModularClass::convex && w.cone.is_orthant() &&
               (e.array() == 1.0).all();
    W.eval = [ctx, f = w.eval](double lambda, const Point& x, const Point& y) {
        if (!(lambda > 0.0)) throw std::invalid_argument("scalarized metric: lambda must be positive");
        double v = xi(*ctx, f(Vec(lambda * ctx->e()), x, y));
        if (v < 0.0) {
            if (v < -1e-12) throw std::runtime_error("scalarized metric: value left the cone");
            v = 0.0;
        }
        return ExtReal(v);
    };
    return W;
}

// -- axiom audits -------------------------------------------------------------

namespace detail {

/// separating-parameter search for the distinctness axiom: ladder scales of
/// the Slater direction plus seeded interior probes. Existence over a
/// continuous parameter range is sample-refutable only, so users of this
/// helper mark their report statistical.
template <class EvalZero>
bool find_separating_parameter(const PolyCone& cone, Rng& rng, EvalZero&& is_zero_at) {
    for (int k = -8; k <= 8; ++k) {
        Vec c = std::ldexp(1.0, k) * cone.slater();
        if (!is_zero_at(c)) return true;
    }
    for (int k = 0; k < 16; ++k) {
        Vec c = sample_interior_point(cone, rng);
        if (!is_zero_at(c)) return true;
    }
    return false;
}

}  // namespace detail

/// Cone metric axioms on sampled triples: nonnegativity, identity at x = x,
/// distinctness for sampled x != y, symmetry, triangle along the cone order.
/// tol is the comparison slack for the order checks.
template <class Point>
AuditReport audit_cone_metric(const ConeMetricFn<Point>& d, const Space<Point>& space,
                              long samples, std::uint64_t seed, double tol = 1e-9) {
    if (!d.eval) throw std::invalid_argument("audit_cone_metric: metric has no evaluator");
    if (samples < 1) throw std::invalid_argument("audit_cone_metric: samples must be >= 1");
    AuditReport rep;
    rep.subject = "cone-metric-axioms";
    rep.seed = seed;
    Rng rng(seed);

    CheckResult& nonneg = rep.check("nonnegativity");
    CheckResult& ident = rep.check("identity");
    CheckResult& distinct = rep.check("distinctness");
    CheckResult& sym = rep.check("symmetry");
    CheckResult& tri = rep.check("triangle");

    bool has_pair = !space.finite_kind() || space.points().size() >= 2;

    for (long k = 0; k < samples; ++k) {
        Point x = space.sample(rng);
        Point y = space.sample(rng);
        Point z = space.sample(rng);
        if (k % 16 == 5) z = y;  // corner the triangle at an endpoint
        if (k % 16 == 11) z = x;

        Vec dxy = d.eval(x, y);
        nonneg.count(d.cone.contains(dxy, tol), -1.0, [&] {
            return nlohmann::json{{"x", coords_json(x)}, {"y", coords_json(y)}, {"d", vec_json(dxy)}};
        });

        Vec dxx = d.eval(x, x);
        ident.count(dxx.isZero(tol), dxx.lpNorm<Eigen::Infinity>(), [&] {
            return nlohmann::json{{"x", coords_json(x)}, {"d", vec_json(dxx)}};
        });

        if (has_pair) {
            auto [a, b] = space.sample_distinct(rng);
            Vec dab = d.eval(a, b);
            distinct.count(!dab.isZero(tol), 0.0, [&] {
                return nlohmann::json{{"x", coords_json(a)}, {"y", coords_json(b)}};
            });
        }

        Vec dyx = d.eval(y, x);
        double asym = (dxy - dyx).lpNorm<Eigen::Infinity>();
        sym.count(asym <= tol, asym, [&] {
            return nlohmann::json{{"x", coords_json(x)}, {"y", coords_json(y)}, {"asymmetry", asym}};
        });

        Vec lhs = dxy;
        Vec rhs = d.eval(x, z) + d.eval(z, y);
        tri.count(d.cone.partial_le(lhs, rhs, tol),
                  ((d.cone.halfspaces() * (lhs - rhs)).maxCoeff()), [&] {
                      return nlohmann::json{{"x", coords_json(x)}, {"y", coords_json(y)},
                                            {"z", coords_json(z)}, {"lhs", vec_json(lhs)},
                                            {"rhs", vec_json(rhs)}};
                  });
    }
    return rep;
}

/// Modular cone metric axioms (plain triangle split w_{c1+c2}(x,y) <=
/// w_{c1}(x,z) + w_{c2}(z,y)) plus nonnegativity and c-monotonicity on
/// sampled parameters. The distinctness pass is a sampled search for a
/// separating c, so a clean run reports statistical-pass.
template <class Point>
AuditReport audit_modular_cone_axioms(const ModularConeMetricFn<Point>& w,
                                      const Space<Point>& space, long samples,
                                      std::uint64_t seed, double tol = 1e-9) {
    if (!w.eval) throw std::invalid_argument("audit_modular_cone_axioms: metric has no evaluator");
    if (samples < 1) throw std::invalid_argument("audit_modular_cone_axioms: samples must be >= 1");
    AuditReport rep;
    rep.subject = "modular-cone-metric-axioms";
    rep.seed = seed;
    rep.statistical = true;
    Rng rng(seed);

    CheckResult& nonneg = rep.check("nonnegativity");
    CheckResult& ident = rep.check("identity-zero");
    CheckResult& distinct = rep.check("distinctness");
    CheckResult& sym = rep.check("symmetry");
    CheckResult& tri = rep.check("triangle-split");
    CheckResult& cmono = rep.check("c-monotonicity");

    bool has_pair = !space.finite_kind() || space.points().size() >= 2;

    for (long k = 0; k < samples; ++k) {
        Point x = space.sample(rng);
        Point y = space.sample(rng);
        Point z = space.sample(rng);
        if (k % 8 == 3) z = y;  // corners catch weights that grow with c
        if (k % 16 == 9) z = x;
        Vec c1 = sample_interior_point(w.cone, rng);
        Vec c2 = sample_interior_point(w.cone, rng);

        Vec wxy = w.eval(c1, x, y);
        nonneg.count(w.cone.contains(wxy, tol), -1.0, [&] {
            return nlohmann::json{{"c", vec_json(c1)}, {"x", coords_json(x)},
                                  {"y", coords_json(y)}, {"w", vec_json(wxy)}};
        });

        Vec wxx = w.eval(c1, x, x);
        ident.count(wxx.isZero(tol), wxx.lpNorm<Eigen::Infinity>(), [&] {
            return nlohmann::json{{"c", vec_json(c1)}, {"x", coords_json(x)}, {"w", vec_json(wxx)}};
        });

        if (has_pair) {
            auto [a, b] = space.sample_distinct(rng);
            bool found = detail::find_separating_parameter(
                w.cone, rng, [&](const Vec& c) { return w.eval(c, a, b).isZero(tol); });
            distinct.count(found, 0.0, [&] {
                return nlohmann::json{{"x", coords_json(a)}, {"y", coords_json(b)}};
            });
        }

        Vec wyx = w.eval(c1, y, x);
        double asym = (wxy - wyx).lpNorm<Eigen::Infinity>();
        sym.count(asym <= tol, asym, [&] {
            return nlohmann::json{{"c", vec_json(c1)}, {"x", coords_json(x)},
                                  {"y", coords_json(y)}, {"asymmetry", asym}};
        });

        Vec lhs = w.eval(c1 + c2, x, y);
        Vec rhs = w.eval(c1, x, z) + w.eval(c2, z, y);
        tri.count(w.cone.partial_le(lhs, rhs, tol),
                  (w.cone.halfspaces() * (lhs - rhs)).maxCoeff(), [&] {
                      return nlohmann::json{{"c1", vec_json(c1)}, {"c2", vec_json(c2)},
                                            {"x", coords_json(x)}, {"y", coords_json(y)},
                                            {"z", coords_json(z)}, {"lhs", vec_json(lhs)},
                                            {"rhs", vec_json(rhs)}};
                  });

        // c1 << c1 + c2 by interiority of c2
        Vec big = c1 + c2;
        Vec w_small = wxy, w_big = w.eval(big, x, y);
        cmono.count(w.cone.partial_le(w_big, w_small, tol),
                    (w.cone.halfspaces() * (w_big - w_small)).maxCoeff(), [&] {
                        return nlohmann::json{{"c_small", vec_json(c1)}, {"c_big", vec_json(big)},
                                              {"x", coords_json(x)}, {"y", coords_json(y)}};
                    });
    }
    return rep;
}

/// Convex modular axioms: the weighted triangle
/// w_{c1+c2}(x,y) <= (c1/(c1+c2)) w_{c1}(x,z) + (c2/(c1+c2)) w_{c2}(z,y)
/// with componentwise weights over the orthant, plus the plain split the
/// convex one implies, on the same samples. strict variants additionally
/// demand w_c(x,y) != theta per sampled parameter for x != y.
template <class Point>
AuditReport audit_convex_axioms(const ModularConeMetricFn<Point>& w, const Space<Point>& space,
                                long samples, std::uint64_t seed, double tol = 1e-9) {
    if (!w.eval) throw std::invalid_argument("audit_convex_axioms: metric has no evaluator");
    if (samples < 1) throw std::invalid_argument("audit_convex_axioms: samples must be >= 1");
    if (!w.cone.is_orthant())
        throw std::invalid_argument("audit_convex_axioms: componentwise weights need the orthant cone");
    AuditReport rep;
    rep.subject = "convex-modular-axioms";
    rep.seed = seed;
    rep.statistical = true;
    Rng rng(seed);

    CheckResult& ident = rep.check("identity-zero");
    CheckResult& distinct = rep.check("distinctness");
    CheckResult& sym = rep.check("symmetry");
    CheckResult& weights = rep.check("weights-sum-to-one");
    CheckResult& ctri = rep.check("triangle-convex");
    CheckResult& ptri = rep.check("triangle-plain-implied");
    CheckResult* strict_sep = w.cls == ModularClass::strict ? &rep.check("strict-distinctness") : nullptr;

    bool has_pair = !space.finite_kind() || space.points().size() >= 2;

    for (long k = 0; k < samples; ++k) {
        Point x = space.sample(rng);
        Point y = space.sample(rng);
        Point z = space.sample(rng);
        if (k % 8 == 3) z = y;
        if (k % 16 == 9) z = x;
        Vec c1 = sample_interior_point(w.cone, rng);
        Vec c2 = sample_interior_point(w.cone, rng);
        Vec s = c1 + c2;

        Vec wxx = w.eval(c1, x, x);
        ident.count(wxx.isZero(tol), wxx.lpNorm<Eigen::Infinity>(), [&] {
            return nlohmann::json{{"c", vec_json(c1)}, {"x", coords_json(x)}};
        });

        if (has_pair) {
            auto [a, b] = space.sample_distinct(rng);
            bool found = detail::find_separating_parameter(
                w.cone, rng, [&](const Vec& c) { return w.eval(c, a, b).isZero(tol); });
            distinct.count(found, 0.0, [&] {
                return nlohmann::json{{"x", coords_json(a)}, {"y", coords_json(b)}};
            });
            if (strict_sep) {
                Vec wab = w.eval(c1, a, b);
                strict_sep->count(!wab.isZero(tol), 0.0, [&] {
                    return nlohmann::json{{"c", vec_json(c1)}, {"x", coords_json(a)}, {"y", coords_json(b)}};
                });
            }
        }

        Vec wxy = w.eval(c1, x, y);
        Vec wyx = w.eval(c1, y, x);
        double asym = (wxy - wyx).lpNorm<Eigen::Infinity>();
        sym.count(asym <= tol, asym, [&] {
            return nlohmann::json{{"c", vec_json(c1)}, {"x", coords_json(x)}, {"y", coords_json(y)}};
        });

        Vec u1 = c1.cwiseQuotient(s), u2 = c2.cwiseQuotient(s);
        double wsum = (u1 + u2 - Vec::Ones(s.size())).lpNorm<Eigen::Infinity>();
        weights.count(wsum <= 1e-12, wsum, [&] {
            return nlohmann::json{{"c1", vec_json(c1)}, {"c2", vec_json(c2)}};
        });

        Vec lhs = w.eval(s, x, y);
        Vec wxz = w.eval(c1, x, z), wzy = w.eval(c2, z, y);
        Vec convex_rhs = u1.cwiseProduct(wxz) + u2.cwiseProduct(wzy);
        ctri.count(w.cone.partial_le(lhs, convex_rhs, tol), (lhs - convex_rhs).maxCoeff(), [&] {
            return nlohmann::json{{"c1", vec_json(c1)}, {"c2", vec_json(c2)},
                                  {"x", coords_json(x)}, {"y", coords_json(y)}, {"z", coords_json(z)},
                                  {"lhs", vec_json(lhs)}, {"rhs", vec_json(convex_rhs)}};
        });

        Vec plain_rhs = wxz + wzy;
        ptri.count(w.cone.partial_le(lhs, plain_rhs, tol), (lhs - plain_rhs).maxCoeff(), [&] {
            return nlohmann::json{{"c1", vec_json(c1)}, {"c2", vec_json(c2)},
                                  {"x", coords_json(x)}, {"y", coords_json(y)}, {"z", coords_json(z)}};
        });
    }
    return rep;
}

/// Real modular metric axioms over the sampled parameter range
/// lambda in (0, 4]: identity at x = x, separating-lambda distinctness,
/// symmetry, the triangle split (convex or plain), and monotone decrease in
/// lambda. Infinite values are legal; comparisons saturate.
template <class Point>
AuditReport audit_real_modular(const RealModularMetricFn<Point>& W, const Space<Point>& space,
                               long samples, bool convex, std::uint64_t seed, double tol = 1e-9) {
    if (!W.eval) throw std::invalid_argument("audit_real_modular: metric has no evaluator");
    if (samples < 1) throw std::invalid_argument("audit_real_modular: samples must be >= 1");
    AuditReport rep;
    rep.subject = convex ? "real-modular-axioms-convex" : "real-modular-axioms";
    rep.seed = seed;
    rep.statistical = true;
    Rng rng(seed);

    CheckResult& ident = rep.check("identity-zero");
    CheckResult& distinct = rep.check("distinctness");
    CheckResult& sym = rep.check("symmetry");
    CheckResult& tri = rep.check(convex ? "triangle-convex" : "triangle-split");
    CheckResult& lmono = rep.check("lambda-monotonicity");

    bool has_pair = !space.finite_kind() || space.points().size() >= 2;

    // saturating comparison lhs <= rhs + tol
    auto le = [tol](ExtReal lhs, ExtReal rhs) {
        if (rhs.is_infinity()) return true;
        if (lhs.is_infinity()) return false;
        return lhs.value() <= rhs.value() + tol;
    };
    auto gap = [](ExtReal lhs, ExtReal rhs) {
        if (rhs.is_infinity() || lhs.is_infinity()) return 1.0;
        return lhs.value() - rhs.value();
    };

    for (long k = 0; k < samples; ++k) {
        Point x = space.sample(rng);
        Point y = space.sample(rng);
        Point z = space.sample(rng);
        if (k % 8 == 3) z = y;
        if (k % 16 == 9) z = x;
        double l1 = rng.uniform(0.05, 2.0);
        double l2 = rng.uniform(0.05, 2.0);

        ExtReal wxx = W.eval(l1, x, x);
        ident.count(wxx.finite() && wxx.value() <= tol, wxx.value(), [&] {
            return nlohmann::json{{"lambda", l1}, {"x", coords_json(x)}};
        });

        if (has_pair) {
            auto [a, b] = space.sample_distinct(rng);
            bool found = false;
            for (int e = -8; e <= 8 && !found; ++e)
                found = W.eval(std::ldexp(1.0, e), a, b) > ExtReal(tol);
            distinct.count(found, 0.0, [&] {
                return nlohmann::json{{"x", coords_json(a)}, {"y", coords_json(b)}};
            });
        }

        ExtReal wxy = W.eval(l1, x, y), wyx = W.eval(l1, y, x);
        bool sym_ok = (wxy.is_infinity() && wyx.is_infinity()) ||
                      (wxy.finite() && wyx.finite() && std::abs(wxy.value() - wyx.value()) <= tol);
        sym.count(sym_ok, 1.0, [&] {
            return nlohmann::json{{"lambda", l1}, {"x", coords_json(x)}, {"y", coords_json(y)}};
        });

        ExtReal lhs = W.eval(l1 + l2, x, y);
        ExtReal xz = W.eval(l1, x, z), zy = W.eval(l2, z, y);
        ExtReal rhs = convex ? (l1 / (l1 + l2)) * xz + (l2 / (l1 + l2)) * zy : xz + zy;
        tri.count(le(lhs, rhs), gap(lhs, rhs), [&] {
            return nlohmann::json{{"lambda1", l1}, {"lambda2", l2},
                                  {"x", coords_json(x)}, {"y", coords_json(y)}, {"z", coords_json(z)},
                                  {"lhs", lhs.value()}, {"rhs", rhs.value()}};
        });

        ExtReal at_big = lhs;  // W at lambda1 + lambda2 > lambda1
        lmono.count(le(at_big, wxy), gap(at_big, wxy), [&] {
            return nlohmann::json{{"lambda_small", l1}, {"lambda_big", l1 + l2},
                                  {"x", coords_json(x)}, {"y", coords_json(y)}};
        });
    }
    return rep;
}

// -- membership reports -------------------------------------------------------

enum class ModularMembership { in_core, in_finiteness_domain, outside };

/// Window heuristic for the two modular point classes around a base point:
/// core membership wants W_lambda(x, x0) -> 0 as lambda grows, the wider
/// class only finiteness for some lambda. A finite grid can refute neither,
/// hence the heuristic flag stays set.
struct MembershipReport {
    ModularMembership verdict = ModularMembership::outside;
    std::vector<double> lambdas;
    std::vector<double> values;  // +inf encoded as the IEEE infinity
    bool heuristic = true;
};

template <class Point>
MembershipReport modular_space_membership(const RealModularMetricFn<Point>& W,
                                          const Point& x0, const Point& x,
                                          const std::vector<double>& lambda_grid,
                                          double tol = 1e-8) {
    if (lambda_grid.empty())
        throw std::invalid_argument("modular_space_membership: empty lambda grid");
    for (double l : lambda_grid)
        if (!(l > 0.0)) throw std::invalid_argument("modular_space_membership: lambda must be positive");
    std::vector<double> sorted = lambda_grid;
    std::sort(sorted.begin(), sorted.end());
    MembershipReport rep;
    rep.lambdas = sorted;
    bool any_finite = false;
    for (double l : sorted) {
        ExtReal v = W.eval(l, x, x0);
        rep.values.push_back(v.value());
        any_finite = any_finite || v.finite();
    }
    double last = rep.values.back();
    if (std::isfinite(last) && last <= tol)
        rep.verdict = ModularMembership::in_core;
    else if (any_finite)
        rep.verdict = ModularMembership::in_finiteness_domain;
    else
        rep.verdict = ModularMembership::outside;
    return rep;
}

}  // namespace mcm
