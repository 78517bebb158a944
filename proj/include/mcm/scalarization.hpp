#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "mcm/cone.hpp"
#include "mcm/random.hpp"
#include "mcm/report.hpp"

namespace mcm {

/// Cone plus a fixed interior direction e; evaluates the scalarization
/// xi(y) = inf { r : y in r e - P }, the least multiple of e whose
/// translated cone shadow covers y.
///
/// For P = {y : A y >= 0} the infimum has the closed form
/// max_j (A y)_j / (A e)_j, since y <= r e on halfspace j iff
/// r (A e)_j >= (A y)_j and (A e)_j > 0 by interiority of e.
class ScalarizationContext {
public:
    ScalarizationContext(PolyCone cone, Vec e) : cone_(std::move(cone)), e_(std::move(e)) {
        require_dim(e_, cone_.dim(), "ScalarizationContext");
        if (!cone_.interior_contains(e_))
            throw std::invalid_argument("ScalarizationContext: direction e must be interior");
        Ae_ = cone_.halfspaces() * e_;
    }

    const PolyCone& cone() const { return cone_; }
    const Vec& e() const { return e_; }

    /// A e, strictly positive componentwise
    const Vec& row_gains() const { return Ae_; }

private:
    PolyCone cone_;
    Vec e_;
    Vec Ae_;
};

/// closed form: max_j (A y)_j / (A e)_j
inline double xi(const ScalarizationContext& ctx, const Vec& y) {
    require_dim(y, ctx.cone().dim(), "xi");
    Vec Ay = ctx.cone().halfspaces() * y;
    return (Ay.array() / ctx.row_gains().array()).maxCoeff();
}

/// |xi(y) - xi(y')| <= L |y - y'|_inf with L = max_j sum_i |A_ji| / (A e)_j
inline double xi_lipschitz_bound(const ScalarizationContext& ctx) {
    Vec rowsum = ctx.cone().halfspaces().cwiseAbs().rowwise().sum();
    return (rowsum.array() / ctx.row_gains().array()).maxCoeff();
}

/// Bisection evaluation of xi using only cone membership of r e - y, kept
/// deliberately independent of the closed form so the two routes can check
/// each other. The initial bracket +-B with
/// B = 1 + |y|_inf * max_j rowsum_j / (A e)_j encloses xi strictly.
inline double xi_oracle(const ScalarizationContext& ctx, const Vec& y, double tol = 1e-11) {
    require_dim(y, ctx.cone().dim(), "xi_oracle");
    if (!(tol > 0.0)) throw std::invalid_argument("xi_oracle: tolerance must be positive");
    const double B = 1.0 + y.lpNorm<Eigen::Infinity>() * xi_lipschitz_bound(ctx);
    auto member = [&](double r) { return ctx.cone().contains(r * ctx.e() - y); };
    double lo = -B, hi = B;
    if (!member(hi) || member(lo))
        throw std::runtime_error("xi_oracle: bracket failure, bound does not enclose the threshold");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (member(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Property audit of the scalarization on one cone/direction pair. Per
/// sample: threshold laws at r = xi +- eps (eps = 1e-6), positive
/// homogeneity, monotonicity along the cone order, and subadditivity, the
/// last three to absolute slack 1e-12. Moderate sampling boxes keep that
/// slack honest (values stay below ~1e3, where a few ulps are ~1e-13).
/// The strict threshold law describes the margin-0 interior; audit cones
/// with a positive interior margin will honestly record violations there.
inline AuditReport audit_scalarization_laws(const ScalarizationContext& ctx, long samples,
                                            std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("audit_scalarization_laws: samples must be >= 1");
    AuditReport rep;
    rep.subject = "scalarization-laws";
    rep.seed = seed;
    Rng rng(seed);
    const Eigen::Index m = ctx.cone().dim();
    const double eps = 1e-6, slack = 1e-12;

    auto box_sample = [&](double scale) {
        Vec y(m);
        for (Eigen::Index i = 0; i < m; ++i) y[i] = rng.uniform(-scale, scale);
        return y;
    };
    auto coords = [&](const Vec& v) {
        nlohmann::json a = nlohmann::json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
        return a;
    };

    CheckResult& member = rep.check("threshold-membership");
    CheckResult& interior = rep.check("threshold-interior");
    CheckResult& homog = rep.check("homogeneity");
    CheckResult& mono = rep.check("monotonicity");
    CheckResult& subadd = rep.check("subadditivity");

    for (long k = 0; k < samples; ++k) {
        Vec y = box_sample(10.0);
        double v = xi(ctx, y);

        // membership threshold: r past xi lands in the shadow, r short of it does not
        bool ok_member = ctx.cone().contains((v + eps) * ctx.e() - y) &&
                         !ctx.cone().contains((v - eps) * ctx.e() - y);
        member.count(ok_member, eps, [&] {
            return nlohmann::json{{"y", coords(y)}, {"xi", v}};
        });

        // strict threshold: the same split for the interior of the shadow
        bool ok_interior = ctx.cone().interior_contains((v + eps) * ctx.e() - y) &&
                           !ctx.cone().interior_contains((v - eps) * ctx.e() - y);
        interior.count(ok_interior, eps, [&] {
            return nlohmann::json{{"y", coords(y)}, {"xi", v}};
        });

        double t = (k % 32 == 0) ? 0.0 : rng.uniform(0.0, 3.0);
        double lhs = xi(ctx, t * y), rhs = t * v;
        homog.count(std::abs(lhs - rhs) <= slack, std::abs(lhs - rhs), [&] {
            return nlohmann::json{{"y", coords(y)}, {"t", t}, {"xi_ty", lhs}, {"t_xi_y", rhs}};
        });

        Vec p = sample_cone_element(ctx.cone(), rng, 5.0);
        double vy = xi(ctx, y + p);
        mono.count(v <= vy + slack, v - vy, [&] {
            return nlohmann::json{{"y", coords(y)}, {"p", coords(p)}, {"xi_y", v}, {"xi_y_plus_p", vy}};
        });

        Vec y2 = box_sample(10.0);
        double vsum = xi(ctx, y + y2), v2 = xi(ctx, y2);
        subadd.count(vsum <= v + v2 + slack, vsum - (v + v2), [&] {
            return nlohmann::json{{"y1", coords(y)}, {"y2", coords(y2)},
                                  {"xi_sum", vsum}, {"xi_y1", v}, {"xi_y2", v2}};
        });
    }
    return rep;
}

}  // namespace mcm
