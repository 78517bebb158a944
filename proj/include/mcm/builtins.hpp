#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcm/fixed_point.hpp"
#include "mcm/modular.hpp"
#include "mcm/two_segment.hpp"

// Named fixtures shared by the command line tool and the test suite. Some
// are deliberately defective (squared "metric", increasing weight, identity
// "contraction"); the audits are expected to catch exactly those.

namespace mcm::builtins {

/// Cone collection for scalarization agreement sweeps: the orthant plus
/// three polyhedral shapes (wedge, acute diamond, 3D with a mixed-sign
/// facet). Row gains stay moderate so 1e-12 absolute comparisons are honest.
inline std::vector<PolyCone> audit_cones() {
    std::vector<PolyCone> cones;
    cones.push_back(PolyCone::orthant(2));

    Mat wedge(2, 2);
    wedge << 1, 0, 1, 1;
    cones.push_back(PolyCone(wedge, (Vec(2) << 1.0, 0.1).finished()));

    Mat diamond(2, 2);
    diamond << 2, -1, -1, 2;
    cones.push_back(PolyCone(diamond, (Vec(2) << 1.0, 1.0).finished()));

    Mat prism(4, 3);
    prism << 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, -1;
    cones.push_back(PolyCone(prism, (Vec(3) << 1.0, 1.0, 0.5).finished()));
    return cones;
}

/// |x - y| replicated to every coordinate, over the orthant of R^m
inline ConeMetricFn<double> abs_metric(Eigen::Index m = 2) {
    return ConeMetricFn<double>{
        PolyCone::orthant(m),
        [m](double x, double y) { return Vec(std::abs(x - y) * Vec::Ones(m)); }};
}

/// |x - y|^2: breaks the triangle axiom, kept as a negative fixture
inline ConeMetricFn<double> squared_metric(Eigen::Index m = 2) {
    return ConeMetricFn<double>{PolyCone::orthant(m), [m](double x, double y) {
                                    double t = x - y;
                                    return Vec(t * t * Vec::Ones(m));
                                }};
}

inline Space<double> interval_space(double lo = -5.0, double hi = 5.0) {
    if (!(lo < hi)) throw std::invalid_argument("interval_space: need lo < hi");
    return Space<double>::region([lo, hi](double x) { return x >= lo && x <= hi; },
                                 [lo, hi](Rng& rng) { return rng.uniform(lo, hi); });
}

inline Space<double> grid_space(double lo, double hi, long points) {
    if (!(lo < hi) || points < 2) throw std::invalid_argument("grid_space: need lo < hi and >= 2 points");
    std::vector<double> pts;
    for (long i = 0; i < points; ++i)
        pts.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
    return Space<double>::finite(std::move(pts));
}

/// w_c = d / xi_e(c) with e the Slater direction: the default decreasing weight
inline ModularConeMetricFn<double> scaled_cone_metric(Eigen::Index m = 2) {
    return from_cone_metric(abs_metric(m));
}

/// weight grows with c: violates c-monotone decrease and the triangle split
inline ModularConeMetricFn<double> broken_phi(Eigen::Index m = 2) {
    ConeMetricFn<double> d = abs_metric(m);
    auto ctx = std::make_shared<ScalarizationContext>(d.cone, d.cone.slater());
    return from_cone_metric(d, [ctx](const Vec& c) { return xi(*ctx, c); });
}

/// w_c = d / c componentwise over the orthant: the convex fixture
inline ModularConeMetricFn<double> inverse_parameter(Eigen::Index m = 2) {
    return convex_from_cone_metric(abs_metric(m));
}

/// scalarized plain fixture along the Slater direction
inline RealModularMetricFn<double> scalarized(Eigen::Index m = 2) {
    ModularConeMetricFn<double> w = scaled_cone_metric(m);
    return scalarize(w, w.cone.slater());
}

/// scalarized convex fixture along (1,...,1); keeps the convex flag
inline RealModularMetricFn<double> scalarized_unit(Eigen::Index m = 2) {
    ModularConeMetricFn<double> w = inverse_parameter(m);
    return scalarize(w, Vec(Vec::Ones(m)));
}

/// T x = x/2 + 1 on the line: fixed point 2, contraction at modulus 3/4
/// (any modulus in [1/2, 1) passes; 3/4 is the audited claim)
inline ContractionSpec<double> half_shift(Eigen::Index m = 2) {
    ContractionSpec<double> s;
    s.map = [](double x) { return 0.5 * x + 1.0; };
    s.k = 0.75;
    s.c0 = Vec::Ones(m);
    return s;
}

/// identity map with a fraudulent contraction claim: the audit must fail it
inline ContractionSpec<double> identity_map(Eigen::Index m = 2) {
    ContractionSpec<double> s;
    s.map = [](double x) { return x; };
    s.k = 0.75;
    s.c0 = Vec::Ones(m);
    return s;
}

/// the two-segment map restricted to X, for orbit runs that must respect X
inline ContractionSpec<twoseg::SegPoint> two_segment_map() {
    ContractionSpec<twoseg::SegPoint> s;
    s.map = [](const twoseg::SegPoint& p) { return twoseg::seg_map_restricted(p); };
    s.k = 0.75;
    s.c0 = Vec::Ones(2);
    return s;
}

}  // namespace mcm::builtins
