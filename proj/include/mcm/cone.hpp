#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mcm/random.hpp"

namespace mcm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline void require_dim(const Vec& y, Eigen::Index m, const char* who) {
    if (y.size() != m)
        throw std::invalid_argument(std::string(who) + ": expected dimension " +
                                    std::to_string(m) + ", got " + std::to_string(y.size()));
}

/// Closed convex pointed cone P = { y : A y >= 0 } in R^m with nonempty
/// interior, ordering the space by x <= y iff y - x in P.
///
/// Pointedness (P ∩ -P = {0}) is certified at construction by a full column
/// rank check on A (rank threshold 1e-10, relative). The interior point is
/// supplied by the caller and verified: A * slater must be strictly positive
/// beyond the interior margin. interior_margin shrinks the strict predicates
/// only; the closed predicate `contains` ignores it.
class PolyCone {
public:
    PolyCone(Mat halfspaces, Vec slater_point, double interior_margin = 0.0)
        : A_(std::move(halfspaces)), slater_(std::move(slater_point)), margin_(interior_margin) {
        if (A_.rows() < 1 || A_.cols() < 1)
            throw std::invalid_argument("PolyCone: halfspace matrix must be nonempty");
        if (!A_.allFinite() || !slater_.allFinite())
            throw std::invalid_argument("PolyCone: non-finite input");
        if (!(margin_ >= 0.0) || std::isinf(margin_))
            throw std::invalid_argument("PolyCone: interior margin must be finite and >= 0");
        require_dim(slater_, A_.cols(), "PolyCone slater point");

        Eigen::ColPivHouseholderQR<Mat> qr(A_);
        qr.setThreshold(1e-10);
        if (qr.rank() < A_.cols())
            throw std::invalid_argument("PolyCone: halfspace matrix is column rank deficient, cone is not pointed");

        if (!((A_ * slater_).array() > margin_).all())
            throw std::invalid_argument("PolyCone: slater point is not interior");

        orthant_ = A_.rows() == A_.cols() && A_.isIdentity(0.0);
    }

    /// nonnegative orthant of R^m with slater point (1,...,1)
    static PolyCone orthant(Eigen::Index m) {
        return PolyCone(Mat::Identity(m, m), Vec::Ones(m));
    }

    Eigen::Index dim() const { return A_.cols(); }
    Eigen::Index facets() const { return A_.rows(); }
    const Mat& halfspaces() const { return A_; }
    const Vec& slater() const { return slater_; }
    double interior_margin() const { return margin_; }
    bool is_orthant() const { return orthant_; }

    /// y in P, up to slack tol on each halfspace
    bool contains(const Vec& y, double tol = 0.0) const {
        require_dim(y, dim(), "PolyCone::contains");
        return ((A_ * y).array() >= -tol).all();
    }

    /// y in int P, i.e. every halfspace strictly beyond the margin
    bool interior_contains(const Vec& y) const {
        require_dim(y, dim(), "PolyCone::interior_contains");
        return ((A_ * y).array() > margin_).all();
    }

    /// a <= b in the cone order
    bool partial_le(const Vec& a, const Vec& b, double tol = 0.0) const {
        require_dim(a, dim(), "PolyCone::partial_le");
        return contains(b - a, tol);
    }

    /// a <= b and a != b (exact coefficient comparison)
    bool strict_lt(const Vec& a, const Vec& b) const {
        return partial_le(a, b) && !(a - b).isZero(0.0);
    }

    /// a << b: b - a in int P
    bool way_below(const Vec& a, const Vec& b) const {
        require_dim(a, dim(), "PolyCone::way_below");
        return interior_contains(b - a);
    }

private:
    Mat A_;
    Vec slater_;
    double margin_;
    bool orthant_ = false;
};

/// Certificate produced by the witness searches, so callers can re-verify the
/// claimed relation independently of the search that found it.
struct OrderWitness {
    enum class Kind { between, scale };
    Kind kind = Kind::between;
    Vec vec;          // kind == between: the interior point below both inputs
    long factor = 0;  // kind == scale: the least multiplier
};

/// Interior c with c << c1 and c << c2, found by halving along the Slater
/// direction. Both inputs must be interior; then small positive multiples of
/// the Slater point qualify, so the loop terminates long before underflow.
inline OrderWitness witness_between(const PolyCone& P, const Vec& c1, const Vec& c2) {
    if (!P.interior_contains(c1) || !P.interior_contains(c2))
        throw std::invalid_argument("witness_between: inputs must be interior");
    const Vec& e = P.slater();
    double t = 1.0;
    for (int i = 0; i < 2000; ++i) {
        Vec c = t * e;
        if (P.interior_contains(c) && P.way_below(c, c1) && P.way_below(c, c2))
            return OrderWitness{OrderWitness::Kind::between, c, 0};
        t *= 0.5;
    }
    throw std::runtime_error("witness_between: no halving scale works (positive interior margin can make the feasible window empty)");
}

/// Least n >= 1 with a << n c, by linear scan. Terminates for interior c and
/// any a; the cap guards callers that pass a barely-interior c whose
/// multiples climb too slowly.
inline OrderWitness witness_scale(const PolyCone& P, const Vec& a, const Vec& c,
                                  long cap = 1000000) {
    if (!P.contains(a))
        throw std::invalid_argument("witness_scale: a must lie in the cone");
    if (!P.interior_contains(c))
        throw std::invalid_argument("witness_scale: c must be interior");
    for (long n = 1; n <= cap; ++n) {
        if (P.way_below(a, static_cast<double>(n) * c))
            return OrderWitness{OrderWitness::Kind::scale, Vec(), n};
    }
    throw std::runtime_error("witness_scale: iteration cap exceeded (c is interior only within tolerance)");
}

/// Re-verify a witness against the relation it certifies: between(c1,c2) or
/// scale(a,c). Lets tests check search results without trusting the search.
inline bool verify_witness(const PolyCone& P, const OrderWitness& w, const Vec& lhs,
                           const Vec& rhs) {
    switch (w.kind) {
        case OrderWitness::Kind::between:
            return P.interior_contains(w.vec) && P.way_below(w.vec, lhs) && P.way_below(w.vec, rhs);
        case OrderWitness::Kind::scale:
            return w.factor >= 1 && P.way_below(lhs, static_cast<double>(w.factor) * rhs);
    }
    return false;
}

/// Random element of P: a box sample pushed along the Slater direction just
/// far enough to clear every violated halfspace (plus slack, so float fuzz
/// cannot drop it back onto the boundary).
inline Vec sample_cone_element(const PolyCone& P, Rng& rng, double scale = 1.0) {
    const Eigen::Index m = P.dim();
    Vec z(m);
    for (Eigen::Index i = 0; i < m; ++i) z[i] = rng.uniform(-scale, scale);
    Vec Az = P.halfspaces() * z;
    Vec Ae = P.halfspaces() * P.slater();  // strictly positive by construction
    double s = 0.0;
    for (Eigen::Index j = 0; j < Az.size(); ++j)
        s = std::max(s, -Az[j] / Ae[j]);
    if (s > 0.0) s += 1e-9 * (1.0 + s);
    return z + s * P.slater();
}

/// Random interior point: a scaled Slater point, perturbed when the
/// perturbation stays interior. One try plus fallback keeps it deterministic.
inline Vec sample_interior_point(const PolyCone& P, Rng& rng, double lo = 0.3, double hi = 3.0) {
    double t = rng.uniform(lo, hi);
    Vec base = t * P.slater();
    Vec cand = base;
    for (Eigen::Index i = 0; i < P.dim(); ++i) cand[i] += rng.uniform(-0.3 * t, 0.3 * t);
    return P.interior_contains(cand) ? cand : base;
}

struct NormalConstantEstimate {
    double value = 1.0;
    bool exact = false;  // true only where the constant is known in closed form
    long samples = 0;
};

/// Normality constant K = sup { |a|_inf / |b|_inf : theta <= a <= b, b != theta }.
/// Exactly 1 for the orthant under the sup norm. For other cones this returns
/// a seeded sampled lower bound, seeded with the pair a = b = slater so the
/// estimate never drops below 1.
inline NormalConstantEstimate normal_constant(const PolyCone& P, long samples = 10000,
                                              std::uint64_t seed = 0x5eed) {
    if (P.is_orthant()) return {1.0, true, 0};
    Rng rng(seed);
    double best = 1.0;  // a = b = slater
    for (long k = 0; k < samples; ++k) {
        Vec a = sample_cone_element(P, rng);
        Vec b = a + sample_cone_element(P, rng);
        double nb = b.lpNorm<Eigen::Infinity>();
        if (nb > 1e-12) best = std::max(best, a.lpNorm<Eigen::Infinity>() / nb);
    }
    return {best, false, samples};
}

/// Pointwise reciprocal 1/f, the inverse of y -> f .* y. Only the orthant
/// order makes the componentwise product order-compatible, and interior f
/// keeps every component strictly positive.
inline Vec pointwise_invert(const Vec& f, const PolyCone& P) {
    if (!P.is_orthant())
        throw std::invalid_argument("pointwise_invert: requires the orthant cone");
    require_dim(f, P.dim(), "pointwise_invert");
    if (!P.interior_contains(f))
        throw std::invalid_argument("pointwise_invert: f must be interior (strictly positive)");
    return f.cwiseInverse();
}

}  // namespace mcm
