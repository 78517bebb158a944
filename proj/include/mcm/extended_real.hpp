#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcm {

/// Value in [0, +inf] with saturating arithmetic.
///
/// Conventions: finite overflow saturates to +inf; 0 * inf == 0 (the scale
/// factor 0 wins, matching the usual measure-theoretic convention); NaN and
/// negative values are rejected at the boundary so neither can propagate out
/// of a metric evaluation.
class ExtReal {
public:
    ExtReal() = default;

    ExtReal(double v) : v_(v) {  // implicit: doubles are the common currency
        if (std::isnan(v)) throw std::invalid_argument("ExtReal: NaN");
        if (v < 0.0) throw std::invalid_argument("ExtReal: negative value");
    }

    static ExtReal infinity() {
        ExtReal r;
        r.v_ = std::numeric_limits<double>::infinity();
        return r;
    }

    bool finite() const { return std::isfinite(v_); }
    bool is_infinity() const { return std::isinf(v_); }

    /// underlying double, +inf when infinite
    double value() const { return v_; }

    friend ExtReal operator+(ExtReal a, ExtReal b) {
        return ExtReal(a.v_ + b.v_);  // IEEE addition already saturates
    }

    /// scale by a finite nonnegative factor; 0 * inf == 0
    friend ExtReal operator*(double t, ExtReal a) {
        if (std::isnan(t) || t < 0.0 || std::isinf(t))
            throw std::invalid_argument("ExtReal: scale factor must be finite and nonnegative");
        if (t == 0.0) return ExtReal(0.0);
        return ExtReal(t * a.v_);
    }

    friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
    friend bool operator!=(ExtReal a, ExtReal b) { return a.v_ != b.v_; }
    friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
    friend bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
    friend bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
    friend bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }

    static ExtReal min(ExtReal a, ExtReal b) { return a.v_ < b.v_ ? a : b; }
    static ExtReal max(ExtReal a, ExtReal b) { return a.v_ < b.v_ ? b : a; }

private:
    double v_ = 0.0;
};

}  // namespace mcm
