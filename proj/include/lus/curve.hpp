#pragma once

#include <vector>

#include "lus/error.hpp"

namespace lus {

struct PointI {
    int x = 0;
    int y = 0;
    friend bool operator==(PointI a, PointI b) { return a.x == b.x && a.y == b.y; }
};

// Polynomial y(x) = sum c_k * t^k where t is the abscissa mapped affinely
// from [x_min, x_max] onto [-1, 1]. The normalization keeps degree-4 least
// squares well conditioned at widths of 150+ columns.
class Curve {
public:
    Curve() = default;
    Curve(std::vector<double> coefficients, double x_min, double x_max);

    double eval(double x) const;
    // dy/dx (chain rule through the abscissa normalization).
    double deriv(double x) const;

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }

    double normalize(double x) const { return (2.0 * x - (x_min_ + x_max_)) / (x_max_ - x_min_); }

    // Same curve in coordinates scaled by sx along columns and sy along rows.
    Curve rescaled(double sx, double sy) const;

private:
    std::vector<double> coeffs_{0.0};
    double x_min_ = 0.0;
    double x_max_ = 1.0;
};

inline double curve_eval(const Curve& c, double x) { return c.eval(x); }

// Polynomial on its domain, tangent lines beyond it. C1 at the joins.
struct PiecewiseCurve {
    Curve poly;
    double slope_lo = 0.0;
    double slope_hi = 0.0;
    double extension = 0.0; // tangent reach recorded past each endpoint

    double eval(double x) const {
        if (x < poly.x_min())
            return poly.eval(poly.x_min()) + slope_lo * (x - poly.x_min());
        if (x > poly.x_max())
            return poly.eval(poly.x_max()) + slope_hi * (x - poly.x_max());
        return poly.eval(x);
    }

    PiecewiseCurve rescaled(double sx, double sy) const {
        return PiecewiseCurve{poly.rescaled(sx, sy), slope_lo * sy / sx, slope_hi * sy / sx,
                              extension * sx};
    }
};

// Least-squares polynomial fit on the normalized basis (Householder QR).
// Needs at least degree+1 distinct x values and a non-degenerate domain.
Curve fit_polynomial(const std::vector<PointI>& points, int degree);

PiecewiseCurve extend_tangent(const Curve& curve, double extension);

} // namespace lus
