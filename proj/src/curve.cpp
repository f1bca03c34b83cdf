#include "lus/curve.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace lus {

Curve::Curve(std::vector<double> coefficients, double x_min, double x_max)
    : coeffs_(std::move(coefficients)), x_min_(x_min), x_max_(x_max) {
    if (coeffs_.empty())
        raise(Errc::InvalidArgument, "curve needs at least one coefficient");
    if (!(x_min_ < x_max_))
        raise(Errc::InvalidArgument, "curve domain must satisfy x_min < x_max");
    for (double c : coeffs_) {
        if (!std::isfinite(c))
            raise(Errc::NonFiniteValue, "curve coefficient is non-finite");
    }
}

double Curve::eval(double x) const {
    const double t = normalize(x);
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * t + *it;
    return acc;
}

double Curve::deriv(double x) const {
    const double t = normalize(x);
    double acc = 0.0;
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 1; --k)
        acc = acc * t + coeffs_[static_cast<std::size_t>(k)] * k;
    return acc * 2.0 / (x_max_ - x_min_);
}

Curve Curve::rescaled(double sx, double sy) const {
    std::vector<double> c = coeffs_;
    for (double& v : c)
        v *= sy;
    return Curve(std::move(c), x_min_ * sx, x_max_ * sx);
}

namespace {

// Least squares via Householder QR on the (n x m) Vandermonde matrix in t.
// Returns the coefficient vector; a and b are modified in place.
std::vector<double> qr_solve(std::vector<std::vector<double>>& a, std::vector<double>& b, int m) {
    const int n = static_cast<int>(a.size());
    for (int k = 0; k < m; ++k) {
        double norm = 0.0;
        for (int i = k; i < n; ++i)
            norm = std::hypot(norm, a[i][k]);
        if (norm == 0.0)
            raise(Errc::InsufficientPoints, "rank-deficient polynomial fit");
        if (a[k][k] < 0.0)
            norm = -norm;
        for (int i = k; i < n; ++i)
            a[i][k] /= norm;
        a[k][k] += 1.0;
        for (int j = k + 1; j < m; ++j) {
            double s = 0.0;
            for (int i = k; i < n; ++i)
                s += a[i][k] * a[i][j];
            s = -s / a[k][k];
            for (int i = k; i < n; ++i)
                a[i][j] += s * a[i][k];
        }
        double s = 0.0;
        for (int i = k; i < n; ++i)
            s += a[i][k] * b[i];
        s = -s / a[k][k];
        for (int i = k; i < n; ++i)
            b[i] += s * a[i][k];
        a[k][k] = -norm; // R's diagonal; the reflector negates it
    }
    std::vector<double> x(static_cast<std::size_t>(m), 0.0);
    for (int k = m - 1; k >= 0; --k) {
        double s = b[k];
        for (int j = k + 1; j < m; ++j)
            s -= a[k][j] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(k)] = s / a[k][k];
    }
    return x;
}

} // namespace

Curve fit_polynomial(const std::vector<PointI>& points, int degree) {
    if (degree < 0)
        raise(Errc::InvalidArgument, "polynomial degree must be non-negative");
    std::set<int> xs;
    for (const PointI& p : points)
        xs.insert(p.x);
    const std::size_t needed = static_cast<std::size_t>(degree) + 1;
    if (xs.size() < needed || xs.size() < 2)
        raise(Errc::InsufficientPoints, "polynomial fit needs at least degree+1 distinct columns");

    const double x_min = *xs.begin();
    const double x_max = *xs.rbegin();
    Curve probe(std::vector<double>(needed, 0.0), x_min, x_max);

    const int n = static_cast<int>(points.size());
    const int m = degree + 1;
    std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(m), 0.0));
    std::vector<double> b(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const double t = probe.normalize(points[static_cast<std::size_t>(i)].x);
        double p = 1.0;
        for (int j = 0; j < m; ++j) {
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = p;
            p *= t;
        }
        b[static_cast<std::size_t>(i)] = points[static_cast<std::size_t>(i)].y;
    }
    std::vector<double> coeffs = qr_solve(a, b, m);
    return Curve(std::move(coeffs), x_min, x_max);
}

PiecewiseCurve extend_tangent(const Curve& curve, double extension) {
    if (!(extension > 10.0))
        raise(Errc::InvalidArgument, "tangent extension must exceed 10 pixels");
    return PiecewiseCurve{curve, curve.deriv(curve.x_min()), curve.deriv(curve.x_max()), extension};
}

} // namespace lus
