#include "sqg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace sqg {

// Newton iteration on P_n, nodes from the Chebyshev initial guess.
Quadrature1D gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    Quadrature1D q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // one more polish step, then stop
                p0 = 1.0; p1 = 0.0;
                for (int k = 0; k < n; ++k) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
                }
                pp = n * (x * p0 - p1) / (x * x - 1.0);
                x -= p0 / pp;
                break;
            }
        }
        const double xm = 0.5 * (b + a);
        const double xl = 0.5 * (b - a);
        q.nodes[i] = xm - xl * x;
        q.nodes[n - 1 - i] = xm + xl * x;
        const double w = 2.0 * xl / ((1.0 - x * x) * pp * pp);
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    return q;
}

int trig_rule_points(int total_frequency) {
    if (total_frequency < 0) total_frequency = 0;
    return static_cast<int>(std::ceil(0.9 * total_frequency)) + 24;
}

QuadGrid::QuadGrid(int points_per_axis) : n_(points_per_axis) {
    Quadrature1D q = gauss_legendre(points_per_axis, 0.0, kPi);
    x_ = std::move(q.nodes);
    w_ = std::move(q.weights);
}

QuadGridPtr make_grid(int points_per_axis) {
    return std::make_shared<const QuadGrid>(points_per_axis);
}

double GridField::integrate() const {
    const int n = grid_->n();
    const auto& w = grid_->w();
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += w[j] * values_[static_cast<size_t>(i) * n + j];
        s += w[i] * row;
    }
    return s;
}

double integrate_product(const GridField& a, const GridField& b) {
    const int n = a.n();
    if (b.n() != n) throw std::invalid_argument("integrate_product: grid mismatch");
    const auto& w = a.grid().w();
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += w[j] * a.at(i, j) * b.at(i, j);
        s += w[i] * row;
    }
    return s;
}

double integrate_product(const GridField& a, const GridField& b, const GridField& c) {
    const int n = a.n();
    if (b.n() != n || c.n() != n) throw std::invalid_argument("integrate_product: grid mismatch");
    const auto& w = a.grid().w();
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += w[j] * a.at(i, j) * b.at(i, j) * c.at(i, j);
        s += w[i] * row;
    }
    return s;
}

}  // namespace sqg
