#include "sqg/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqg {

TestFunction::TestFunction(double center_x, double center_y, double rho, double amplitude)
    : cx_(center_x), cy_(center_y), rho_(rho), amp_(amplitude) {
    if (rho <= 0.0) throw std::invalid_argument("TestFunction: rho must be positive");
    if (cx_ - rho_ <= 0.0 || cx_ + rho_ >= kPi || cy_ - rho_ <= 0.0 || cy_ + rho_ >= kPi)
        throw std::invalid_argument("TestFunction: support touches the boundary");
}

double TestFunction::support_margin() const {
    return std::min({cx_ - rho_, kPi - cx_ - rho_, cy_ - rho_, kPi - cy_ - rho_});
}

double TestFunction::b(double u) {
    const double d = 1.0 - u * u;
    if (d <= 0.0) return 0.0;
    return std::exp(-1.0 / d);
}

double TestFunction::db(double u) {
    const double d = 1.0 - u * u;
    if (d <= 0.0) return 0.0;
    return b(u) * (-2.0 * u) / (d * d);
}

double TestFunction::ddb(double u) {
    const double d = 1.0 - u * u;
    if (d <= 0.0) return 0.0;
    const double d2 = d * d;
    return b(u) * (4.0 * u * u / (d2 * d2) - 2.0 / d2 - 8.0 * u * u / (d2 * d));
}

double TestFunction::value(double x, double y) const {
    return amp_ * b((x - cx_) / rho_) * b((y - cy_) / rho_);
}

void TestFunction::gradient(double x, double y, double& dx, double& dy) const {
    const double u = (x - cx_) / rho_, v = (y - cy_) / rho_;
    dx = amp_ * db(u) * b(v) / rho_;
    dy = amp_ * b(u) * db(v) / rho_;
}

void TestFunction::hessian(double x, double y, double& dxx, double& dxy, double& dyy) const {
    const double u = (x - cx_) / rho_, v = (y - cy_) / rho_;
    dxx = amp_ * ddb(u) * b(v) / (rho_ * rho_);
    dxy = amp_ * db(u) * db(v) / (rho_ * rho_);
    dyy = amp_ * b(u) * ddb(v) / (rho_ * rho_);
}

double TestFunction::w2p_norm(int p, const QuadGrid& grid) const {
    if (p < 1) throw std::invalid_argument("w2p_norm: p must be >= 1");
    const int n = grid.n();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = grid.x()[i];
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            const double y = grid.x()[j];
            double dx, dy, dxx, dxy, dyy;
            gradient(x, y, dx, dy);
            hessian(x, y, dxx, dxy, dyy);
            double s = std::pow(std::abs(value(x, y)), p);
            s += std::pow(std::abs(dx), p) + std::pow(std::abs(dy), p);
            s += std::pow(std::abs(dxx), p) + std::pow(std::abs(dxy), p) +
                 std::pow(std::abs(dyy), p);
            row += grid.w()[j] * s;
        }
        acc += grid.w()[i] * row;
    }
    return std::pow(acc, 1.0 / p);
}

double TimeBump::value(double t) const {
    return TestFunction::b((2.0 * t - T) / T);
}

double TimeBump::derivative(double t) const {
    return TestFunction::db((2.0 * t - T) / T) * 2.0 / T;
}

}  // namespace sqg
