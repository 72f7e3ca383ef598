#pragma once

#include "sqg/quadrature.hpp"

namespace sqg {

// Smooth compactly supported product bump on (0,pi)^2:
//   chi(x,y) = b(x) b(y),  b(z) = exp(-1/(1-u^2)), u = (z-c)/rho, |u|<1.
// Analytic derivatives up to second order.
class TestFunction {
  public:
    TestFunction(double center_x = kPi / 2, double center_y = kPi / 2, double rho = kPi / 3,
                 double amplitude = 1.0);

    double rho() const { return rho_; }
    double amplitude() const { return amp_; }
    double center_x() const { return cx_; }
    double center_y() const { return cy_; }
    // distance from the support square to the boundary of (0,pi)^2
    double support_margin() const;

    double value(double x, double y) const;
    void gradient(double x, double y, double& dx, double& dy) const;
    // dxx, dxy, dyy
    void hessian(double x, double y, double& dxx, double& dxy, double& dyy) const;

    // W^{2,p}(Omega) norm by tensor quadrature (p finite)
    double w2p_norm(int p, const QuadGrid& grid) const;

    // 1D factor and its derivatives, exposed for tests
    static double b(double u);
    static double db(double u);   // d/du
    static double ddb(double u);  // d^2/du^2

  private:
    double cx_, cy_, rho_, amp_;
};

// Smooth time bump supported in (0, T): sigma(t) = b((2t - T)/T) with the same
// 1D profile; vanishes with all derivatives at 0 and T.
struct TimeBump {
    double T;
    double value(double t) const;
    double derivative(double t) const;
};

}  // namespace sqg
