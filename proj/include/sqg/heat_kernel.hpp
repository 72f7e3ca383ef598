#pragma once

#include <array>
#include <string>
#include <vector>

#include "sqg/eigenbasis.hpp"
#include "sqg/spectral.hpp"
#include "sqg/time_quadrature.hpp"

namespace sqg {

using Point = std::array<double, 2>;

// distance to the boundary of (0,pi)^2
double boundary_distance(const Point& x);

enum class KernelMethod { eigen_sum, image_series };

struct HeatKernelEval {
    double t = 0.0;
    KernelMethod method = KernelMethod::image_series;
    int truncation = 0;        // modes used / image range per axis
    double value = 0.0;        // H(x,y,t)
    Point grad_x{0.0, 0.0};    // nabla_x H
    Point grad_y{0.0, 0.0};    // nabla_y H
    bool truncation_warning = false;
};

// ---- 1D Dirichlet kernel on (0,pi) via the method of images ----------------
// h(a,b,t) = sum_n g(a-b+2 pi n, t) - g(a+b+2 pi n, t), g the free Gaussian.
// Image range chosen so the dropped tail is below 1e-17 of the Gaussian peak.
int image_range(double t);
double h1d(double a, double b, double t);
double h1d_da(double a, double b, double t);
// (d_a + d_b) h: the translation-invariant images cancel exactly, leaving
// -2 sum_n g'(a+b+2 pi n, t).
double h1d_dsym(double a, double b, double t);
// int_0^pi h(a,b,t) db, closed form via erf
double h1d_mass(double a, double t);

// ---- oracle -----------------------------------------------------------------
class HeatKernelOracle {
  public:
    // eigen_cap: largest basis size the eigen_sum method may build
    explicit HeatKernelOracle(int eigen_cap = 6000);

    HeatKernelEval kernel_eval(const Point& x, const Point& y, double t,
                               KernelMethod method) const;

    // sub-Markov mass int_Omega H(x,y,t) dy, tensor quadrature resolving sqrt(t)
    double mass_quadrature(const Point& x, double t) const;
    double mass_closed_form(const Point& x, double t) const;

    // sup over |x-y| <= d(x)/10 of |(grad_x + grad_y) H| from the image series,
    // sampled on a fixed polar set. Requires 0 < t <= d(x)^2.
    double cancellation_profile(const Point& x, double t) const;

    const EigenBasis& eigen_basis(double t) const;  // basis sized for time t

  private:
    int eigen_cap_;
    mutable BasisPtr cache_;
};

// e^{t Delta} f: coefficient-wise e^{-lambda_j t}; t = 0 returns f unchanged
SpectralField heat_apply(const SpectralField& f, double t);

// Lambda^s f via the subordination formula, integrating (f - e^{tDelta} f)
// over the time quadrature. Also reports the quadrature tail estimate.
struct SubordinationResult {
    SpectralField field;
    double tail_estimate = 0.0;  // bound on the neglected e^{-lambda t} tail
};
SubordinationResult frac_via_subordination(const SpectralField& f, double s);

// ---- bound measurements -------------------------------------------------------
// measured sup of H / (t^{-d/2} e^{-|x-y|^2/(K t)}) style ratios over a fixed
// deterministic sample set; the constants are outputs, never thresholds.
struct BoundReport {
    std::string quantity;
    double measured_upper = 0.0;  // sup of ratio against the upper envelope
    double measured_lower = 0.0;  // inf of ratio against the lower envelope
    double K_upper = 0.0;
    double k_lower = 0.0;
};

BoundReport measure_kernel_bounds(const HeatKernelOracle& oracle, double K_upper = 4.5,
                                  double k_lower = 3.5);
BoundReport measure_gradient_bound(const HeatKernelOracle& oracle, double K_upper = 4.5);

std::string bound_report_csv_header();

}  // namespace sqg
