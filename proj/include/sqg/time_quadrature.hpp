#pragma once

#include <vector>

namespace sqg {

// Quadrature for int_0^infty t^{-1-s/2} g(t) dt with g(t) -> 0 like t as t -> 0
// and g bounded. The weights absorb the t^{-1-s/2} factor (assembled in log
// space, so no intermediate overflow near t = 0):
//   integral =~ sum_i w_i g(t_i) + tail_factor() * g_inf
// Split: (0, t0] via t = e^u composite Gauss panels, [t0, Tmax] geometric
// panels in t, (Tmax, inf) analytic tail assuming g =~ g_inf there.
struct TimeQuadrature {
    std::vector<double> nodes;    // t values, ascending
    std::vector<double> weights;  // include the t^{-1-s/2} measure factor
    double s = 1.0;
    double t0 = 1e-4;
    double t_max = 40.0;

    double tail_factor() const;  // int_Tmax^infty t^{-1-s/2} dt
};

// lambda_scale: largest rate present in g (controls the left truncation)
TimeQuadrature make_time_quadrature(double s, double lambda_scale, double t0 = 1e-4,
                                    double t_max = 40.0, double panel_ratio = 1.7,
                                    int points_per_panel = 32);

// same measure, but starting from a strictly positive t_min (no left log
// part); for integrands that vanish superexponentially below t_min.
TimeQuadrature make_time_quadrature_from(double s, double t_min, double t_max,
                                         double panel_ratio = 2.0, int points_per_panel = 24);

// c_s of the subordination identity  1 = c_s int_0^inf t^{-1-s/2}(1-e^{-t}) dt
double compute_cs(double s);

// the subordination weight  c_s int t^{-1-s/2}(1-e^{-lambda t}) dt  (=~ lambda^{s/2})
double subordination_weight(double lambda, double s, const TimeQuadrature& tq, double cs);

}  // namespace sqg
