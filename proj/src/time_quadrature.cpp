#include "sqg/time_quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "sqg/quadrature.hpp"

namespace sqg {

double TimeQuadrature::tail_factor() const {
    return (2.0 / s) * std::pow(t_max, -0.5 * s);
}

TimeQuadrature make_time_quadrature(double s, double lambda_scale, double t0, double t_max,
                                    double panel_ratio, int points_per_panel) {
    if (s <= 0.0 || s >= 2.0) throw std::invalid_argument("time quadrature: s must be in (0,2)");
    TimeQuadrature tq;
    tq.s = s;
    tq.t0 = t0;
    tq.t_max = t_max;
    // left part in u = log t: t^{-1-s/2} dt = e^{-u s/2} du, integrand scale
    // g(e^u) ~ lambda e^u, truncated where the product is below 1e-18
    const double lam = std::max(lambda_scale, 1.0);
    double u_min = std::log(t0) - (18.0 * std::log(10.0) + std::log(lam)) / (1.0 - 0.5 * s);
    // keep e^{-u s/2} representable; accuracy degrades only for s -> 2
    u_min = std::max(u_min, -680.0 / (1.0 + 0.5 * s));
    const double u_max = std::log(t0);
    const double width = 3.0;
    Quadrature1D ref = gauss_legendre(24, 0.0, 1.0);
    for (double a = u_min; a < u_max; a += width) {
        const double b = std::min(a + width, u_max);
        for (int i = 0; i < 24; ++i) {
            const double u = a + (b - a) * ref.nodes[i];
            tq.nodes.push_back(std::exp(u));
            tq.weights.push_back((b - a) * ref.weights[i] * std::exp(-0.5 * s * u));
        }
    }
    // middle: geometric panels in t
    Quadrature1D refm = gauss_legendre(points_per_panel, 0.0, 1.0);
    for (double a = t0; a < t_max;) {
        const double b = std::min(a * panel_ratio, t_max);
        for (int i = 0; i < points_per_panel; ++i) {
            const double t = a + (b - a) * refm.nodes[i];
            tq.nodes.push_back(t);
            tq.weights.push_back((b - a) * refm.weights[i] * std::pow(t, -1.0 - 0.5 * s));
        }
        a = b;
    }
    return tq;
}

TimeQuadrature make_time_quadrature_from(double s, double t_min, double t_max,
                                         double panel_ratio, int points_per_panel) {
    // s here is just the measure exponent; integrands supply their own decay
    if (s <= 0.0 || s >= 6.0) throw std::invalid_argument("time quadrature: s must be in (0,6)");
    if (t_min <= 0.0 || t_min >= t_max)
        throw std::invalid_argument("time quadrature: need 0 < t_min < t_max");
    TimeQuadrature tq;
    tq.s = s;
    tq.t0 = t_min;
    tq.t_max = t_max;
    Quadrature1D ref = gauss_legendre(points_per_panel, 0.0, 1.0);
    for (double a = t_min; a < t_max;) {
        const double b = std::min(a * panel_ratio, t_max);
        for (int i = 0; i < points_per_panel; ++i) {
            const double t = a + (b - a) * ref.nodes[i];
            tq.nodes.push_back(t);
            tq.weights.push_back((b - a) * ref.weights[i] * std::pow(t, -1.0 - 0.5 * s));
        }
        a = b;
    }
    return tq;
}

namespace {
double subordination_integral(double lambda, const TimeQuadrature& tq) {
    double acc = 0.0;
    for (size_t i = 0; i < tq.nodes.size(); ++i)
        acc += tq.weights[i] * (-std::expm1(-lambda * tq.nodes[i]));
    return acc + tq.tail_factor();
}
}  // namespace

double compute_cs(double s) {
    if (s <= 0.0 || s >= 2.0) throw std::invalid_argument("compute_cs: s must be in (0,2)");
    TimeQuadrature tq = make_time_quadrature(s, 1.0);
    return 1.0 / subordination_integral(1.0, tq);
}

double subordination_weight(double lambda, double s, const TimeQuadrature& tq, double cs) {
    if (tq.s != s) throw std::invalid_argument("subordination_weight: quadrature built for a different s");
    return cs * subordination_integral(lambda, tq);
}

}  // namespace sqg
