#include "sqg/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqg {

double boundary_distance(const Point& x) {
    return std::min(std::min(x[0], kPi - x[0]), std::min(x[1], kPi - x[1]));
}

int image_range(double t) {
    int N = 1;
    while (std::exp(-(kPi * (2.0 * N - 1.0)) * (kPi * (2.0 * N - 1.0)) / (4.0 * t)) > 1e-17) ++N;
    return N + 1;
}

namespace {
inline double gauss(double z, double t) {
    return std::exp(-z * z / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}
}  // namespace

double h1d(double a, double b, double t) {
    const int N = image_range(t);
    double s = 0.0;
    for (int n = -N; n <= N; ++n) {
        const double shift = 2.0 * kPi * n;
        s += gauss(a - b + shift, t) - gauss(a + b + shift, t);
    }
    return s;
}

double h1d_da(double a, double b, double t) {
    const int N = image_range(t);
    double s = 0.0;
    for (int n = -N; n <= N; ++n) {
        const double shift = 2.0 * kPi * n;
        const double zm = a - b + shift, zp = a + b + shift;
        s += -zm / (2.0 * t) * gauss(zm, t) + zp / (2.0 * t) * gauss(zp, t);
    }
    return s;
}

double h1d_dsym(double a, double b, double t) {
    const int N = image_range(t);
    double s = 0.0;
    for (int n = -N; n <= N; ++n) {
        const double zp = a + b + 2.0 * kPi * n;
        s += zp / t * gauss(zp, t);  // -2 g'(zp)
    }
    return s;
}

double h1d_mass(double a, double t) {
    const int N = image_range(t);
    const double r = std::sqrt(4.0 * t);
    double s = 0.0;
    for (int n = -N; n <= N; ++n) {
        const double shift = 2.0 * kPi * n;
        s += 0.5 * (std::erf((a + shift) / r) - std::erf((a - kPi + shift) / r));
        s -= 0.5 * (std::erf((a + kPi + shift) / r) - std::erf((a + shift) / r));
    }
    return s;
}

HeatKernelOracle::HeatKernelOracle(int eigen_cap) : eigen_cap_(eigen_cap) {}

const EigenBasis& HeatKernelOracle::eigen_basis(double t) const {
    // e^{-lambda t} < 1e-16 e^{-lambda_1 t} beyond the cut
    const double lambda_cut = 2.0 + 16.0 * std::log(10.0) / t;
    // Weyl count with margin
    int M = static_cast<int>(std::ceil(kPi / 4.0 * lambda_cut)) + 64;
    M = std::min(M, eigen_cap_);
    if (!cache_ || cache_->size() < M) cache_ = build_basis(M);
    return *cache_;
}

HeatKernelEval HeatKernelOracle::kernel_eval(const Point& x, const Point& y, double t,
                                             KernelMethod method) const {
    if (t <= 0.0) throw std::invalid_argument("kernel_eval: t must be positive");
    HeatKernelEval ev;
    ev.t = t;
    ev.method = method;
    if (method == KernelMethod::image_series) {
        const double h1 = h1d(x[0], y[0], t), h2 = h1d(x[1], y[1], t);
        ev.value = h1 * h2;
        const double d1 = h1d_da(x[0], y[0], t), d2 = h1d_da(x[1], y[1], t);
        ev.grad_x = {d1 * h2, h1 * d2};
        // by symmetry of images: d_b h(a,b) = dsym - d_a h
        const double b1 = h1d_dsym(x[0], y[0], t) - d1;
        const double b2 = h1d_dsym(x[1], y[1], t) - d2;
        ev.grad_y = {b1 * h2, h1 * b2};
        ev.truncation = image_range(t);
        return ev;
    }
    const EigenBasis& basis = eigen_basis(t);
    const double lambda_cut = 2.0 + 16.0 * std::log(10.0) / t;
    ev.truncation_warning = basis.mode(basis.size() - 1).lambda < lambda_cut;
    double v = 0.0, gx0 = 0.0, gx1 = 0.0, gy0 = 0.0, gy1 = 0.0;
    int used = 0;
    for (int j = 0; j < basis.size(); ++j) {
        const EigenMode& m = basis.mode(j);
        if (m.lambda > lambda_cut) continue;
        const double e = std::exp(-m.lambda * t);
        const double wx = m.eval(x[0], x[1]);
        const double wy = m.eval(y[0], y[1]);
        v += e * wx * wy;
        double dx0, dx1, dy0, dy1;
        m.gradient(x[0], x[1], dx0, dx1);
        m.gradient(y[0], y[1], dy0, dy1);
        gx0 += e * dx0 * wy;
        gx1 += e * dx1 * wy;
        gy0 += e * wx * dy0;
        gy1 += e * wx * dy1;
        ++used;
    }
    ev.value = v;
    ev.grad_x = {gx0, gx1};
    ev.grad_y = {gy0, gy1};
    ev.truncation = used;
    return ev;
}

double HeatKernelOracle::mass_quadrature(const Point& x, double t) const {
    // separable: int h(x0,y0) dy0 * int h(x1,y1) dy1, each by composite Gauss
    // with panels ~ 3 sqrt(t) wide
    const double width = std::max(3.0 * std::sqrt(t), kPi / 256.0);
    const int panels = static_cast<int>(std::ceil(kPi / width));
    Quadrature1D ref = gauss_legendre(16, 0.0, 1.0);
    double m[2];
    for (int axis = 0; axis < 2; ++axis) {
        double acc = 0.0;
        for (int pnl = 0; pnl < panels; ++pnl) {
            const double a = kPi * pnl / panels, b = kPi * (pnl + 1) / panels;
            for (int i = 0; i < 16; ++i)
                acc += (b - a) * ref.weights[i] * h1d(x[axis], a + (b - a) * ref.nodes[i], t);
        }
        m[axis] = acc;
    }
    return m[0] * m[1];
}

double HeatKernelOracle::mass_closed_form(const Point& x, double t) const {
    return h1d_mass(x[0], t) * h1d_mass(x[1], t);
}

double HeatKernelOracle::cancellation_profile(const Point& x, double t) const {
    const double d = boundary_distance(x);
    if (d <= 0.0) throw std::invalid_argument("cancellation_profile: x on the boundary");
    if (t > d * d) throw std::invalid_argument("cancellation_profile: requires t <= d(x)^2");
    const double r_max = d / 10.0;
    double sup = 0.0;
    for (int ir = 0; ir <= 8; ++ir) {
        const double r = r_max * ir / 8.0;
        const int nphi = ir == 0 ? 1 : 16;
        for (int ip = 0; ip < nphi; ++ip) {
            const double phi = 2.0 * kPi * ip / nphi;
            const Point y{x[0] + r * std::cos(phi), x[1] + r * std::sin(phi)};
            const double s1 = h1d_dsym(x[0], y[0], t) * h1d(x[1], y[1], t);
            const double s2 = h1d(x[0], y[0], t) * h1d_dsym(x[1], y[1], t);
            sup = std::max(sup, std::hypot(s1, s2));
        }
    }
    return sup;
}

SpectralField heat_apply(const SpectralField& f, double t) {
    if (t < 0.0) throw std::invalid_argument("heat_apply: t must be nonnegative");
    std::vector<double> c(f.coeffs());
    if (t > 0.0)
        for (int j = 0; j < f.size(); ++j)
            c[static_cast<size_t>(j)] *= std::exp(-f.basis().mode(j).lambda * t);
    return SpectralField(f.basis_ptr(), std::move(c));
}

SubordinationResult frac_via_subordination(const SpectralField& f, double s) {
    if (s <= 0.0 || s >= 2.0)
        throw std::invalid_argument("frac_via_subordination: s must be in (0,2)");
    double lambda_max = 1.0;
    for (int j = 0; j < f.size(); ++j)
        lambda_max = std::max(lambda_max, f.basis().mode(j).lambda);
    TimeQuadrature tq = make_time_quadrature(s, lambda_max);
    const double cs = compute_cs(s);
    std::vector<double> acc(f.coeffs().size(), 0.0);
    for (size_t i = 0; i < tq.nodes.size(); ++i) {
        const double t = tq.nodes[i];
        for (int j = 0; j < f.size(); ++j) {
            const double lam = f.basis().mode(j).lambda;
            acc[static_cast<size_t>(j)] += tq.weights[i] * (-std::expm1(-lam * t)) * f[j];
        }
    }
    const double tail = tq.tail_factor();
    for (int j = 0; j < f.size(); ++j) acc[static_cast<size_t>(j)] += tail * f[j];
    for (double& a : acc) a *= cs;
    SubordinationResult r{SpectralField(f.basis_ptr(), std::move(acc)), 0.0};
    // neglected part of the tail: int_Tmax^inf t^{-1-s/2} e^{-lambda t} dt <=
    // e^{-lambda_1 Tmax} * tail_factor
    r.tail_estimate = std::exp(-2.0 * tq.t_max) * tail * sobolev_norm(f, 0.0) * cs;
    return r;
}

BoundReport measure_kernel_bounds(const HeatKernelOracle& oracle, double K_upper,
                                  double k_lower) {
    BoundReport rep;
    rep.quantity = "H(x,y,t) two-sided Gaussian envelope";
    rep.K_upper = K_upper;
    rep.k_lower = k_lower;
    double sup = 0.0, inf = 1e300;
    const double ts[] = {0.05, 0.1, 0.3, 1.0};
    const double xs[] = {0.7, 1.2, kPi / 2, 2.3};
    for (double t : ts)
        for (double x0 : xs)
            for (double x1 : xs)
                for (double y0 : xs)
                    for (double y1 : xs) {
                        const Point x{x0, x1}, y{y0, y1};
                        const double H =
                            oracle.kernel_eval(x, y, t, KernelMethod::image_series).value;
                        const double r2 = (x0 - y0) * (x0 - y0) + (x1 - y1) * (x1 - y1);
                        const double up = std::exp(-r2 / (K_upper * t)) / t;
                        const double lo = std::exp(-r2 / (k_lower * t)) / t;
                        sup = std::max(sup, H / up);
                        // lower envelope only meaningful well inside the domain
                        // for times below d(x)^2
                        const double d = std::min(boundary_distance(x), boundary_distance(y));
                        if (t <= d * d) inf = std::min(inf, H / lo);
                    }
    rep.measured_upper = sup;
    rep.measured_lower = inf;
    return rep;
}

BoundReport measure_gradient_bound(const HeatKernelOracle& oracle, double K_upper) {
    BoundReport rep;
    rep.quantity = "|grad_x H| envelope t^{-1/2-d/2} exp(-|x-y|^2/(K t))";
    rep.K_upper = K_upper;
    double sup = 0.0;
    const double ts[] = {0.05, 0.1, 0.3, 1.0};
    const double xs[] = {0.7, 1.2, kPi / 2, 2.3};
    for (double t : ts)
        for (double x0 : xs)
            for (double x1 : xs)
                for (double y0 : xs)
                    for (double y1 : xs) {
                        const Point x{x0, x1}, y{y0, y1};
                        const auto ev = oracle.kernel_eval(x, y, t, KernelMethod::image_series);
                        const double g = std::hypot(ev.grad_x[0], ev.grad_x[1]);
                        const double r2 = (x0 - y0) * (x0 - y0) + (x1 - y1) * (x1 - y1);
                        const double up = std::exp(-r2 / (K_upper * t)) * std::pow(t, -1.5);
                        sup = std::max(sup, g / up);
                    }
    rep.measured_upper = sup;
    return rep;
}

std::string bound_report_csv_header() { return "quantity,x1,x2,t,measured,bound_form\n"; }

}  // namespace sqg
