#include "sqg/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sqg {

SpectralField::SpectralField(BasisPtr basis, std::vector<double> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) > basis_->size())
        throw std::invalid_argument("SpectralField: coefficient vector longer than basis");
}

SpectralField SpectralField::zero(BasisPtr basis, int m) {
    return SpectralField(std::move(basis), std::vector<double>(static_cast<size_t>(m), 0.0));
}

SpectralField SpectralField::unit_mode(BasisPtr basis, int p, int q) {
    int j = basis->find(p, q);
    if (j < 0) throw std::invalid_argument("unit_mode: mode outside basis");
    std::vector<double> c(static_cast<size_t>(j) + 1, 0.0);
    c[static_cast<size_t>(j)] = 1.0;
    return SpectralField(std::move(basis), std::move(c));
}

bool SpectralField::all_finite() const {
    for (double c : coeffs_)
        if (!std::isfinite(c)) return false;
    return true;
}

std::string SpectralField::to_csv() const {
    std::string out = "# basis: square (0,pi)^2, M=" + std::to_string(basis_->size()) + "\n";
    out += "j,coeff\n";
    char buf[64];
    for (int j = 0; j < size(); ++j) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", j + 1, coeffs_[static_cast<size_t>(j)]);
        out += buf;
    }
    return out;
}

SpectralField frac_apply(const SpectralField& f, double s) {
    if (s < -2.0 || s > 2.0) throw std::invalid_argument("frac_apply: s outside [-2,2]");
    std::vector<double> c(f.coeffs());
    for (int j = 0; j < f.size(); ++j)
        c[static_cast<size_t>(j)] *= std::pow(f.basis().mode(j).lambda, 0.5 * s);
    return SpectralField(f.basis_ptr(), std::move(c));
}

double sobolev_norm(const SpectralField& f, double s) {
    if (s < -2.0 || s > 2.0) throw std::invalid_argument("sobolev_norm: s outside [-2,2]");
    double acc = 0.0;
    for (int j = 0; j < f.size(); ++j) {
        const double c = f[j];
        acc += std::pow(f.basis().mode(j).lambda, s) * c * c;
    }
    return std::sqrt(acc);
}

SpectralField project_Pm(const SpectralField& f, int m) {
    if (m > f.size()) throw std::invalid_argument("project_Pm: m exceeds coefficient length");
    std::vector<double> c(f.coeffs().begin(), f.coeffs().begin() + m);
    return SpectralField(f.basis_ptr(), std::move(c));
}

double inner(const SpectralField& a, const SpectralField& b) {
    const int n = std::min(a.size(), b.size());
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a[j] * b[j];
    return s;
}

GridField synthesize(const SpectralField& f, const QuadGridPtr& grid) {
    SineTable tab(f.basis(), *grid);
    return synthesize(f, grid, tab);
}

GridField synthesize(const SpectralField& f, const QuadGridPtr& grid, const SineTable& tab) {
    GridField out(grid);
    synthesize_kernel(f.basis(), f.coeffs(), tab, out);
    return out;
}

AnalyzeResult analyze(const GridField& g, const BasisPtr& basis, int M) {
    SineTable tab(*basis, g.grid());
    return analyze(g, basis, M, tab);
}

AnalyzeResult analyze(const GridField& g, const BasisPtr& basis, int M, const SineTable& tab) {
    if (M > basis->size()) throw std::invalid_argument("analyze: M exceeds basis size");
    AnalyzeResult r;
    std::vector<double> c(static_cast<size_t>(M));
    analyze_kernel(*basis, g, tab, c);
    r.field = SpectralField(basis, std::move(c));
    int band = 0;
    for (int j = 0; j < M; ++j)
        band = std::max({band, basis->mode(j).p, basis->mode(j).q});
    r.bandwidth_warning = g.n() < trig_rule_points(2 * band);
    return r;
}

double eval_at(const SpectralField& f, double x, double y) {
    double s = 0.0;
    for (int j = 0; j < f.size(); ++j)
        if (f[j] != 0.0) s += f[j] * f.basis().mode(j).eval(x, y);
    return s;
}

void eval_gradient_at(const SpectralField& f, double x, double y, double& dx, double& dy) {
    dx = dy = 0.0;
    for (int j = 0; j < f.size(); ++j) {
        if (f[j] == 0.0) continue;
        double gx, gy;
        f.basis().mode(j).gradient(x, y, gx, gy);
        dx += f[j] * gx;
        dy += f[j] * gy;
    }
}

VelocityField velocity_from_theta(const SpectralField& theta, const QuadGridPtr& grid) {
    // u = (-d_y, d_x) of psi, psi_j = lambda_j^{-1/2} theta_j, evaluated modewise
    const int n = grid->n();
    VelocityField v{GridField(grid), GridField(grid)};
    const auto& x = grid->x();
    const EigenBasis& basis = theta.basis();
    // per-axis tables for sin and cos
    const int fmax = basis.max_frequency();
    std::vector<double> sins(static_cast<size_t>(fmax) * n), coss(static_cast<size_t>(fmax) * n);
    for (int f = 1; f <= fmax; ++f)
        for (int i = 0; i < n; ++i) {
            sins[static_cast<size_t>(f - 1) * n + i] = std::sin(f * x[i]);
            coss[static_cast<size_t>(f - 1) * n + i] = std::cos(f * x[i]);
        }
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double ux = 0.0, uy = 0.0;
            for (int m = 0; m < theta.size(); ++m) {
                const double c = theta[m];
                if (c == 0.0) continue;
                const EigenMode& mode = basis.mode(m);
                const double psi = c / std::sqrt(mode.lambda);
                const double sp = sins[static_cast<size_t>(mode.p - 1) * n + i];
                const double cp = coss[static_cast<size_t>(mode.p - 1) * n + i];
                const double sq = sins[static_cast<size_t>(mode.q - 1) * n + j];
                const double cq = coss[static_cast<size_t>(mode.q - 1) * n + j];
                ux += -psi * (2.0 / kPi) * mode.q * sp * cq;
                uy += psi * (2.0 / kPi) * mode.p * cp * sq;
            }
            v.ux.at(i, j) = ux;
            v.uy.at(i, j) = uy;
        }
    }
    return v;
}

void velocity_at(const SpectralField& theta, double x, double y, double& ux, double& uy) {
    ux = uy = 0.0;
    for (int m = 0; m < theta.size(); ++m) {
        const double c = theta[m];
        if (c == 0.0) continue;
        const EigenMode& mode = theta.basis().mode(m);
        const double psi = c / std::sqrt(mode.lambda);
        ux += -psi * (2.0 / kPi) * mode.q * std::sin(mode.p * x) * std::cos(mode.q * y);
        uy += psi * (2.0 / kPi) * mode.p * std::cos(mode.p * x) * std::sin(mode.q * y);
    }
}

double divergence_sup_coeff(const SpectralField& theta) {
    // div u = d_x u_x + d_y u_y with u = grad^perp psi; modewise the two terms
    // cancel exactly: -psi pq [cos cos] + psi pq [cos cos]. Evaluate both sums
    // numerically on an oversampled grid and report the largest analyzed
    // coefficient as the round-off witness.
    const BasisPtr big = build_basis(4 * std::max(theta.size(), 1));
    QuadGridPtr grid = grid_for_products(*big, 2);
    const int n = grid->n();
    GridField div(grid);
    const auto& x = grid->x();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int m = 0; m < theta.size(); ++m) {
                const double c = theta[m];
                if (c == 0.0) continue;
                const EigenMode& mode = theta.basis().mode(m);
                const double psi = c / std::sqrt(mode.lambda);
                const double cc =
                    (2.0 / kPi) * std::cos(mode.p * x[i]) * std::cos(mode.q * x[j]);
                s += -psi * mode.q * mode.p * cc + psi * mode.p * mode.q * cc;
            }
            div.at(i, j) = s;
        }
    auto res = analyze(div, big, big->size());
    double sup = 0.0;
    for (double c : res.field.coeffs()) sup = std::max(sup, std::abs(c));
    return sup;
}

std::string grid_to_csv(const GridField& g) {
    std::string out = "x,y,value\n";
    char buf[128];
    const int n = g.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.grid().x()[i],
                          g.grid().x()[j], g.at(i, j));
            out += buf;
        }
    return out;
}

}  // namespace sqg
