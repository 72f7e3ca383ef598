#include "sqg/commutator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace sqg {

namespace {
constexpr double kNorm = 2.0 / kPi;

GridField sample(const TestFunction& chi, const QuadGridPtr& grid, int deriv) {
    // deriv: 0 value, 1 d_x, 2 d_y
    GridField out(grid);
    const int n = grid->n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = grid->x()[i], y = grid->x()[j];
            if (deriv == 0) {
                out.at(i, j) = chi.value(x, y);
            } else {
                double dx, dy;
                chi.gradient(x, y, dx, dy);
                out.at(i, j) = deriv == 1 ? dx : dy;
            }
        }
    return out;
}

double tail_fraction_last_decile(const SpectralField& f) {
    const int M = f.size();
    const int start = M - std::max(1, M / 10);
    double tail = 0.0, tot = 0.0;
    for (int j = 0; j < M; ++j) {
        const double c2 = f[j] * f[j];
        tot += c2;
        if (j >= start) tail += c2;
    }
    return tot > 0.0 ? std::sqrt(tail / tot) : 0.0;
}
}  // namespace

std::string report_csv_header() { return "tag,input_id,M,measured,normalizer,ratio\n"; }

std::string report_csv_row(const CommutatorReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%s,%d,%.17g,%.17g,%.17g\n", r.tag.c_str(),
                  r.input_id.c_str(), r.M, r.measured, r.normalizer, r.ratio);
    return buf;
}

int lab_grid_points_identity(const EigenBasis& oversampled) {
    return trig_rule_points(2 * oversampled.max_frequency()) + 3 * oversampled.size();
}

int lab_grid_points_norms(const EigenBasis& oversampled) {
    return trig_rule_points(2 * oversampled.max_frequency()) + 256;
}

LambdaChiResult commutator_lambda_chi(const TestFunction& chi, const SpectralField& psi,
                                      int M, int p_bump_norm) {
    if (4 * psi.size() > M)
        throw std::invalid_argument("commutator_lambda_chi: psi must be band-limited at m <= M/4");
    BasisPtr big = build_basis(M);
    QuadGridPtr grid = make_grid(lab_grid_points_norms(*big));
    SineTable tab(*big, *grid);

    // re-express psi in the oversampled basis (same modes, longer vector)
    std::vector<double> cpsi(static_cast<size_t>(M), 0.0);
    for (int j = 0; j < psi.size(); ++j) {
        const EigenMode& m = psi.basis().mode(j);
        const int slot = big->find(m.p, m.q);
        if (slot < 0) throw std::logic_error("oversampled basis misses a psi mode");
        cpsi[static_cast<size_t>(slot)] = psi[j];
    }
    SpectralField psi_big(big, std::move(cpsi));

    GridField chig = sample(chi, grid, 0);
    GridField psig = synthesize(psi_big, grid, tab);
    GridField lpsig = synthesize(frac_apply(psi_big, 1.0), grid, tab);

    GridField chipsi(grid), chilpsi(grid);
    const int n = grid->n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            chipsi.at(i, j) = chig.at(i, j) * psig.at(i, j);
            chilpsi.at(i, j) = chig.at(i, j) * lpsig.at(i, j);
        }
    SpectralField a = analyze(chipsi, big, M, tab).field;
    SpectralField b = analyze(chilpsi, big, M, tab).field;
    std::vector<double> com(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j)
        com[static_cast<size_t>(j)] = std::sqrt(big->mode(j).lambda) * a[j] - b[j];
    SpectralField commutator(big, std::move(com));

    LambdaChiResult res{commutator, {}};
    res.report.tag = "lambda_chi";
    char id[64];
    std::snprintf(id, sizeof id, "psi_m%d_rho%.3f", psi.size(), chi.rho());
    res.report.input_id = id;
    res.report.M = M;
    res.report.measured = sobolev_norm(commutator, 0.5);
    res.report.normalizer = chi.w2p_norm(p_bump_norm, *grid) * sobolev_norm(psi, 0.5);
    res.report.ratio = res.report.measured / res.report.normalizer;
    res.report.tail_fraction = tail_fraction_last_decile(a);
    res.report.tail_warning = res.report.tail_fraction > 1e-8;
    return res;
}

double lp_norm(const SpectralField& psi, double p_exponent) {
    if (std::isinf(p_exponent)) {
        // dense uniform sampling; accurate to O((pi/N)^2) near smooth maxima
        double sup = 0.0;
        const int N = 801;
        for (int i = 1; i < N; ++i)
            for (int j = 1; j < N; ++j)
                sup = std::max(sup, std::abs(eval_at(psi, kPi * i / N, kPi * j / N)));
        return sup;
    }
    if (p_exponent < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1 or inf");
    QuadGridPtr grid = grid_for_products(psi.basis(), 4);
    GridField g = synthesize(psi, grid);
    const int n = grid->n();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j)
            row += grid->w()[j] * std::pow(std::abs(g.at(i, j)), p_exponent);
        acc += grid->w()[i] * row;
    }
    return std::pow(acc, 1.0 / p_exponent);
}

namespace {

// 1D integrals int K(y) sin(f y) dy for K in {h1d_dsym(xa,.), h1d(xa,.)},
// composite Gauss with panels resolving sqrt(t)
struct AxisIntegrals {
    std::vector<double> IA;  // indexed by frequency slot
    std::vector<double> IB;
};

AxisIntegrals axis_integrals(double xa, double t, const std::vector<int>& freqs) {
    const double width = std::max(3.0 * std::sqrt(t), kPi / 420.0);
    const int panels = static_cast<int>(std::ceil(kPi / width));
    static thread_local Quadrature1D ref = gauss_legendre(12, 0.0, 1.0);
    AxisIntegrals out;
    out.IA.assign(freqs.size(), 0.0);
    out.IB.assign(freqs.size(), 0.0);
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double a = kPi * pnl / panels, b = kPi * (pnl + 1) / panels;
        for (int i = 0; i < 12; ++i) {
            const double y = a + (b - a) * ref.nodes[i];
            const double w = (b - a) * ref.weights[i];
            const double A = h1d_dsym(xa, y, t);
            const double B = h1d(xa, y, t);
            for (size_t f = 0; f < freqs.size(); ++f) {
                const double sf = std::sin(freqs[f] * y);
                out.IA[f] += w * A * sf;
                out.IB[f] += w * B * sf;
            }
        }
    }
    return out;
}

}  // namespace

std::vector<FracGradPoint> commutator_frac_grad(const SpectralField& psi, double s,
                                                const std::vector<Point>& points,
                                                double p_exponent) {
    if (s <= 0.0 || s >= 2.0)
        throw std::invalid_argument("commutator_frac_grad: s must be in (0,2)");
    for (const Point& x : points)
        if (boundary_distance(x) <= 0.0)
            throw std::invalid_argument("commutator_frac_grad: points must be interior");

    const double cs = compute_cs(s);
    const double psi_lp = lp_norm(psi, p_exponent);
    const double dp = std::isinf(p_exponent) ? 0.0 : 2.0 / p_exponent;

    // distinct frequencies per axis
    std::set<int> pset, qset;
    for (int j = 0; j < psi.size(); ++j) {
        if (psi[j] == 0.0) continue;
        pset.insert(psi.basis().mode(j).p);
        qset.insert(psi.basis().mode(j).q);
    }
    std::vector<int> pf(pset.begin(), pset.end()), qf(qset.begin(), qset.end());

    std::vector<FracGradPoint> out(points.size());
#pragma omp parallel for schedule(dynamic)
    for (size_t ip = 0; ip < points.size(); ++ip) {
        const Point x = points[ip];
        const double d = boundary_distance(x);
        TimeQuadrature tq = make_time_quadrature_from(s, d * d / 100.0, 40.0);
        double cx = 0.0, cy = 0.0;
        for (size_t it = 0; it < tq.nodes.size(); ++it) {
            const double t = tq.nodes[it];
            AxisIntegrals ax0 = axis_integrals(x[0], t, pf);
            AxisIntegrals ax1 = axis_integrals(x[1], t, qf);
            double sx = 0.0, sy = 0.0;
            for (int j = 0; j < psi.size(); ++j) {
                const double c = psi[j];
                if (c == 0.0) continue;
                const EigenMode& m = psi.basis().mode(j);
                const size_t fp = static_cast<size_t>(
                    std::lower_bound(pf.begin(), pf.end(), m.p) - pf.begin());
                const size_t fq = static_cast<size_t>(
                    std::lower_bound(qf.begin(), qf.end(), m.q) - qf.begin());
                sx += c * kNorm * ax0.IA[fp] * ax1.IB[fq];
                sy += c * kNorm * ax0.IB[fp] * ax1.IA[fq];
            }
            cx += tq.weights[it] * sx;
            cy += tq.weights[it] * sy;
        }
        FracGradPoint r;
        r.x = x;
        r.d = d;
        r.comm_x = cs * cx;
        r.comm_y = cs * cy;
        r.norm = std::hypot(r.comm_x, r.comm_y);
        r.normalized = r.norm * std::pow(d, s + 1.0 + dp) / psi_lp;
        // left truncation: integrand below t_min is O(e^{-d^2/(4 t_min)})
        r.tail_estimate = std::exp(-25.0) + std::exp(-2.0 * tq.t_max);
        out[ip] = r;
    }
    return out;
}

std::vector<FracGradPoint> commutator_frac_grad(const GridField& psi, const BasisPtr& basis,
                                                int band, double s,
                                                const std::vector<Point>& points,
                                                double p_exponent) {
    AnalyzeResult a = analyze(psi, basis, band);
    if (a.bandwidth_warning)
        throw std::invalid_argument(
            "commutator_frac_grad: grid too coarse for the requested analysis band");
    return commutator_frac_grad(a.field, s, points, p_exponent);
}

void commutator_frac_grad_abel(int p0, int q0, double s, const Point& x, double eps,
                               double& comm_x, double& comm_y) {
    const double lam0 = static_cast<double>(p0) * p0 + static_cast<double>(q0) * q0;
    const double lam0s = std::pow(lam0, 0.5 * s);
    // Richardson in eps: V0 = (8 V(eps/4) - 6 V(eps/2) + V(eps)) / 3
    auto richardson = [&](bool xcomp) {
        double v[3];
        for (int k = 0; k < 3; ++k) {
            const double e = eps / (1 << k);
            const int fmax = static_cast<int>(28.0 / e) + 8;
            double acc = 0.0;
            if (xcomp) {
                for (int f = 1; f <= fmax; ++f) {
                    if ((f + p0) % 2 == 0) continue;
                    const double Ics =
                        2.0 * f / (static_cast<double>(f) * f - static_cast<double>(p0) * p0);
                    const double lam = static_cast<double>(f) * f + static_cast<double>(q0) * q0;
                    acc += kNorm * p0 * Ics * (std::pow(lam, 0.5 * s) - lam0s) * kNorm *
                           std::sin(f * x[0]) * std::sin(q0 * x[1]) * std::exp(-e * std::sqrt(lam));
                }
            } else {
                for (int f = 1; f <= fmax; ++f) {
                    if ((f + q0) % 2 == 0) continue;
                    const double Ics =
                        2.0 * f / (static_cast<double>(f) * f - static_cast<double>(q0) * q0);
                    const double lam = static_cast<double>(p0) * p0 + static_cast<double>(f) * f;
                    acc += kNorm * q0 * Ics * (std::pow(lam, 0.5 * s) - lam0s) * kNorm *
                           std::sin(p0 * x[0]) * std::sin(f * x[1]) * std::exp(-e * std::sqrt(lam));
                }
            }
            v[k] = acc;
        }
        return (8.0 * v[2] - 6.0 * v[1] + v[0]) / 3.0;
    };
    comm_x = richardson(true);
    comm_y = richardson(false);
}

double nonlinearity_weak_form(const SpectralField& theta, const TestFunction& phi,
                              int extra_points) {
    // integrand: band-limited theta and u times the bump gradient
    QuadGridPtr grid = make_grid(
        trig_rule_points(2 * theta.basis().max_frequency()) + 256 + extra_points);
    GridField th = synthesize(theta, grid);
    VelocityField u = velocity_from_theta(theta, grid);
    GridField gx = sample(phi, grid, 1);
    GridField gy = sample(phi, grid, 2);
    const int n = grid->n();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j)
            row += grid->w()[j] * th.at(i, j) *
                   (u.ux.at(i, j) * gx.at(i, j) + u.uy.at(i, j) * gy.at(i, j));
        acc += grid->w()[i] * row;
    }
    return acc;
}

IdentityResidual commutator_identity_residual(const SpectralField& psi, const TestFunction& phi,
                                              int M) {
    // the residual ladder starts at M = 2m, so 2x is the hard floor here
    if (2 * psi.size() > M)
        throw std::invalid_argument("identity_residual: psi must be band-limited at m <= M/2");
    BasisPtr big = build_basis(M);
    QuadGridPtr grid = make_grid(lab_grid_points_identity(*big));
    SineTable tab(*big, *grid);
    const int n = grid->n();

    std::vector<double> cpsi(static_cast<size_t>(M), 0.0);
    for (int j = 0; j < psi.size(); ++j) {
        const EigenMode& m = psi.basis().mode(j);
        cpsi[static_cast<size_t>(big->find(m.p, m.q))] = psi[j];
    }
    SpectralField psi_big(big, std::move(cpsi));
    SpectralField theta = frac_apply(psi_big, 1.0);  // Lambda psi

    GridField psig = synthesize(psi_big, grid, tab);
    GridField thg = synthesize(theta, grid, tab);
    VelocityField u = velocity_from_theta(theta, grid);  // grad^perp psi
    GridField phx = sample(phi, grid, 1);
    GridField phy = sample(phi, grid, 2);

    auto dot_int = [&](const GridField& ax, const GridField& ay, const GridField& bx,
                       const GridField& by, const GridField* scal) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j) {
                double v = ax.at(i, j) * bx.at(i, j) + ay.at(i, j) * by.at(i, j);
                if (scal) v *= scal->at(i, j);
                row += grid->w()[j] * v;
            }
            acc += grid->w()[i] * row;
        }
        return acc;
    };

    // LHS = int theta u . grad phi
    double lhs = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j)
            row += grid->w()[j] * thg.at(i, j) *
                   (u.ux.at(i, j) * phx.at(i, j) + u.uy.at(i, j) * phy.at(i, j));
        lhs += grid->w()[i] * row;
    }

    // [Lambda, grad^perp] psi = Lambda P_M (grad^perp psi) - grad^perp Lambda psi
    const auto lam_half = [&](SpectralField f) { return frac_apply(std::move(f), 1.0); };
    SpectralField aux = analyze(u.ux, big, M, tab).field;
    SpectralField auy = analyze(u.uy, big, M, tab).field;
    GridField Lux = synthesize(lam_half(aux), grid, tab);
    GridField Luy = synthesize(lam_half(auy), grid, tab);
    VelocityField uL = velocity_from_theta(frac_apply(theta, 1.0), grid);  // grad^perp of Lambda psi
    GridField c1x(grid), c1y(grid);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            c1x.at(i, j) = Lux.at(i, j) - uL.ux.at(i, j);
            c1y.at(i, j) = Luy.at(i, j) - uL.uy.at(i, j);
        }
    const double r1 = 0.5 * dot_int(c1x, c1y, phx, phy, &psig);

    // [Lambda, grad phi] psi = Lambda P_M(psi grad phi) - grad phi Lambda psi
    GridField gpx(grid), gpy(grid);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            gpx.at(i, j) = psig.at(i, j) * phx.at(i, j);
            gpy.at(i, j) = psig.at(i, j) * phy.at(i, j);
        }
    SpectralField agx = analyze(gpx, big, M, tab).field;
    SpectralField agy = analyze(gpy, big, M, tab).field;
    GridField Lgx = synthesize(lam_half(agx), grid, tab);
    GridField Lgy = synthesize(lam_half(agy), grid, tab);
    GridField c2x(grid), c2y(grid);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            c2x.at(i, j) = Lgx.at(i, j) - phx.at(i, j) * thg.at(i, j);
            c2y.at(i, j) = Lgy.at(i, j) - phy.at(i, j) * thg.at(i, j);
        }
    const double r2 = 0.5 * dot_int(u.ux, u.uy, c2x, c2y, nullptr);

    IdentityResidual res;
    res.lhs = lhs;
    res.rhs = r1 - r2;
    res.residual = std::abs(res.lhs - res.rhs);
    res.scale = std::max({std::abs(lhs), std::abs(r1), std::abs(r2)});
    res.report.tag = "nonlinearity_identity";
    char id[64];
    std::snprintf(id, sizeof id, "psi_m%d", psi.size());
    res.report.input_id = id;
    res.report.M = M;
    res.report.measured = res.residual;
    res.report.normalizer = res.scale;
    res.report.ratio = res.scale > 0.0 ? res.residual / res.scale : 0.0;
    res.report.tail_fraction = tail_fraction_last_decile(agx);
    res.report.tail_warning = res.report.tail_fraction > 1e-8;
    return res;
}

}  // namespace sqg
