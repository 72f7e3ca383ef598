#include "sqg/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqg {

ProjectionDecayTable projection_decay(const TestFunction& phi, int k,
                                      const std::vector<int>& m_ladder, int analysis_modes) {
    if (k < 0 || k > 2) throw std::invalid_argument("projection_decay: k in {0,1,2}");
    for (size_t i = 1; i < m_ladder.size(); ++i)
        if (m_ladder[i] <= m_ladder[i - 1])
            throw std::invalid_argument("projection_decay: ladder must increase");
    ProjectionDecayTable table;
    table.k = k;
    table.analysis_modes = analysis_modes;

    BasisPtr big = build_basis(analysis_modes);
    // grid must resolve the bump against the highest analysis mode
    QuadGridPtr grid = make_grid(trig_rule_points(2 * big->max_frequency()) + 128);
    GridField phig(grid);
    for (int i = 0; i < grid->n(); ++i)
        for (int j = 0; j < grid->n(); ++j)
            phig.at(i, j) = phi.value(grid->x()[i], grid->x()[j]);
    SpectralField coeffs = analyze(phig, big, analysis_modes).field;

    // band-edge tail: largest coefficient among the last decile
    double tail = 0.0;
    for (int j = analysis_modes - analysis_modes / 10; j < analysis_modes; ++j)
        tail = std::max(tail, std::abs(coeffs[j]));
    table.analysis_tail = tail;
    table.tail_warning = tail > 1e-10;

    double sup = 0.0;
    for (int j = 0; j < analysis_modes; ++j) {
        const double lam = big->mode(j).lambda;
        sup = std::max(sup, std::abs(coeffs[j]) * lam * lam * lam);
    }
    table.coeff_decay_sup = sup;

    for (int m : m_ladder) {
        if (m > analysis_modes) throw std::invalid_argument("projection_decay: m beyond analysis band");
        double acc = 0.0;
        for (int j = m; j < analysis_modes; ++j) {
            const double c = coeffs[j];
            acc += std::pow(big->mode(j).lambda, k) * c * c;
        }
        table.rows.push_back({m, std::sqrt(acc)});
    }
    for (size_t i = 1; i < table.rows.size(); ++i)
        if (table.rows[i].error >= table.rows[i - 1].error) table.monotone_decreasing = false;
    return table;
}

double weak_residual(const BasisPtr& basis, const TrajectoryRecord& traj,
                     const TestFunction& phi_space, const WeakResidualOptions& opt) {
    const size_t ns = traj.samples.size();
    if (ns < 3 || ns % 2 == 0)
        throw std::invalid_argument("weak_residual: need an odd number >= 3 of snapshots");
    for (const auto& s : traj.samples)
        if (s.theta.empty()) throw std::invalid_argument("weak_residual: trajectory lacks snapshots");
    const int m = traj.m;
    const double T = traj.samples.back().t;
    TimeBump sigma{T};

    // phi coefficients on the oversampled band (fixed, one-time analysis)
    BasisPtr big = build_basis(std::max(4 * m, 64));
    QuadGridPtr grid = make_grid(trig_rule_points(2 * big->max_frequency()) + 192);
    GridField phig(grid);
    for (int i = 0; i < grid->n(); ++i)
        for (int j = 0; j < grid->n(); ++j)
            phig.at(i, j) = phi_space.value(grid->x()[i], grid->x()[j]);
    SpectralField phi_coeffs = analyze(phig, big, big->size()).field;
    SpectralField phi_m = project_Pm(phi_coeffs, m);
    const SpectralField& phi_used = opt.project_phi ? phi_m : phi_coeffs;

    // transport grid: integrand theta_m u_m grad(P_m phi) is band-limited
    QuadGridPtr tgrid = grid_for_products(*build_basis(m), 3, 16);
    SineTable ttab(*big, *tgrid);

    // gradient of the (band-limited) projected phi on the transport grid
    const int n = tgrid->n();
    GridField gpx(tgrid), gpy(tgrid);
    if (opt.project_phi) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double dx, dy;
                eval_gradient_at(phi_m, tgrid->x()[i], tgrid->x()[j], dx, dy);
                gpx.at(i, j) = dx;
                gpy.at(i, j) = dy;
            }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double dx, dy;
                phi_space.gradient(tgrid->x()[i], tgrid->x()[j], dx, dy);
                gpx.at(i, j) = dx;
                gpy.at(i, j) = dy;
            }
    }

    // integrand at each snapshot
    std::vector<double> g(ns);
    for (size_t is = 0; is < ns; ++is) {
        const auto& s = traj.samples[is];
        SpectralField theta(basis, s.theta);
        // <theta, phi> sigma'
        double term1 = 0.0;
        for (int j = 0; j < m; ++j) term1 += s.theta[static_cast<size_t>(j)] * phi_used[j];
        term1 *= sigma.derivative(s.t);
        // sigma int theta u . grad(P_m phi)
        GridField thg = synthesize(theta, tgrid, ttab);
        VelocityField u = velocity_from_theta(theta, tgrid);
        double term2 = 0.0;
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j)
                row += tgrid->w()[j] * thg.at(i, j) *
                       (u.ux.at(i, j) * gpx.at(i, j) + u.uy.at(i, j) * gpy.at(i, j));
            term2 += tgrid->w()[i] * row;
        }
        g[is] = term1 + sigma.value(s.t) * term2;
    }
    // Simpson over uniform snapshots
    const double h = traj.samples[1].t - traj.samples[0].t;
    double acc = g[0] + g[ns - 1];
    for (size_t i = 1; i + 1 < ns; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * g[i];
    return std::abs(acc * h / 3.0);
}

ConvergenceStudy run_study(const BasisPtr& basis, const std::vector<int>& ladder,
                           const InitialData& init, const RunOptions& run) {
    for (size_t i = 1; i < ladder.size(); ++i)
        if (ladder[i] <= ladder[i - 1])
            throw std::invalid_argument("run_study: ladder must be strictly increasing");
    ConvergenceStudy st;
    st.ladder = ladder;
    st.init = init;
    if (st.init.kind == InitialData::Kind::random_decay && st.init.draw_band == 0)
        st.init.draw_band = ladder.back();  // all runs share theta0
    st.run = run;
    for (int m : ladder) {
        CouplingTensor gamma = assemble_gamma(*basis, m, AssemblyMethod::closed_form);
        std::vector<double> theta0 = make_initial_theta(*basis, m, st.init);
        st.trajectories.push_back(run_galerkin(basis, gamma, theta0, run));
    }
    return st;
}

std::vector<CauchyRow> cauchy_diagnostic(const BasisPtr& basis, const ConvergenceStudy& study,
                                         double eps) {
    if (eps <= 0.0 || eps > 1.0) throw std::invalid_argument("cauchy_diagnostic: eps in (0,1]");
    std::vector<CauchyRow> rows;
    for (size_t i = 0; i + 1 < study.ladder.size(); ++i) {
        const auto& a = study.trajectories[i];
        const auto& b = study.trajectories[i + 1];
        const size_t ns = std::min(a.samples.size(), b.samples.size());
        double sup = 0.0;
        for (size_t t = 0; t < ns; ++t) {
            // psi = Lambda^{-1} theta, compared in the larger space
            double acc = 0.0;
            const auto& ta = a.samples[t].theta;
            const auto& tb = b.samples[t].theta;
            for (size_t j = 0; j < tb.size(); ++j) {
                const double lam = basis->mode(static_cast<int>(j)).lambda;
                const double pa = j < ta.size() ? ta[j] / std::sqrt(lam) : 0.0;
                const double pb = tb[j] / std::sqrt(lam);
                acc += std::pow(lam, 1.0 - eps) * (pb - pa) * (pb - pa);
            }
            sup = std::max(sup, std::sqrt(acc));
        }
        rows.push_back({study.ladder[i], study.ladder[i + 1], sup});
    }
    return rows;
}

std::vector<HamiltonianReport> hamiltonian_constancy(const BasisPtr& basis,
                                                     const ConvergenceStudy& study) {
    (void)basis;
    std::vector<HamiltonianReport> out;
    for (size_t i = 0; i < study.ladder.size(); ++i) {
        const auto& tr = study.trajectories[i];
        HamiltonianReport r;
        r.m = study.ladder[i];
        r.h0 = tr.samples.front().hamiltonian;
        r.max_drift = tr.max_hamiltonian_drift();
        out.push_back(r);
    }
    return out;
}

std::vector<double> hamiltonian_projection_gap(const BasisPtr& basis,
                                               const std::vector<int>& ladder,
                                               const InitialData& init, int full_m) {
    InitialData shared = init;
    if (shared.kind == InitialData::Kind::random_decay && shared.draw_band == 0)
        shared.draw_band = full_m;
    std::vector<double> full = make_initial_theta(*basis, full_m, shared);
    const double h_full = hamiltonian_of(*basis, full);
    std::vector<double> gaps;
    for (int m : ladder) {
        std::vector<double> trunc(full.begin(), full.begin() + m);
        gaps.push_back(std::abs(hamiltonian_of(*basis, trunc) - h_full));
    }
    return gaps;
}

double dtpsi_pairing(const BasisPtr& basis, const std::vector<double>& theta,
                     const TestFunction& phi, int M_oversample) {
    // <dt psi_m, phi> = int (u_m theta_m) . R_D(P_m phi), R_D = -grad Lambda^{-1}
    // computed spectrally at M modes (adjoint form R_D^* = -Lambda^{-1} grad)
    const int m = static_cast<int>(theta.size());
    BasisPtr big = build_basis(M_oversample);
    QuadGridPtr grid = make_grid(trig_rule_points(2 * big->max_frequency()) + 192);
    SineTable tab(*big, *grid);
    GridField phig(grid);
    for (int i = 0; i < grid->n(); ++i)
        for (int j = 0; j < grid->n(); ++j)
            phig.at(i, j) = phi.value(grid->x()[i], grid->x()[j]);
    SpectralField phi_m = project_Pm(analyze(phig, big, M_oversample, tab).field, m);

    // R_D (P_m phi) = grad^perp-free part: R_D = grad Lambda^{-1} with sign per
    // the adjoint convention; components via modewise differentiation of
    // Lambda^{-1} P_m phi
    SpectralField lam_inv_phi = frac_apply(phi_m, -1.0);
    const int n = grid->n();
    SpectralField th(basis, theta);
    GridField thg = synthesize(th, grid, SineTable(*basis, *grid));
    VelocityField u = velocity_from_theta(th, grid);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            double dx, dy;
            eval_gradient_at(lam_inv_phi, grid->x()[i], grid->x()[j], dx, dy);
            const double fx = u.ux.at(i, j) * thg.at(i, j);
            const double fy = u.uy.at(i, j) * thg.at(i, j);
            row += grid->w()[j] * (fx * (-dx) + fy * (-dy));
        }
        acc += grid->w()[i] * row;
    }
    return acc;
}

std::string study_csv_header() { return "m,quantity,t_or_pair,value\n"; }

}  // namespace sqg
