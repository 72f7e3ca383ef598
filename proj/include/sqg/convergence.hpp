#pragma once

#include <string>
#include <vector>

#include "sqg/galerkin.hpp"
#include "sqg/spectral.hpp"
#include "sqg/test_function.hpp"

namespace sqg {

// ---- projection decay ---------------------------------------------------------

struct ProjectionDecayRow {
    int m = 0;
    double error = 0.0;  // ||(I - P_m) phi||_{k,D} over the resolved band
};

struct ProjectionDecayTable {
    int k = 0;                      // Sobolev order (spectral surrogate norm)
    int analysis_modes = 0;         // oversampled band used as "exact"
    double analysis_tail = 0.0;     // coefficient magnitude at the band edge
    bool tail_warning = false;      // tail > 1e-10: table unreliable
    std::vector<ProjectionDecayRow> rows;
    bool monotone_decreasing = true;
    double coeff_decay_sup = 0.0;   // max_j |phi_j| lambda_j^3
};

ProjectionDecayTable projection_decay(const TestFunction& phi, int k,
                                      const std::vector<int>& m_ladder, int analysis_modes = 2048);

// ---- weak-form residual ---------------------------------------------------------
// |int_0^T [ <theta_m, phi> sigma'(t) + sigma(t) int theta_m u_m . grad(P_m phi) ] dt|
// with sigma a smooth time bump on (0,T). Space pairings are spectral in the
// first term and tensor quadrature in the transport term; Simpson in time over
// the stored snapshots (requires an odd number of samples).
struct WeakResidualOptions {
    bool project_phi = true;  // use P_m phi in the transport term
};

double weak_residual(const BasisPtr& basis, const TrajectoryRecord& traj,
                     const TestFunction& phi_space, const WeakResidualOptions& opt = {});

// ---- Cauchy diagnostics ----------------------------------------------------------

struct ConvergenceStudy {
    std::vector<int> ladder;        // strictly increasing m values
    InitialData init;               // shared recipe (random_decay)
    RunOptions run;                 // shared integrator policy
    std::vector<TrajectoryRecord> trajectories;  // one per ladder entry
};

ConvergenceStudy run_study(const BasisPtr& basis, const std::vector<int>& ladder,
                           const InitialData& init, const RunOptions& run);

struct CauchyRow {
    int m_small = 0;
    int m_large = 0;
    double sup_diff = 0.0;  // sup_t || psi_large - psi_small ||_{1-eps, D}
};

// consecutive-pair differences of psi_m = Lambda^{-1} theta_m, compared in the
// larger coefficient space with zero padding
std::vector<CauchyRow> cauchy_diagnostic(const BasisPtr& basis, const ConvergenceStudy& study,
                                         double eps);

struct HamiltonianReport {
    int m = 0;
    double h0 = 0.0;
    double max_drift = 0.0;  // max_t |H_m(t) - H_m(0)| / |H_m(0)|
};

std::vector<HamiltonianReport> hamiltonian_constancy(const BasisPtr& basis,
                                                     const ConvergenceStudy& study);

// |H_m(0) - H(0)| with H(0) computed from theta0 in the full (oversampled) basis
std::vector<double> hamiltonian_projection_gap(const BasisPtr& basis,
                                               const std::vector<int>& ladder,
                                               const InitialData& init, int full_m);

// logged functional <dt psi_m, phi> = int (u_m theta_m) . R_D(P_m phi):
// finiteness observable for the time-derivative bound, never asserted sharp
double dtpsi_pairing(const BasisPtr& basis, const std::vector<double>& theta,
                     const TestFunction& phi, int M_oversample);

std::string study_csv_header();

}  // namespace sqg
