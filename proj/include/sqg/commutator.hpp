#pragma once

#include <string>
#include <vector>

#include "sqg/heat_kernel.hpp"
#include "sqg/spectral.hpp"
#include "sqg/test_function.hpp"

namespace sqg {

struct CommutatorReport {
    std::string tag;       // lambda_chi | fracs_grad | nonlinearity_identity
    std::string input_id;
    int M = 0;             // oversampling basis size
    double measured = 0.0;
    double normalizer = 1.0;
    double ratio = 0.0;
    bool tail_warning = false;
    double tail_fraction = 0.0;
};

std::string report_csv_header();
std::string report_csv_row(const CommutatorReport& r);

// ---- Theorem-2 commutator [Lambda, chi] psi ---------------------------------
// Lambda(chi psi) - chi(Lambda psi), both products analyzed in the M-mode
// basis on a grid that resolves the bump (trig rule + fixed bump margin).
// ratio = ||result||_{1/2,D} / (||chi||_{W^{2,p}} ||psi||_{1/2,D}), p = 4.
struct LambdaChiResult {
    SpectralField commutator;
    CommutatorReport report;
};
LambdaChiResult commutator_lambda_chi(const TestFunction& chi, const SpectralField& psi,
                                      int M, int p_bump_norm = 4);

// ---- Theorem-3 commutator [Lambda^s, grad] psi, heat-kernel route ------------
// Evaluates  c_s int_0^inf t^{-1-s/2} int_Omega (grad_x + grad_y) H psi dy dt
// at interior points. The inner integral runs per axis with composite Gauss
// panels of width ~ 3 sqrt(t); the time integral starts at d(x)^2/100 (the
// integrand is O(e^{-25}) below) and carries the analytic tail beyond Tmax.
struct FracGradPoint {
    Point x{0.0, 0.0};
    double d = 0.0;          // boundary distance
    double comm_x = 0.0;
    double comm_y = 0.0;
    double norm = 0.0;       // |commutator| (euclidean)
    double normalized = 0.0; // |comm| d^{s+1+d/p} / ||psi||_p
    double tail_estimate = 0.0;
};

std::vector<FracGradPoint> commutator_frac_grad(const SpectralField& psi, double s,
                                                const std::vector<Point>& points,
                                                double p_exponent /* inf = INFINITY */);

// grid-sampled variant: the field is first analyzed into `band` modes of
// `basis` (its own grid must satisfy the trig rule for that band)
std::vector<FracGradPoint> commutator_frac_grad(const GridField& psi, const BasisPtr& basis,
                                                int band, double s,
                                                const std::vector<Point>& points,
                                                double p_exponent);

// L^p norm of a band-limited field: quadrature for finite p, dense uniform
// sampling (401^2 interior points) for p = inf
double lp_norm(const SpectralField& psi, double p_exponent);

// Abel-regularized spectral evaluation of [Lambda^s, grad] for a single mode:
// the analytic re-analysis series summed with e^{-eps sqrt(lambda)} weights and
// Richardson-extrapolated in eps. Deep-interior cross-check for the kernel
// route; the sharp-cutoff partial sums of this series do not converge
// pointwise (the commutator is not square integrable up to the boundary).
void commutator_frac_grad_abel(int p0, int q0, double s, const Point& x, double eps,
                               double& comm_x, double& comm_y);

// ---- nonlinearity ------------------------------------------------------------
// int theta (R^perp theta) . grad(phi) dx by tensor quadrature
double nonlinearity_weak_form(const SpectralField& theta, const TestFunction& phi,
                              int extra_points = 0);

// |LHS - RHS| of the commutator form of the nonlinearity, both sides by
// quadrature with the two commutators through M-mode re-analysis. The grid is
// tied to M (trig rule + 3M points) so the residual is the resolution error.
struct IdentityResidual {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;   // |lhs - rhs|
    double scale = 0.0;      // max of the term magnitudes
    CommutatorReport report;
};
IdentityResidual commutator_identity_residual(const SpectralField& psi, const TestFunction& phi,
                                              int M);

// grid rules used by this module (exposed for tests)
int lab_grid_points_identity(const EigenBasis& oversampled);
int lab_grid_points_norms(const EigenBasis& oversampled);

}  // namespace sqg
