#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqg/kernels.hpp"
#include "sqg/spectral.hpp"

namespace sqg {

// ---- reproducible RNG (splitmix64 + Box-Muller) ------------------------------
// deliberately self-contained so seeded runs reproduce across toolchains
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double uniform();  // (0,1)
    double normal();

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// ---- coupling tensor ----------------------------------------------------------

enum class AssemblyMethod { closed_form, quadrature };

// gamma_{jkl} = lambda_j^{-1/2} int (grad^perp w_j . grad w_k) w_l, stored as
// l-slices for the contraction. Entries are deterministic: sorted by (l,j,k).
class CouplingTensor {
  public:
    int m() const { return m_; }
    AssemblyMethod method() const { return method_; }
    const TensorSlices& slices() const { return slices_; }
    std::size_t nonzeros() const { return slices_.v.size(); }
    double entry(int j, int k, int l) const;  // 0 when not stored

    std::string to_csv() const;  // "j,k,l,gamma" (1-based indices)

    friend CouplingTensor assemble_gamma(const EigenBasis& basis, int m, AssemblyMethod method,
                                         int quad_points);

  private:
    int m_ = 0;
    AssemblyMethod method_ = AssemblyMethod::closed_form;
    TensorSlices slices_;
};

// quad_points: 0 selects the trig exactness rule automatically; an explicit
// value below the rule's requirement is rejected
CouplingTensor assemble_gamma(const EigenBasis& basis, int m, AssemblyMethod method,
                              int quad_points = 0);

// closed-form 1D factor  int_0^pi cos(a z) sin(b z) sin(c z) dz
double triple_1d(int a, int b, int c);

// rhs_l = -sum_{jk} gamma_{jkl} theta_j theta_k
std::vector<double> galerkin_rhs(const CouplingTensor& gamma, const std::vector<double>& theta);

// independent route: analyzed coefficients of -P_m(u . grad theta) by quadrature
std::vector<double> galerkin_rhs_quadrature(const BasisPtr& basis, const CouplingTensor& gamma,
                                            const std::vector<double>& theta);

// ---- time integration ----------------------------------------------------------

enum class Integrator { rk4, implicit_midpoint };

struct StepControls {
    double fixed_point_tol = 1e-13;
    int max_fixed_point_iters = 200;
};

struct GalerkinState {
    double t = 0.0;
    std::vector<double> theta;
};

// one step; throws std::runtime_error when the midpoint iteration stalls
GalerkinState step(const GalerkinState& state, const CouplingTensor& gamma, double dt,
                   Integrator integrator, const StepControls& controls = {});

// ---- initial data -------------------------------------------------------------

struct InitialData {
    enum class Kind { coefficients, single_mode, random_decay } kind = Kind::random_decay;
    std::vector<double> coefficients;  // Kind::coefficients
    int p = 1, q = 1;                  // Kind::single_mode
    std::uint64_t seed = 0;            // Kind::random_decay
    double beta = 1.0;                 //   coefficient decay lambda^{-beta}
    double amplitude = 1.0;            //   L2 norm after normalization
    // random_decay draws (and normalizes) at this band, then truncates to m;
    // ladder studies share one theta0 this way. 0 = draw at m.
    int draw_band = 0;
};

std::vector<double> make_initial_theta(const EigenBasis& basis, int m, const InitialData& init);

// ---- trajectories ---------------------------------------------------------------

struct TrajectorySample {
    double t = 0.0;
    double energy = 0.0;       // 1/2 ||theta||^2
    double hamiltonian = 0.0;  // 1/2 sum lambda^{-1/2} theta^2
    std::vector<double> theta; // empty unless snapshots are kept
};

struct TrajectoryRecord {
    int m = 0;
    double dt = 0.0;
    Integrator integrator = Integrator::implicit_midpoint;
    std::vector<TrajectorySample> samples;

    double max_energy_drift() const;       // relative to the initial value
    double max_hamiltonian_drift() const;
    std::string to_csv(bool with_theta) const;
};

struct RunOptions {
    double T = 1.0;
    double dt = 1e-2;
    Integrator integrator = Integrator::implicit_midpoint;
    int sample_stride = 10;     // steps between stored samples
    bool keep_theta = true;
    StepControls controls;
};

// integrates d theta/dt = rhs with invariant monitoring; aborts on NaN with a
// diagnostic that includes the last good state
TrajectoryRecord run_galerkin(const BasisPtr& basis, const CouplingTensor& gamma,
                              const std::vector<double>& theta0, const RunOptions& opt);

double energy_of(const std::vector<double>& theta);
double hamiltonian_of(const EigenBasis& basis, const std::vector<double>& theta);

}  // namespace sqg
