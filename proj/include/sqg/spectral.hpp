#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqg/eigenbasis.hpp"
#include "sqg/kernels.hpp"
#include "sqg/quadrature.hpp"

namespace sqg {

// Coefficient vector in the Dirichlet eigenbasis. coeffs.size() <= basis size.
class SpectralField {
  public:
    SpectralField() = default;
    SpectralField(BasisPtr basis, std::vector<double> coeffs);
    static SpectralField zero(BasisPtr basis, int m);
    static SpectralField unit_mode(BasisPtr basis, int p, int q);

    const EigenBasis& basis() const { return *basis_; }
    BasisPtr basis_ptr() const { return basis_; }
    int size() const { return static_cast<int>(coeffs_.size()); }
    double& operator[](int j) { return coeffs_[static_cast<size_t>(j)]; }
    double operator[](int j) const { return coeffs_[static_cast<size_t>(j)]; }
    std::vector<double>& coeffs() { return coeffs_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    bool all_finite() const;

    // header names the basis parameters; rows "j,coeff"
    std::string to_csv() const;

  private:
    BasisPtr basis_;
    std::vector<double> coeffs_;
};

// ---- fractional calculus in coefficient space --------------------------------

// Lambda^s f: multiply the j-th coefficient by lambda_j^{s/2}; s in [-2,2].
SpectralField frac_apply(const SpectralField& f, double s);

// || f ||_{s,D} = (sum lambda_j^s f_j^2)^{1/2}
double sobolev_norm(const SpectralField& f, double s);

// truncation to the first m coefficients (result has length m)
SpectralField project_Pm(const SpectralField& f, int m);

// L2 pairing of coefficient vectors (shorter one zero-padded)
double inner(const SpectralField& a, const SpectralField& b);

// ---- synthesis / analysis -----------------------------------------------------

GridField synthesize(const SpectralField& f, const QuadGridPtr& grid);
GridField synthesize(const SpectralField& f, const QuadGridPtr& grid, const SineTable& tab);

struct AnalyzeResult {
    SpectralField field;
    // set when the requested band exceeds what the grid can integrate exactly
    // for products of two basis functions at that band
    bool bandwidth_warning = false;
};

AnalyzeResult analyze(const GridField& g, const BasisPtr& basis, int M);
AnalyzeResult analyze(const GridField& g, const BasisPtr& basis, int M, const SineTable& tab);

// pointwise evaluation of a band-limited field (exact mode sum)
double eval_at(const SpectralField& f, double x, double y);
void eval_gradient_at(const SpectralField& f, double x, double y, double& dx, double& dy);

// ---- velocity -----------------------------------------------------------------

// u = grad^perp Lambda^{-1} theta = (-d_y psi, d_x psi), evaluated modewise.
struct VelocityField {
    GridField ux;
    GridField uy;
};

VelocityField velocity_from_theta(const SpectralField& theta, const QuadGridPtr& grid);
void velocity_at(const SpectralField& theta, double x, double y, double& ux, double& uy);

// coefficients of div u analyzed at the oversampled basis of `theta` (should be
// round-off for any theta: div grad^perp = 0)
double divergence_sup_coeff(const SpectralField& theta);

// GridField CSV: "x,y,value"
std::string grid_to_csv(const GridField& g);

}  // namespace sqg
