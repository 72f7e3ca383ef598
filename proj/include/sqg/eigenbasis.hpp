#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "sqg/quadrature.hpp"

namespace sqg {

// One Dirichlet eigenpair of -Laplace on (0,pi)^2:
//   w(x,y) = (2/pi) sin(p x) sin(q y),  lambda = p^2 + q^2.
struct EigenMode {
    int index = 0;   // 1-based position in the ordered basis
    int p = 0;
    int q = 0;
    double lambda = 0.0;

    double eval(double x, double y) const;
    void gradient(double x, double y, double& dx, double& dy) const;
};

// First M modes ordered by (lambda, p, q). Immutable after construction;
// concurrent reads are safe.
class EigenBasis {
  public:
    explicit EigenBasis(int M);

    int size() const { return static_cast<int>(modes_.size()); }
    const EigenMode& mode(int j) const { return modes_[static_cast<size_t>(j)]; }  // 0-based
    const std::vector<EigenMode>& modes() const { return modes_; }

    int max_frequency() const { return max_freq_; }
    // 0-based slot of (p,q), or -1 when the mode is outside the basis
    int find(int p, int q) const;

    // header "j,p,q,lambda"
    std::string manifest_csv() const;

  private:
    std::vector<EigenMode> modes_;
    int max_freq_ = 0;
    std::unordered_map<std::uint64_t, int> lookup_;
};

using BasisPtr = std::shared_ptr<const EigenBasis>;
BasisPtr build_basis(int M);

// tensor grid sized for products of `nfields` basis functions from `basis`,
// plus an extra margin of non-band-limited content (0 for pure trig data)
QuadGridPtr grid_for_products(const EigenBasis& basis, int nfields, int extra_points = 0);

}  // namespace sqg
