#pragma once

#include <vector>

#include "sqg/eigenbasis.hpp"
#include "sqg/quadrature.hpp"

namespace sqg {

// Per-axis sine tables for one (basis, grid) pair: table(f, i) = sin(f * x_i)
// for f = 1 .. max_frequency. Built once, reused by the transform kernels.
class SineTable {
  public:
    SineTable(const EigenBasis& basis, const QuadGrid& grid);

    int fmax() const { return fmax_; }
    int n() const { return n_; }
    const double* row(int f) const { return &tab_[static_cast<size_t>(f - 1) * n_]; }

  private:
    int fmax_;
    int n_;
    std::vector<double> tab_;
};

// ---- transform kernels -----------------------------------------------------
// All parallel variants write disjoint output slots and keep a fixed
// accumulation order per slot, so results are independent of thread count
// and bit-identical between runs.

// field(i,j) = sum_m coeff_m (2/pi) sin(p_m x_i) sin(q_m y_j)
void synthesize_kernel(const EigenBasis& basis, const std::vector<double>& coeffs,
                       const SineTable& tab, GridField& out);
void synthesize_reference(const EigenBasis& basis, const std::vector<double>& coeffs,
                          const QuadGrid& grid, GridField& out);

// coeff_m = int field * w_m  (tensor quadrature)
void analyze_kernel(const EigenBasis& basis, const GridField& field,
                    const SineTable& tab, std::vector<double>& out);
void analyze_reference(const EigenBasis& basis, const GridField& field,
                       std::vector<double>& out);

// ---- sparse triad contraction ----------------------------------------------
// Entries of one l-slice: rhs_l = -sum_i v[i] * theta[j[i]] * theta[k[i]].
struct TensorSlices {
    std::vector<int> offsets;  // size m+1
    std::vector<int> j;
    std::vector<int> k;
    std::vector<double> v;
};

void contract_kernel(const TensorSlices& t, const std::vector<double>& theta,
                     std::vector<double>& out);
void contract_reference(const TensorSlices& t, const std::vector<double>& theta,
                        std::vector<double>& out);

}  // namespace sqg
