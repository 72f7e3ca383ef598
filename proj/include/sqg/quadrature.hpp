#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace sqg {

inline constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre rule on [a, b]; nodes ascending.
struct Quadrature1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

Quadrature1D gauss_legendre(int n, double a, double b);

// Points per axis so that trig integrands of total 1D frequency F on [0, pi]
// integrate to round-off. Calibrated against int_0^pi cos(Fx) dx; the margin
// covers the transition zone of the Gauss error for oscillatory integrands.
int trig_rule_points(int total_frequency);

// Tensor-product Gauss-Legendre grid on the closed square [0,pi]^2.
class QuadGrid {
  public:
    explicit QuadGrid(int points_per_axis);

    int n() const { return n_; }
    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& w() const { return w_; }
    double weight(int i, int j) const { return w_[i] * w_[j]; }

  private:
    int n_;
    std::vector<double> x_;  // shared by both axes
    std::vector<double> w_;
};

using QuadGridPtr = std::shared_ptr<const QuadGrid>;

QuadGridPtr make_grid(int points_per_axis);

// Scalar samples on a QuadGrid, row-major (i = x index, j = y index).
class GridField {
  public:
    GridField() = default;
    explicit GridField(QuadGridPtr grid)
        : grid_(std::move(grid)), values_(static_cast<size_t>(grid_->n()) * grid_->n(), 0.0) {}

    const QuadGrid& grid() const { return *grid_; }
    QuadGridPtr grid_ptr() const { return grid_; }
    int n() const { return grid_->n(); }
    double& at(int i, int j) { return values_[static_cast<size_t>(i) * grid_->n() + j]; }
    double at(int i, int j) const { return values_[static_cast<size_t>(i) * grid_->n() + j]; }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    // fixed-order (row-major) weighted sum: int f dx dy
    double integrate() const;

  private:
    QuadGridPtr grid_;
    std::vector<double> values_;
};

// integral of the pointwise product of fields on one grid, fixed order
double integrate_product(const GridField& a, const GridField& b);
double integrate_product(const GridField& a, const GridField& b, const GridField& c);

}  // namespace sqg
