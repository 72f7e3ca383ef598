#include "sqg/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace sqg {

namespace {
constexpr double kNorm = 2.0 / kPi;
}

SineTable::SineTable(const EigenBasis& basis, const QuadGrid& grid)
    : fmax_(basis.max_frequency()), n_(grid.n()), tab_(static_cast<size_t>(fmax_) * n_) {
    const auto& x = grid.x();
#pragma omp parallel for schedule(static)
    for (int f = 1; f <= fmax_; ++f)
        for (int i = 0; i < n_; ++i) tab_[static_cast<size_t>(f - 1) * n_ + i] = std::sin(f * x[i]);
}

// Factorized synthesis: R[p][j] = sum_{modes with x-freq p} c * sin(q y_j),
// then field(i,j) = (2/pi) sum_p sin(p x_i) R[p][j].
void synthesize_kernel(const EigenBasis& basis, const std::vector<double>& coeffs,
                       const SineTable& tab, GridField& out) {
    const int M = static_cast<int>(coeffs.size());
    if (M > basis.size()) throw std::invalid_argument("synthesize: more coefficients than modes");
    const int n = tab.n();
    const int fmax = tab.fmax();
    std::vector<double> R(static_cast<size_t>(fmax) * n, 0.0);
    for (int m = 0; m < M; ++m) {
        const double c = coeffs[static_cast<size_t>(m)];
        if (c == 0.0) continue;
        const EigenMode& mode = basis.mode(m);
        const double* sq = tab.row(mode.q);
        double* r = &R[static_cast<size_t>(mode.p - 1) * n];
        for (int j = 0; j < n; ++j) r[j] += c * sq[j];
    }
    double* val = out.values().data();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        double* row = val + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) row[j] = 0.0;
        for (int p = 1; p <= fmax; ++p) {
            const double sx = tab.row(p)[i];
            if (sx == 0.0) continue;
            const double* r = &R[static_cast<size_t>(p - 1) * n];
            for (int j = 0; j < n; ++j) row[j] += sx * r[j];
        }
        for (int j = 0; j < n; ++j) row[j] *= kNorm;
    }
}

void synthesize_reference(const EigenBasis& basis, const std::vector<double>& coeffs,
                          const QuadGrid& grid, GridField& out) {
    const int M = static_cast<int>(coeffs.size());
    const int n = grid.n();
    const auto& x = grid.x();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int m = 0; m < M; ++m) {
                const EigenMode& mode = basis.mode(m);
                s += coeffs[static_cast<size_t>(m)] * kNorm * std::sin(mode.p * x[i]) *
                     std::sin(mode.q * x[j]);
            }
            out.at(i, j) = s;
        }
}

// Factorized analysis: G[q][i] = sum_j w_i w_j field(i,j) sin(q y_j) folded as
// T(i,q), then coeff_m = (2/pi) sum_i sin(p x_i) T(i,q).
void analyze_kernel(const EigenBasis& basis, const GridField& field,
                    const SineTable& tab, std::vector<double>& out) {
    const int M = static_cast<int>(out.size());
    if (M > basis.size()) throw std::invalid_argument("analyze: more coefficients than modes");
    const int n = tab.n();
    const int fmax = tab.fmax();
    const auto& w = field.grid().w();
    const double* val = field.values().data();
    // T(q,i) = w_i * sum_j w_j field(i,j) sin(q y_j)
    std::vector<double> T(static_cast<size_t>(fmax) * n);
#pragma omp parallel for schedule(static)
    for (int q = 1; q <= fmax; ++q) {
        const double* sq = tab.row(q);
        double* t = &T[static_cast<size_t>(q - 1) * n];
        for (int i = 0; i < n; ++i) {
            const double* row = val + static_cast<size_t>(i) * n;
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += w[j] * row[j] * sq[j];
            t[i] = w[i] * s;
        }
    }
#pragma omp parallel for schedule(static)
    for (int m = 0; m < M; ++m) {
        const EigenMode& mode = basis.mode(m);
        const double* sp = tab.row(mode.p);
        const double* t = &T[static_cast<size_t>(mode.q - 1) * n];
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += sp[i] * t[i];
        out[static_cast<size_t>(m)] = kNorm * s;
    }
}

void analyze_reference(const EigenBasis& basis, const GridField& field,
                       std::vector<double>& out) {
    const int M = static_cast<int>(out.size());
    const int n = field.n();
    const auto& x = field.grid().x();
    const auto& w = field.grid().w();
    for (int m = 0; m < M; ++m) {
        const EigenMode& mode = basis.mode(m);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j)
                row += w[j] * field.at(i, j) * std::sin(mode.q * x[j]);
            s += w[i] * row * std::sin(mode.p * x[i]);
        }
        out[static_cast<size_t>(m)] = kNorm * s;
    }
}

void contract_kernel(const TensorSlices& t, const std::vector<double>& theta,
                     std::vector<double>& out) {
    const int m = static_cast<int>(t.offsets.size()) - 1;
#pragma omp parallel for schedule(static)
    for (int l = 0; l < m; ++l) {
        double s = 0.0;
        for (int i = t.offsets[static_cast<size_t>(l)]; i < t.offsets[static_cast<size_t>(l) + 1]; ++i)
            s += t.v[static_cast<size_t>(i)] * theta[static_cast<size_t>(t.j[static_cast<size_t>(i)])] *
                 theta[static_cast<size_t>(t.k[static_cast<size_t>(i)])];
        out[static_cast<size_t>(l)] = -s;
    }
}

void contract_reference(const TensorSlices& t, const std::vector<double>& theta,
                        std::vector<double>& out) {
    const int m = static_cast<int>(t.offsets.size()) - 1;
    for (int l = 0; l < m; ++l) {
        double s = 0.0;
        for (int i = t.offsets[static_cast<size_t>(l)]; i < t.offsets[static_cast<size_t>(l) + 1]; ++i)
            s += t.v[static_cast<size_t>(i)] * theta[static_cast<size_t>(t.j[static_cast<size_t>(i)])] *
                 theta[static_cast<size_t>(t.k[static_cast<size_t>(i)])];
        out[static_cast<size_t>(l)] = -s;
    }
}

}  // namespace sqg
