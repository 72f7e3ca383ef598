#include "sqg/eigenbasis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <tuple>

namespace sqg {

namespace {
constexpr double kNorm = 2.0 / kPi;  // L2 normalization of sin(px)sin(qy)

std::uint64_t key(int p, int q) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p)) << 32) |
           static_cast<std::uint32_t>(q);
}
}  // namespace

double EigenMode::eval(double x, double y) const {
    return kNorm * std::sin(p * x) * std::sin(q * y);
}

void EigenMode::gradient(double x, double y, double& dx, double& dy) const {
    dx = kNorm * p * std::cos(p * x) * std::sin(q * y);
    dy = kNorm * q * std::sin(p * x) * std::cos(q * y);
}

EigenBasis::EigenBasis(int M) {
    if (M < 1) throw std::invalid_argument("EigenBasis: M must be >= 1");
    // enumerate a frequency box guaranteed to contain the first M modes:
    // any mode outside [1,K]^2 has lambda > K^2, so the box is sufficient
    // once the M-th smallest lambda inside it is <= K^2.
    int K = static_cast<int>(std::ceil(2.0 * std::sqrt(static_cast<double>(M)))) + 3;
    std::vector<std::tuple<long long, int, int>> all;
    for (;;) {
        all.clear();
        all.reserve(static_cast<size_t>(K) * K);
        for (int p = 1; p <= K; ++p)
            for (int q = 1; q <= K; ++q)
                all.emplace_back(static_cast<long long>(p) * p + static_cast<long long>(q) * q, p, q);
        std::sort(all.begin(), all.end());
        if (static_cast<int>(all.size()) >= M &&
            std::get<0>(all[static_cast<size_t>(M) - 1]) <= static_cast<long long>(K) * K)
            break;
        K *= 2;
    }
    modes_.resize(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) {
        auto [lam, p, q] = all[static_cast<size_t>(j)];
        modes_[static_cast<size_t>(j)] = EigenMode{j + 1, p, q, static_cast<double>(lam)};
        max_freq_ = std::max({max_freq_, p, q});
        lookup_[key(p, q)] = j;
    }
}

int EigenBasis::find(int p, int q) const {
    auto it = lookup_.find(key(p, q));
    return it == lookup_.end() ? -1 : it->second;
}

std::string EigenBasis::manifest_csv() const {
    std::string out = "j,p,q,lambda\n";
    char buf[96];
    for (const auto& m : modes_) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g\n", m.index, m.p, m.q, m.lambda);
        out += buf;
    }
    return out;
}

BasisPtr build_basis(int M) { return std::make_shared<const EigenBasis>(M); }

QuadGridPtr grid_for_products(const EigenBasis& basis, int nfields, int extra_points) {
    const int F = nfields * basis.max_frequency();
    return make_grid(trig_rule_points(F) + extra_points);
}

}  // namespace sqg
