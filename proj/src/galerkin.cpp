#include "sqg/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

namespace sqg {

std::uint64_t Rng::next_u64() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
}

double triple_1d(int a, int b, int c) {
    // product-to-sum: cos(a) sin(b) sin(c) -> cos(a)[cos(b-c) - cos(b+c)]/2;
    // int_0^pi cos(a z) cos(m z) dz = pi [a=m=0], pi/2 [a=m!=0], else 0
    auto C = [](int aa, int mm) {
        mm = std::abs(mm);
        if (aa != mm) return 0.0;
        return aa == 0 ? kPi : kPi / 2.0;
    };
    return 0.5 * (C(a, std::abs(b - c)) - C(a, b + c));
}

namespace {
constexpr double kNorm3 = 8.0 / (kPi * kPi * kPi);  // (2/pi)^3

using EntryMap = std::map<std::tuple<int, int, int>, double>;  // (l,j,k) -> gamma

// T_abc = int (grad^perp w_a . grad w_b) w_c via the 1D product-to-sum factors
double triple_core(const EigenMode& a, const EigenMode& b, const EigenMode& c) {
    const double termA =
        a.p * b.q * triple_1d(a.p, b.p, c.p) * triple_1d(b.q, a.q, c.q);
    const double termB =
        a.q * b.p * triple_1d(b.p, a.p, c.p) * triple_1d(a.q, b.q, c.q);
    return kNorm3 * (termA - termB);
}

// The core tensor T is totally antisymmetric; computing it once per unordered
// triple and deriving the six slots by sign makes the antisymmetries exact in
// floating point (gamma_{jkl} = sgn * T / sqrt(lambda_j), and -x/y == -(x/y)).
EntryMap assemble_closed_form(const EigenBasis& basis, int m) {
    EntryMap entries;
    auto emit = [&](int j, int k, int l, double T) {
        const double v = T / std::sqrt(basis.mode(j).lambda);
        if (v != 0.0) entries[{l, j, k}] = v;
    };
    for (int a = 0; a < m; ++a) {
        const EigenMode& ma = basis.mode(a);
        for (int b = a + 1; b < m; ++b) {
            const EigenMode& mb = basis.mode(b);
            const int pcand[2] = {ma.p + mb.p, std::abs(ma.p - mb.p)};
            const int qcand[2] = {ma.q + mb.q, std::abs(ma.q - mb.q)};
            for (int i = 0; i < 2; ++i)
                for (int jq = 0; jq < 2; ++jq) {
                    const int pl = pcand[i], ql = qcand[jq];
                    if (pl < 1 || ql < 1) continue;
                    const int c = basis.find(pl, ql);
                    if (c <= b || c >= m) continue;  // canonical a < b < c
                    const EigenMode& mc = basis.mode(c);
                    const double T = triple_core(ma, mb, mc);
                    if (T == 0.0) continue;
                    emit(a, b, c, T);
                    emit(a, c, b, -T);
                    emit(b, a, c, -T);
                    emit(b, c, a, T);
                    emit(c, a, b, T);
                    emit(c, b, a, -T);
                }
        }
    }
    return entries;
}

EntryMap assemble_quadrature(const EigenBasis& basis, int m, int n) {
    QuadGridPtr grid = make_grid(n);
    int fmax = 0;
    for (int j = 0; j < m; ++j)
        fmax = std::max({fmax, basis.mode(j).p, basis.mode(j).q});
    const auto& x = grid->x();
    const auto& w = grid->w();

    // per-axis tables
    std::vector<double> sins(static_cast<size_t>(fmax) * n), coss(static_cast<size_t>(fmax) * n);
    for (int f = 1; f <= fmax; ++f)
        for (int i = 0; i < n; ++i) {
            sins[static_cast<size_t>(f - 1) * n + i] = std::sin(f * x[i]);
            coss[static_cast<size_t>(f - 1) * n + i] = std::cos(f * x[i]);
        }
    auto S = [&](int f, int i) { return sins[static_cast<size_t>(f - 1) * n + i]; };
    auto Cs = [&](int f, int i) { return coss[static_cast<size_t>(f - 1) * n + i]; };

    // 1D integrals I_css(a;b,c) = int cos(a) sin(b) sin(c): cache by (a,b,c)
    auto I = [&](int a, int b, int c) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += w[i] * Cs(a, i) * S(b, i) * S(c, i);
        return acc;
    };

    EntryMap entries;
    for (int j = 0; j < m; ++j) {
        const EigenMode& mj = basis.mode(j);
        for (int k = 0; k < m; ++k) {
            const EigenMode& mk = basis.mode(k);
            for (int l = 0; l < m; ++l) {
                const EigenMode& ml = basis.mode(l);
                const double termA =
                    mj.p * mk.q * I(mj.p, mk.p, ml.p) * I(mk.q, mj.q, ml.q);
                const double termB =
                    mj.q * mk.p * I(mk.p, mj.p, ml.p) * I(mj.q, mk.q, ml.q);
                const double v = kNorm3 * (termA - termB) / std::sqrt(mj.lambda);
                if (std::abs(v) > 1e-13) entries[{l, j, k}] = v;
            }
        }
    }
    return entries;
}
}  // namespace

CouplingTensor assemble_gamma(const EigenBasis& basis, int m, AssemblyMethod method,
                              int quad_points) {
    if (m > basis.size()) throw std::invalid_argument("assemble_gamma: m exceeds basis size");
    EntryMap entries;
    if (method == AssemblyMethod::closed_form) {
        entries = assemble_closed_form(basis, m);
    } else {
        int fmax = 0;
        for (int j = 0; j < m; ++j)
            fmax = std::max({fmax, basis.mode(j).p, basis.mode(j).q});
        const int required = trig_rule_points(3 * fmax);  // triple-product bandwidth
        if (quad_points == 0) quad_points = required;
        if (quad_points < required)
            throw std::invalid_argument(
                "assemble_gamma: quadrature order insufficient for exactness at this m");
        entries = assemble_quadrature(basis, m, quad_points);
    }
    CouplingTensor t;
    t.m_ = m;
    t.method_ = method;
    t.slices_.offsets.assign(static_cast<size_t>(m) + 1, 0);
    for (const auto& [key, v] : entries)
        ++t.slices_.offsets[static_cast<size_t>(std::get<0>(key)) + 1];
    for (int l = 0; l < m; ++l)
        t.slices_.offsets[static_cast<size_t>(l) + 1] += t.slices_.offsets[static_cast<size_t>(l)];
    t.slices_.j.resize(entries.size());
    t.slices_.k.resize(entries.size());
    t.slices_.v.resize(entries.size());
    size_t idx = 0;  // map iteration is (l,j,k)-sorted already
    for (const auto& [key, v] : entries) {
        t.slices_.j[idx] = std::get<1>(key);
        t.slices_.k[idx] = std::get<2>(key);
        t.slices_.v[idx] = v;
        ++idx;
    }
    return t;
}

double CouplingTensor::entry(int j, int k, int l) const {
    for (int i = slices_.offsets[static_cast<size_t>(l)];
         i < slices_.offsets[static_cast<size_t>(l) + 1]; ++i)
        if (slices_.j[static_cast<size_t>(i)] == j && slices_.k[static_cast<size_t>(i)] == k)
            return slices_.v[static_cast<size_t>(i)];
    return 0.0;
}

std::string CouplingTensor::to_csv() const {
    std::string out = "j,k,l,gamma\n";
    char buf[128];
    for (int l = 0; l < m_; ++l)
        for (int i = slices_.offsets[static_cast<size_t>(l)];
             i < slices_.offsets[static_cast<size_t>(l) + 1]; ++i) {
            std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g\n",
                          slices_.j[static_cast<size_t>(i)] + 1,
                          slices_.k[static_cast<size_t>(i)] + 1, l + 1,
                          slices_.v[static_cast<size_t>(i)]);
            out += buf;
        }
    return out;
}

std::vector<double> galerkin_rhs(const CouplingTensor& gamma, const std::vector<double>& theta) {
    std::vector<double> out(theta.size());
    contract_kernel(gamma.slices(), theta, out);
    return out;
}

std::vector<double> galerkin_rhs_quadrature(const BasisPtr& basis, const CouplingTensor& gamma,
                                            const std::vector<double>& theta) {
    // -P_m(u . grad theta) analyzed by quadrature; u never truncated
    const int m = gamma.m();
    SpectralField th(basis, theta);
    QuadGridPtr grid = grid_for_products(*basis, 3);
    VelocityField u = velocity_from_theta(th, grid);
    const int n = grid->n();
    GridField advect(grid);
    const auto& x = grid->x();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double gx = 0.0, gy = 0.0;
            for (int mm = 0; mm < static_cast<int>(theta.size()); ++mm) {
                if (theta[static_cast<size_t>(mm)] == 0.0) continue;
                const EigenMode& mode = basis->mode(mm);
                double dx, dy;
                mode.gradient(x[i], x[j], dx, dy);
                gx += theta[static_cast<size_t>(mm)] * dx;
                gy += theta[static_cast<size_t>(mm)] * dy;
            }
            advect.at(i, j) = -(u.ux.at(i, j) * gx + u.uy.at(i, j) * gy);
        }
    return analyze(advect, basis, m).field.coeffs();
}

GalerkinState step(const GalerkinState& state, const CouplingTensor& gamma, double dt,
                   Integrator integrator, const StepControls& controls) {
    if (dt <= 0.0) throw std::invalid_argument("step: dt must be positive");
    const size_t m = state.theta.size();
    GalerkinState next;
    next.t = state.t + dt;
    next.theta.resize(m);
    if (integrator == Integrator::rk4) {
        std::vector<double> k1 = galerkin_rhs(gamma, state.theta), tmp(m);
        for (size_t i = 0; i < m; ++i) tmp[i] = state.theta[i] + 0.5 * dt * k1[i];
        std::vector<double> k2 = galerkin_rhs(gamma, tmp);
        for (size_t i = 0; i < m; ++i) tmp[i] = state.theta[i] + 0.5 * dt * k2[i];
        std::vector<double> k3 = galerkin_rhs(gamma, tmp);
        for (size_t i = 0; i < m; ++i) tmp[i] = state.theta[i] + dt * k3[i];
        std::vector<double> k4 = galerkin_rhs(gamma, tmp);
        for (size_t i = 0; i < m; ++i)
            next.theta[i] =
                state.theta[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        return next;
    }
    // implicit midpoint: mu = theta + dt/2 f(mu), theta' = 2 mu - theta
    std::vector<double> mu(m), mu_next(m);
    std::vector<double> f = galerkin_rhs(gamma, state.theta);
    for (size_t i = 0; i < m; ++i) mu[i] = state.theta[i] + 0.5 * dt * f[i];
    bool converged = false;
    for (int it = 0; it < controls.max_fixed_point_iters; ++it) {
        f = galerkin_rhs(gamma, mu);
        double delta2 = 0.0, norm2 = 0.0;
        for (size_t i = 0; i < m; ++i) {
            mu_next[i] = state.theta[i] + 0.5 * dt * f[i];
            const double d = mu_next[i] - mu[i];
            delta2 += d * d;
            norm2 += mu_next[i] * mu_next[i];
        }
        mu.swap(mu_next);
        if (std::isfinite(delta2) && std::isfinite(norm2) &&
            std::sqrt(delta2) <= controls.fixed_point_tol * std::max(1.0, std::sqrt(norm2))) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error(
            "implicit midpoint: fixed-point iteration did not converge (dt too large?)");
    for (size_t i = 0; i < m; ++i) next.theta[i] = 2.0 * mu[i] - state.theta[i];
    return next;
}

std::vector<double> make_initial_theta(const EigenBasis& basis, int m, const InitialData& init) {
    std::vector<double> theta(static_cast<size_t>(m), 0.0);
    switch (init.kind) {
        case InitialData::Kind::coefficients: {
            if (static_cast<int>(init.coefficients.size()) > m)
                throw std::invalid_argument("initial data longer than m");
            std::copy(init.coefficients.begin(), init.coefficients.end(), theta.begin());
            break;
        }
        case InitialData::Kind::single_mode: {
            bool found = false;
            for (int j = 0; j < m; ++j)
                if (basis.mode(j).p == init.p && basis.mode(j).q == init.q) {
                    theta[static_cast<size_t>(j)] = init.amplitude;
                    found = true;
                    break;
                }
            if (!found) throw std::invalid_argument("single_mode: mode not within first m");
            break;
        }
        case InitialData::Kind::random_decay: {
            const int band = init.draw_band > 0 ? init.draw_band : m;
            if (band > basis.size())
                throw std::invalid_argument("random_decay: draw band exceeds basis size");
            Rng rng(init.seed);
            std::vector<double> full(static_cast<size_t>(band));
            double norm2 = 0.0;
            for (int j = 0; j < band; ++j) {
                const double c = rng.normal() * std::pow(basis.mode(j).lambda, -init.beta);
                full[static_cast<size_t>(j)] = c;
                norm2 += c * c;
            }
            const double scale = init.amplitude / std::sqrt(norm2);
            for (int j = 0; j < std::min(m, band); ++j)
                theta[static_cast<size_t>(j)] = full[static_cast<size_t>(j)] * scale;
            break;
        }
    }
    return theta;
}

double energy_of(const std::vector<double>& theta) {
    double s = 0.0;
    for (double c : theta) s += c * c;
    return 0.5 * s;
}

double hamiltonian_of(const EigenBasis& basis, const std::vector<double>& theta) {
    double s = 0.0;
    for (size_t j = 0; j < theta.size(); ++j)
        s += theta[j] * theta[j] / std::sqrt(basis.mode(static_cast<int>(j)).lambda);
    return 0.5 * s;
}

double TrajectoryRecord::max_energy_drift() const {
    if (samples.empty()) return 0.0;
    const double e0 = samples.front().energy;
    double d = 0.0;
    for (const auto& s : samples) d = std::max(d, std::abs(s.energy - e0));
    return e0 != 0.0 ? d / e0 : d;
}

double TrajectoryRecord::max_hamiltonian_drift() const {
    if (samples.empty()) return 0.0;
    const double h0 = samples.front().hamiltonian;
    double d = 0.0;
    for (const auto& s : samples) d = std::max(d, std::abs(s.hamiltonian - h0));
    return h0 != 0.0 ? d / h0 : d;
}

std::string TrajectoryRecord::to_csv(bool with_theta) const {
    std::string out = "t,energy,hamiltonian";
    if (with_theta && !samples.empty())
        for (size_t j = 0; j < samples.front().theta.size(); ++j)
            out += ",theta_" + std::to_string(j + 1);
    out += "\n";
    char buf[96];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", s.t, s.energy, s.hamiltonian);
        out += buf;
        if (with_theta)
            for (double c : s.theta) {
                std::snprintf(buf, sizeof buf, ",%.17g", c);
                out += buf;
            }
        out += "\n";
    }
    return out;
}

TrajectoryRecord run_galerkin(const BasisPtr& basis, const CouplingTensor& gamma,
                              const std::vector<double>& theta0, const RunOptions& opt) {
    if (opt.T <= 0.0) throw std::invalid_argument("run_galerkin: T must be positive");
    TrajectoryRecord rec;
    rec.m = gamma.m();
    rec.dt = opt.dt;
    rec.integrator = opt.integrator;
    GalerkinState state{0.0, theta0};
    auto push = [&](const GalerkinState& s) {
        TrajectorySample sample;
        sample.t = s.t;
        sample.energy = energy_of(s.theta);
        sample.hamiltonian = hamiltonian_of(*basis, s.theta);
        if (opt.keep_theta) sample.theta = s.theta;
        rec.samples.push_back(std::move(sample));
    };
    push(state);
    const long nsteps = std::lround(opt.T / opt.dt);
    for (long i = 0; i < nsteps; ++i) {
        state = step(state, gamma, opt.dt, opt.integrator, opt.controls);
        for (double c : state.theta)
            if (!std::isfinite(c)) {
                char msg[160];
                std::snprintf(msg, sizeof msg,
                              "run aborted: non-finite coefficient at t=%.6g (step %ld); "
                              "last good sample at t=%.6g",
                              state.t, i + 1, rec.samples.back().t);
                throw std::runtime_error(msg);
            }
        if ((i + 1) % opt.sample_stride == 0 || i + 1 == nsteps) push(state);
    }
    return rec;
}

}  // namespace sqg
