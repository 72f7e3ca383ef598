#include <doctest.h>

#include <cmath>

#include "sqg/galerkin.hpp"
#include "sqg/spectral.hpp"

using namespace sqg;

namespace {
SpectralField random_field(const BasisPtr& b, int m, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> c(static_cast<size_t>(m));
    for (auto& v : c) v = rng.normal();
    return SpectralField(b, std::move(c));
}
}  // namespace

TEST_CASE("frac_apply on single modes") {
    BasisPtr b = build_basis(8);
    SpectralField e11 = SpectralField::unit_mode(b, 1, 1);
    CHECK(frac_apply(e11, 2.0)[0] == doctest::Approx(2.0).epsilon(1e-15));   // lambda
    CHECK(frac_apply(e11, -2.0)[0] == doctest::Approx(0.5).epsilon(1e-15));  // 1/lambda
    SpectralField e12 = SpectralField::unit_mode(b, 1, 2);
    CHECK(frac_apply(e12, 2.0)[e12.size() - 1] == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("frac_apply inverse and composition") {
    BasisPtr b = build_basis(40);
    SpectralField f = random_field(b, 40, 3);
    SpectralField roundtrip = frac_apply(frac_apply(f, 1.0), -1.0);
    for (int j = 0; j < f.size(); ++j)
        CHECK(roundtrip[j] == doctest::Approx(f[j]).epsilon(1e-14));
    // Lambda^a Lambda^b = Lambda^{a+b}
    SpectralField lhs = frac_apply(frac_apply(f, 0.7), 0.9);
    SpectralField rhs = frac_apply(f, 1.6);
    for (int j = 0; j < f.size(); ++j) CHECK(lhs[j] == doctest::Approx(rhs[j]).epsilon(1e-13));
}

TEST_CASE("sobolev norms") {
    BasisPtr b = build_basis(8);
    SpectralField e11 = SpectralField::unit_mode(b, 1, 1);
    CHECK(sobolev_norm(e11, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    // coefficients (1,1) on lambda = 2 and lambda = 5 at s = 1/2:
    // value frozen from an independent evaluation of (sqrt2 + sqrt5)^{1/2}
    std::vector<double> c(3, 0.0);
    c[0] = 1.0;
    c[1] = 1.0;
    SpectralField f(b, c);
    CHECK(sobolev_norm(f, 0.5) == doctest::Approx(1.9105709983857928).epsilon(1e-14));

    SpectralField g = random_field(b, 8, 7);
    double eu = 0.0;
    for (int j = 0; j < 8; ++j) eu += g[j] * g[j];
    CHECK(sobolev_norm(g, 0.0) == doctest::Approx(std::sqrt(eu)).epsilon(1e-14));
    // Parseval witness
    CHECK(std::abs(sobolev_norm(g, 0.0) * sobolev_norm(g, 0.0) - eu) < 1e-14 * eu);
    // monotone in s on this domain (lambda_1 = 2 > 1)
    CHECK(sobolev_norm(g, 0.5) <= sobolev_norm(g, 1.0));
}

TEST_CASE("projection truncates, idempotent, self-adjoint") {
    BasisPtr b = build_basis(30);
    SpectralField f = random_field(b, 30, 1);
    SpectralField g = random_field(b, 30, 2);
    SpectralField pf = project_Pm(f, 12);
    CHECK(pf.size() == 12);
    SpectralField pf2 = project_Pm(pf, 12);
    for (int j = 0; j < 12; ++j) CHECK(pf[j] == pf2[j]);
    CHECK(inner(project_Pm(f, 12), g) == doctest::Approx(inner(f, project_Pm(g, 12))).epsilon(1e-14));
    // m = length is the identity
    SpectralField id = project_Pm(f, 30);
    for (int j = 0; j < 30; ++j) CHECK(id[j] == f[j]);
}

TEST_CASE("duality pairing of fractional powers") {
    BasisPtr b = build_basis(25);
    SpectralField f = random_field(b, 25, 10);
    SpectralField g = random_field(b, 25, 11);
    for (double s : {0.5, 1.0, 1.5})
        CHECK(inner(frac_apply(f, s), g) == doctest::Approx(inner(f, frac_apply(g, s))).epsilon(1e-13));
}

TEST_CASE("synthesize then analyze is the identity on band-limited data") {
    BasisPtr b = build_basis(50);
    QuadGridPtr grid = grid_for_products(*b, 2);
    SpectralField e21 = SpectralField::unit_mode(b, 2, 1);
    GridField f = synthesize(e21, grid);
    SpectralField back = analyze(f, b, 50).field;
    for (int j = 0; j < 50; ++j) {
        const double want = j == e21.size() - 1 ? 1.0 : 0.0;
        CHECK(std::abs(back[j] - want) < 1e-12);
    }
    // zero field analyzes to zero
    GridField z(grid);
    SpectralField zc = analyze(z, b, 50).field;
    for (int j = 0; j < 50; ++j) CHECK(zc[j] == 0.0);
}

TEST_CASE("analysis of a product of modes matches the product-to-sum closed form") {
    // f = sin(x)sin(y) * sin(2x)sin(y): per axis a finite cosine polynomial;
    // sine coefficients follow from I_cs(a,p) = int cos(a z) sin(p z) dz
    BasisPtr b = build_basis(200);
    QuadGridPtr grid = grid_for_products(*b, 2, 16);
    GridField f(grid);
    for (int i = 0; i < grid->n(); ++i)
        for (int j = 0; j < grid->n(); ++j) {
            const double x = grid->x()[i], y = grid->x()[j];
            f.at(i, j) = std::sin(x) * std::sin(y) * std::sin(2.0 * x) * std::sin(y);
        }
    SpectralField got = analyze(f, b, 200).field;

    auto Ics = [](int a, int p) {
        if ((a + p) % 2 == 0) return 0.0;
        return 2.0 * p / (double(p) * p - double(a) * a);
    };
    // x-part: sin(x)sin(2x) = (cos x - cos 3x)/2; y-part: sin^2 y = (1 - cos 2y)/2
    double worst = 0.0;
    for (int j = 0; j < 200; ++j) {
        const EigenMode& m = b->mode(j);
        const double ax = 0.5 * (Ics(1, m.p) - Ics(3, m.p));
        const double Ics0 = m.q % 2 == 1 ? 2.0 / m.q : 0.0;  // int sin(qz) dz
        const double ay = 0.5 * (Ics0 - Ics(2, m.q));
        const double want = (2.0 / kPi) * ax * ay;
        worst = std::max(worst, std::abs(got[j] - want));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("analyze warns when the band exceeds the grid rule") {
    BasisPtr b = build_basis(400);
    QuadGridPtr small = make_grid(24);
    GridField f(small);
    auto res = analyze(f, b, 400);
    CHECK(res.bandwidth_warning);
    QuadGridPtr ok = grid_for_products(*b, 2);
    GridField g(ok);
    CHECK_FALSE(analyze(g, b, 400).bandwidth_warning);
}

TEST_CASE("velocity: single-mode values and closed form") {
    BasisPtr b = build_basis(8);
    SpectralField e11 = SpectralField::unit_mode(b, 1, 1);
    double ux, uy;
    velocity_at(e11, kPi / 2, kPi / 2, ux, uy);
    CHECK(std::abs(ux) < 1e-15);
    CHECK(std::abs(uy) < 1e-15);

    // theta = e_(1,2): psi = 5^{-1/2} w_{12}; u = (-d_y psi, d_x psi)
    SpectralField e12 = SpectralField::unit_mode(b, 1, 2);
    Rng rng(4);
    for (int i = 0; i < 10; ++i) {
        const double x = 0.2 + 2.7 * rng.uniform(), y = 0.2 + 2.7 * rng.uniform();
        velocity_at(e12, x, y, ux, uy);
        const double c = (2.0 / kPi) / std::sqrt(5.0);
        CHECK(ux == doctest::Approx(-2.0 * c * std::sin(x) * std::cos(2.0 * y)).epsilon(1e-13));
        CHECK(uy == doctest::Approx(c * std::cos(x) * std::sin(2.0 * y)).epsilon(1e-13));
    }
}

TEST_CASE("velocity is divergence-free to round-off") {
    BasisPtr b = build_basis(20);
    Rng rng(8);
    std::vector<double> c(20);
    for (auto& v : c) v = rng.normal();
    double n2 = 0.0;
    for (double v : c) n2 += v * v;
    for (auto& v : c) v /= std::sqrt(n2);
    SpectralField theta(b, c);
    CHECK(divergence_sup_coeff(theta) < 1e-12);
}

TEST_CASE("isometry of the 1-norm with the Dirichlet form") {
    // ||f||_{1,D}^2 equals int |grad f|^2 for band-limited f
    BasisPtr b = build_basis(12);
    SpectralField f = random_field(b, 12, 21);
    QuadGridPtr grid = grid_for_products(*b, 2);
    const int n = grid->n();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            double dx, dy;
            eval_gradient_at(f, grid->x()[i], grid->x()[j], dx, dy);
            row += grid->w()[j] * (dx * dx + dy * dy);
        }
        acc += grid->w()[i] * row;
    }
    const double norm1 = sobolev_norm(f, 1.0);
    CHECK(acc == doctest::Approx(norm1 * norm1).epsilon(1e-12));
}

TEST_CASE("csv serialization carries basis parameters") {
    BasisPtr b = build_basis(4);
    SpectralField f = SpectralField::unit_mode(b, 1, 1);
    const std::string csv = f.to_csv();
    CHECK(csv.find("M=4") != std::string::npos);
    CHECK(csv.find("j,coeff") != std::string::npos);
}
