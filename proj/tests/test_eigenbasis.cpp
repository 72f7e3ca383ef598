#include <doctest.h>

#include <cmath>

#include "sqg/eigenbasis.hpp"
#include "sqg/kernels.hpp"

using namespace sqg;

TEST_CASE("mode ordering and eigenvalues") {
    BasisPtr b = build_basis(12);
    // ascending lambda with lexicographic tie-break
    const int want[12][2] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}, {3, 1},
                             {2, 3}, {3, 2}, {1, 4}, {4, 1}, {3, 3}, {2, 4}};
    for (int j = 0; j < 12; ++j) {
        CHECK(b->mode(j).p == want[j][0]);
        CHECK(b->mode(j).q == want[j][1]);
        CHECK(b->mode(j).lambda ==
              double(want[j][0] * want[j][0] + want[j][1] * want[j][1]));
    }
    CHECK(b->mode(0).lambda == 2.0);

    SUBCASE("single-mode basis") {
        BasisPtr b1 = build_basis(1);
        CHECK(b1->mode(0).p == 1);
        CHECK(b1->mode(0).q == 1);
        CHECK(b1->mode(0).lambda == 2.0);
    }
}

TEST_CASE("rebuild determinism") {
    BasisPtr a = build_basis(300);
    BasisPtr b = build_basis(300);
    for (int j = 0; j < 300; ++j) {
        CHECK(a->mode(j).p == b->mode(j).p);
        CHECK(a->mode(j).q == b->mode(j).q);
        CHECK(a->mode(j).lambda == b->mode(j).lambda);
    }
}

TEST_CASE("Weyl lower bound at M = 100") {
    // min over j <= 100 of lambda_j / j, frozen from direct enumeration
    BasisPtr b = build_basis(100);
    double c = 1e300;
    int arg = 0;
    for (int j = 0; j < 100; ++j) {
        const double v = b->mode(j).lambda / (j + 1);
        if (v < c) {
            c = v;
            arg = j + 1;
        }
    }
    CHECK(c > 0.0);
    CHECK(c == doctest::Approx(1.382978723404).epsilon(1e-9));
    CHECK(arg == 94);
}

TEST_CASE("pointwise values, boundary zeros, gradient") {
    BasisPtr b = build_basis(16);
    const EigenMode m11 = b->mode(0);
    CHECK(m11.eval(kPi / 2, kPi / 2) == doctest::Approx(2.0 / kPi).epsilon(1e-15));

    // mode (2,3) at (pi/4, pi/6): both sines are sin(pi/2) = 1
    const int j23 = b->find(2, 3);
    REQUIRE(j23 >= 0);
    CHECK(b->mode(j23).eval(kPi / 4, kPi / 6) == doctest::Approx(2.0 / kPi).epsilon(1e-15));

    for (int j = 0; j < 16; ++j) {
        CHECK(std::abs(b->mode(j).eval(0.0, 1.0)) < 1e-15);
        CHECK(std::abs(b->mode(j).eval(1.3, kPi)) < 1e-12);
    }

    double dx, dy;
    m11.gradient(kPi / 2, kPi / 2, dx, dy);
    CHECK(std::abs(dx) < 1e-15);
    CHECK(std::abs(dy) < 1e-15);
    m11.gradient(0.0, kPi / 2, dx, dy);
    CHECK(dx == doctest::Approx(2.0 / kPi).epsilon(1e-15));
}

TEST_CASE("finite differences confirm the analytic gradient of mode (3,2)") {
    BasisPtr b = build_basis(16);
    const EigenMode m = b->mode(b->find(3, 2));
    const double x0 = 1.1, y0 = 2.0;
    double dx, dy;
    m.gradient(x0, y0, dx, dy);
    double prev_err = 1e300;
    for (double h : {1e-3, 5e-4, 2.5e-4}) {
        const double fdx = (m.eval(x0 + h, y0) - m.eval(x0 - h, y0)) / (2.0 * h);
        const double fdy = (m.eval(x0, y0 + h) - m.eval(x0, y0 - h)) / (2.0 * h);
        const double err = std::max(std::abs(fdx - dx), std::abs(fdy - dy));
        CHECK(err < prev_err);  // O(h^2) refinement
        CHECK(err < 10.0 * h * h);
        prev_err = err;
    }
}

TEST_CASE("orthonormality of the first 100 modes under the trig rule") {
    BasisPtr b = build_basis(100);
    QuadGridPtr grid = grid_for_products(*b, 2);
    SineTable tab(*b, *grid);
    // gram row via analysis of each synthesized mode
    double worst = 0.0;
    for (int i = 0; i < 100; i += 9) {
        std::vector<double> c(static_cast<size_t>(i) + 1, 0.0);
        c.back() = 1.0;
        GridField f(grid);
        synthesize_kernel(*b, c, tab, f);
        std::vector<double> row(100);
        analyze_kernel(*b, f, tab, row);
        for (int j = 0; j < 100; ++j) {
            const double want = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(row[static_cast<size_t>(j)] - want));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("spectral identity -lap w = lambda w") {
    // second derivatives of the closed form: -(d_xx + d_yy) w = (p^2+q^2) w
    BasisPtr b = build_basis(30);
    for (int j : {0, 7, 19, 29}) {
        const EigenMode m = b->mode(j);
        for (double x : {0.4, 1.9}) {
            for (double y : {0.7, 2.6}) {
                const double w = m.eval(x, y);
                const double lap = -(m.p * m.p + m.q * m.q) * w;
                CHECK(-lap == doctest::Approx(m.lambda * w).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("manifest csv header") {
    BasisPtr b = build_basis(3);
    const std::string csv = b->manifest_csv();
    CHECK(csv.rfind("j,p,q,lambda\n1,1,1,2\n", 0) == 0);
}
