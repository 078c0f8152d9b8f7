#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "liouville/pucci.hpp"
#include "test_support.hpp"

using namespace liouville;
namespace ts = testsupport;

TEST_CASE("extremal operators on fixed matrices") {
    const Ellipticity ell{1.0, 2.0};

    for (int n : {1, 2, 3, 4}) {
        CHECK(pucci_plus(SymMatrix(n), ell) == 0.0);
        CHECK(pucci_minus(SymMatrix(n), ell) == 0.0);
    }

    const SymMatrix mixed = SymMatrix::diagonal(std::vector<double>{1.0, -1.0});
    CHECK(std::fabs(pucci_plus(mixed, ell) - 1.0) <= 1e-12);
    CHECK(std::fabs(pucci_minus(mixed, ell) - (-1.0)) <= 1e-12);

    SymMatrix twice_id = SymMatrix::identity(3);
    twice_id *= 2.0;
    CHECK(std::fabs(pucci_plus(twice_id, ell) - (-6.0)) <= 1e-12);
}

TEST_CASE("random matrices match the characteristic-polynomial oracle") {
    auto rng = ts::make_rng(20240811);
    const Ellipticity ell{0.7, 2.3};
    for (int trial = 0; trial < 500; ++trial) {
        const SymMatrix m = ts::random_symmetric(rng, 4, -10.0, 10.0);
        const auto oracle = ts::char_poly_eigenvalues(m);
        const double expect_plus = pucci_from_eigenvalues(oracle, ell, Sign::plus);
        const double expect_minus = pucci_from_eigenvalues(oracle, ell, Sign::minus);
        CHECK(std::fabs(pucci_plus(m, ell) - expect_plus) <= 1e-10);
        CHECK(std::fabs(pucci_minus(m, ell) - expect_minus) <= 1e-10);
    }
}

TEST_CASE("duality under negation") {
    auto rng = ts::make_rng(7151);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + int(trial % 5);
        const SymMatrix m = ts::random_symmetric(rng, n, -10.0, 10.0);
        const Ellipticity ell{0.5, 2.5};
        CHECK(std::fabs(pucci_minus(m, ell) - (-pucci_plus(-m, ell))) <= 1e-10);
    }
}

TEST_CASE("subadditivity family and uniform ellipticity sandwich") {
    auto rng = ts::make_rng(99712);
    const Ellipticity ell{0.8, 2.0};
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + int(trial % 5);
        const SymMatrix m = ts::random_symmetric(rng, n, -10.0, 10.0);
        const SymMatrix q = ts::random_symmetric(rng, n, -10.0, 10.0);
        const SymMatrix sum = m + q;
        CHECK(pucci_plus(sum, ell) <= pucci_plus(m, ell) + pucci_plus(q, ell) + 1e-9);
        CHECK(pucci_plus(sum, ell) >= pucci_plus(m, ell) + pucci_minus(q, ell) - 1e-9);
        CHECK(pucci_minus(sum, ell) >= pucci_minus(m, ell) + pucci_minus(q, ell) - 1e-9);
    }

    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + int(trial % 4);
        const SymMatrix m = ts::random_symmetric(rng, n, -8.0, 8.0);
        const SymMatrix a = ts::random_conjugated_diagonal(rng, n, ell.lambda, ell.Lambda);
        double tr_am = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) tr_am += a(i, j) * m(j, i);
        CHECK(pucci_minus(m, ell) <= -tr_am + 1e-9);
        CHECK(-tr_am <= pucci_plus(m, ell) + 1e-9);
    }
}

TEST_CASE("degenerate ellipticity: M >= Q implies pucci_plus(M) <= pucci_plus(Q)") {
    auto rng = ts::make_rng(5150);
    const Ellipticity ell{1.0, 3.0};
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + int(trial % 4);
        const SymMatrix q = ts::random_symmetric(rng, n, -5.0, 5.0);
        const SymMatrix psd = ts::random_conjugated_diagonal(rng, n, 0.0, 4.0);
        const SymMatrix m = q + psd;
        CHECK(pucci_plus(m, ell) <= pucci_plus(q, ell) + 1e-9);
    }
}

TEST_CASE("radial eigenvalue bookkeeping") {
    // f(r) = r^2: fp = 2r, fpp = 2; the Hessian is 2I
    const RadialEigs e = radial_eigs(2.0, 2.0, 1.0, 3);
    CHECK(e.radial == 2.0);
    CHECK(e.tangential == 2.0);
    CHECK(e.tangential_multiplicity == 2);

    const RadialEigs generic = radial_eigs(5.0, -7.0, 1.0, 3);
    CHECK(generic.radial == -7.0);
    CHECK(generic.tangential == 5.0);

    CHECK(radial_eigs(1.0, 1.0, 2.0, 1).tangential_multiplicity == 0);
    CHECK_THROWS_AS(radial_eigs(1.0, 1.0, 0.0, 3), std::domain_error);
    CHECK_THROWS_AS(radial_eigs(1.0, 1.0, -1.0, 3), std::domain_error);

    const Ellipticity ell{1.0, 2.0};
    CHECK(std::fabs(pucci_radial({2.0, 2.0, 2}, ell, Sign::plus) - (-6.0)) <= 1e-14);
    CHECK(std::fabs(pucci_radial({-1.0, -1.0, 2}, ell, Sign::plus) - 6.0) <= 1e-14);
}

TEST_CASE("hessian reconstruction at a point") {
    const double a = 0.37, b = -1.21;
    const std::vector<double> e1{1.0, 0.0, 0.0};
    const SymMatrix h = hessian_at_point(e1, a, b);
    CHECK(std::fabs(h(0, 0) - b) <= 1e-14);
    CHECK(std::fabs(h(1, 1) - a) <= 1e-14);
    CHECK(std::fabs(h(2, 2) - a) <= 1e-14);
    CHECK(std::fabs(h(0, 1)) <= 1e-14);

    // f(r) = r^2 at any x: Hessian 2I
    auto rng = ts::make_rng(31337);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = ts::random_unit_vector(rng, 4);
        for (auto& xi : x) xi *= 2.5;
        const SymMatrix h2 = hessian_at_point(x, 2.0 * 2.5, 2.0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(std::fabs(h2(i, j) - (i == j ? 2.0 : 0.0)) <= 1e-13);
    }

    CHECK_THROWS_AS(hessian_at_point(std::vector<double>{0.0, 0.0}, 1.0, 1.0),
                    std::domain_error);
}

TEST_CASE("reconstructed spectrum reproduces the radial eigenvalues") {
    auto rng = ts::make_rng(8121);
    std::uniform_real_distribution<double> fpd(-4.0, 4.0);
    std::uniform_real_distribution<double> rd(0.2, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + int(trial % 5);
        const double fp = fpd(rng), fpp = fpd(rng), r = rd(rng);
        auto x = ts::random_unit_vector(rng, n);
        for (auto& xi : x) xi *= r;

        const auto eig = sym_eigenvalues(hessian_at_point(x, fp, fpp));
        const RadialEigs want = radial_eigs(fp, fpp, r, n);
        std::vector<double> expected(std::size_t(n - 1), want.tangential);
        expected.push_back(want.radial);
        std::sort(expected.begin(), expected.end());
        for (int i = 0; i < n; ++i)
            CHECK(std::fabs(eig[std::size_t(i)] - expected[std::size_t(i)]) <= 1e-12);
    }
}

TEST_CASE("rotation invariance of the reconstructed spectrum") {
    auto rng = ts::make_rng(424242);
    const double fp = 1.7, fpp = -0.9, r = 3.0;
    std::vector<double> reference;
    for (int trial = 0; trial < 16; ++trial) {
        auto x = ts::random_unit_vector(rng, 5);
        for (auto& xi : x) xi *= r;
        auto eig = sym_eigenvalues(hessian_at_point(x, fp, fpp));
        if (reference.empty())
            reference = eig;
        else
            for (std::size_t i = 0; i < eig.size(); ++i)
                CHECK(std::fabs(eig[i] - reference[i]) <= 1e-12);
    }
}

TEST_CASE("effective dimension of a linear operator") {
    const std::vector<double> x3{0.3, -1.2, 0.7};
    CHECK(std::fabs(effective_dimension_psi(SymMatrix::identity(3), x3) - 3.0) <= 1e-14);

    const SymMatrix a = SymMatrix::diagonal(std::vector<double>{1.0, 2.0});
    CHECK(std::fabs(effective_dimension_psi(a, std::vector<double>{1.0, 0.0}) - 3.0) <= 1e-14);
    CHECK(std::fabs(effective_dimension_psi(a, std::vector<double>{0.0, 1.0}) - 1.5) <= 1e-14);

    CHECK_THROWS_AS(effective_dimension_psi(a, std::vector<double>{0.0, 0.0}),
                    std::domain_error);
    const SymMatrix neg = SymMatrix::diagonal(std::vector<double>{-1.0, 1.0});
    CHECK_THROWS_AS(effective_dimension_psi(neg, std::vector<double>{1.0, 0.0}),
                    std::domain_error);
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(Ellipticity(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Ellipticity(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Ellipticity(1.0, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);

    SymMatrix bad(2);
    bad.set(0, 1, std::numeric_limits<double>::quiet_NaN());
    CHECK_THROWS_AS(pucci_plus(bad, Ellipticity(1.0, 2.0)), std::invalid_argument);
}

TEST_CASE("ellipticity exponents") {
    const Ellipticity ell{1.0, 2.0};
    CHECK(std::fabs(ell.beta(3) - 5.0) <= 1e-14);
    CHECK(std::fabs(ell.alpha(3) - 2.0) <= 1e-14);
    const Ellipticity unit{1.0, 1.0};
    CHECK(unit.beta(7) == 7.0);
    CHECK(unit.alpha(7) == 7.0);
    CHECK(ell.beta(4) >= ell.alpha(4));
}
