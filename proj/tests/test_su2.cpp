#include "finosc/su2.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace finosc;

namespace {

double dev(const MatC& a, const MatC& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("generators: small representations")
{
    const auto g0 = build_generators(0);
    CHECK(g0.Jp.rows() == 1);
    CHECK(std::abs(g0.Jp(0, 0)) == 0.0);
    CHECK(std::abs(g0.J3(0, 0)) == 0.0);
    CHECK(std::abs(g0.Nhat(0, 0)) == 0.0);

    const auto g1 = build_generators(1);
    CHECK(g1.J3(0, 0).real() == doctest::Approx(-0.5));
    CHECK(g1.J3(1, 1).real() == doctest::Approx(0.5));
    CHECK(g1.Jp(1, 0).real() == doctest::Approx(1.0));
    CHECK(std::abs(g1.Jp(0, 1)) == 0.0);

    const auto g2 = build_generators(2);
    CHECK(g2.Jp(1, 0).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(g2.Jp(2, 1).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(dev(g2.Jm, g2.Jp.adjoint()) == 0.0);
}

TEST_CASE("generators: su(2) commutation relations")
{
    for (int N : {1, 2, 5, 10, 17}) {
        const auto g = build_generators(N);
        CHECK(dev(g.Jp * g.Jm - g.Jm * g.Jp, 2.0 * g.J3) < 1e-12);
        CHECK(dev(g.J3 * g.Jp - g.Jp * g.J3, g.Jp) < 1e-12);
        CHECK(dev(g.J3 * g.Jm - g.Jm * g.J3, -g.Jm) < 1e-12);
        // Casimir j(j+1) with j = N/2
        const MatC C = 0.5 * (g.Jp * g.Jm + g.Jm * g.Jp) + g.J3 * g.J3;
        CHECK(dev(C, MatC::Identity(N + 1, N + 1) * (0.25 * N * (N + 2))) < 1e-10);
    }
}

TEST_CASE("exp_poly_in_shift: nilpotent and diagonal cases")
{
    const std::complex<double> eta{0.3, -0.7};
    const auto g1 = build_generators(1);
    CHECK(dev(exp_poly_in_shift(g1.Jp, eta), MatC::Identity(2, 2) + eta * g1.Jp) < 1e-15);

    const auto g2 = build_generators(2);
    const MatC Jp2 = g2.Jp * g2.Jp;
    const std::complex<double> xi{0.2, 0.5};
    CHECK(dev(exp_poly_in_shift(Jp2, xi / 2.0), MatC::Identity(3, 3) + (xi / 2.0) * Jp2) < 1e-15);

    const auto g7 = build_generators(7);
    const MatC E = exp_poly_in_shift(g7.J3, std::complex<double>(0.4, 0.0));
    for (int n = 0; n <= 7; ++n)
        CHECK(E(n, n).real() == doctest::Approx(std::exp(0.4 * (n - 3.5))).epsilon(1e-14));
    CHECK(dev(E, MatC(E.diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("exp_poly_in_shift: matches a dense Taylor series")
{
    std::mt19937_64 gen(3);
    std::normal_distribution<double> nd;
    for (int N : {3, 6, 9}) {
        const auto g = build_generators(N);
        const std::complex<double> c{0.3 * nd(gen), 0.3 * nd(gen)};
        MatC ref = MatC::Identity(N + 1, N + 1), term = ref;
        for (int j = 1; j <= N; ++j) {
            term = term * g.Jm * c / double(j);
            ref += term;
        }
        CHECK(dev(exp_poly_in_shift(g.Jm, c), ref) < 1e-12 * ref.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("operator builders: identity at the origin and inverse pairing")
{
    CHECK(dev(build_R<double>({0, 0, 0, 0}, 6), MatC::Identity(7, 7)) == 0.0);
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> u(0.0, 1.5), ph(0.0, 6.283);
    for (int trial = 0; trial < 20; ++trial) {
        const Params p{u(gen), ph(gen), 0.5 * u(gen), ph(gen)};
        for (int N : {1, 2, 7, 12}) {
            const MatC R = build_R<double>(p, N), Ri = build_R_inverse<double>(p, N);
            const MatC I = MatC::Identity(N + 1, N + 1);
            CHECK(norm_inf(MatC(R * Ri - I)) < 1e-10 * norm_inf(R) * norm_inf(Ri));
            CHECK(dev(build_D<double>(p, N) * build_S<double>(p, N), R) < 1e-12 * (1.0 + max_abs(R)));
        }
    }
}

TEST_CASE("D is unitary; long double oracle agrees with double")
{
    const Params p{0.8, 0.3, 0.2, 0.9};
    for (int N : {3, 8, 12}) {
        const MatC D = build_D<double>(p, N);
        CHECK(dev(D.adjoint() * D, MatC::Identity(N + 1, N + 1)) < 1e-12);
        const MatC R = build_R<double>(p, N);
        CHECK(dev(to_double(build_R<long double>(p, N)), R) < 1e-11 * max_abs(R));
    }
}

TEST_CASE("conjugate: identity and trivial R")
{
    const Params p{0.5, 0.2, 0.3, 0.7};
    const int N = 8;
    const MatC R = build_R<double>(p, N), Ri = build_R_inverse<double>(p, N);
    const MatC I = MatC::Identity(N + 1, N + 1);
    CHECK(dev(conjugate(I, R, Ri, Conjugation::inverse_first), I) < 1e-10 * norm_inf(R) * norm_inf(Ri));
    CHECK(dev(conjugate(I, R, Ri, Conjugation::forward_first), I) < 1e-10 * norm_inf(R) * norm_inf(Ri));

    const auto g = build_generators(N);
    CHECK(dev(conjugate(g.J3, I, I, Conjugation::inverse_first), g.J3) == 0.0);
}

TEST_CASE("identity suite passes for a range of N and polynomial coefficients")
{
    for (int N : {1, 2, 3, 6, 9}) {
        const BchReport rep = verify_bch_suite(N);
        CHECK(rep.all_pass());
        CHECK(rep.failures().empty());
        CHECK(rep.items.size() == 6);
    }
    const BchReport zero = verify_bch_suite(6, {0.0, 0.0}, {0.0, 0.0});
    CHECK(zero.all_pass());
}

TEST_CASE("debug_print: one line per row")
{
    const std::string s = debug_print(MatC::Identity(3, 3));
    CHECK(std::count(s.begin(), s.end(), '\n') == 3);
}
