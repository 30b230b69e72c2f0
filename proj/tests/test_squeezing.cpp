#include "finosc/squeezing.hpp"
#include "finosc/su2.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace finosc;

TEST_CASE("kappa: closed values and oracle norm")
{
    for (int N : {0, 1, 5, 12})
        CHECK(kappa(0.0, N) == 1.0);
    for (double r : {0.1, 0.4, 1.3})
        CHECK(kappa(r, 2) == doctest::Approx(1 + r * r).epsilon(1e-14));
    const MatC S = build_S<double>({0, 0, 0.3, 0}, 10);
    const double on = S.col(0).squaredNorm();
    CHECK(std::abs(kappa(0.3, 10) - on) < 1e-12 * on);
}

TEST_CASE("moments: coherent-state limits")
{
    for (int N : {1, 6, 11})
        for (double rho : {0.3, 1.0, 1.7}) {
            const double delta = 0.7;
            const MomentSet m = moments({rho, delta, 0.0, 0.0}, N);
            const double q = 1 + rho * rho;
            CHECK(m.j1 == doctest::Approx(N * rho * std::cos(delta) / q));
            CHECK(m.j3 == doctest::Approx(-0.5 * N * (1 - rho * rho) / q));
            CHECK(m.j3sq - m.j3 * m.j3 == doctest::Approx(N * rho * rho / (q * q)));
        }
    CHECK(std::abs(moments({1.0, 0.2, 0.0, 0.0}, 9).j3) < 1e-14);
}

TEST_CASE("moments: closed form against the oracle")
{
    const Params p{0.8, 0.3, 0.2, 0.9};
    const MomentSet a = moments(p, 10), b = oracle_moments<double>(p, 10);
    CHECK(std::abs(a.j1 - b.j1) < 1e-9 * std::abs(b.j1));
    CHECK(std::abs(a.j2 - b.j2) < 1e-9 * std::abs(b.j2));
    CHECK(std::abs(a.j3 - b.j3) < 1e-9 * std::abs(b.j3));
    CHECK(std::abs(a.j3sq - b.j3sq) < 1e-9 * std::abs(b.j3sq));
    REQUIRE(b.j1sq.has_value());
    CHECK(z2_axis(b, 1, 10) > 0.0);
    CHECK_THROWS_AS(z2_axis(a, 1, 10), Error);
}

TEST_CASE("moments: phase enters only through 2 delta - gamma; variance non-negative")
{
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> u(0.1, 1.5), ur(0.05, 0.8), ph(0.0, 6.283), us(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int N = 1 + int(u(gen) * 10);
        const Params p{u(gen), ph(gen), ur(gen), ph(gen)};
        const double s = us(gen);
        const MomentSet a = moments(p, N);
        const MomentSet b = moments({p.rho, p.delta + s, p.r, p.gamma + 2 * s}, N);
        CHECK(std::abs(a.j3sq - b.j3sq) < 1e-10 * std::max(1.0, std::abs(a.j3sq)));
        CHECK(a.j3sq - a.j3 * a.j3 >= -1e-12 * N * N);
        CHECK(z2_axis(a, 3, N) >= 0.0);
    }
}

TEST_CASE("aux polynomials at r = 0")
{
    const AuxPolynomials a = aux_polynomials(0.0, 7);
    CHECK(a.kappa == 1.0);
    CHECK(a.L == doctest::Approx(7.0 - 49.0 / 2.0));
}

TEST_CASE("Z^2 on the third axis: neutral at r = 0, squeezed at N = 40")
{
    std::mt19937_64 gen(43);
    std::uniform_real_distribution<double> u(0.05, 2.0), ph(0.0, 6.283);
    for (int trial = 0; trial < 40; ++trial) {
        const int N = 1 + int(u(gen) * 20);
        CHECK(std::abs(z2_axis(moments({u(gen), ph(gen), 0.0, ph(gen)}, N), 3, N) - 1.0) < 1e-10);
    }
    CHECK(sweep(40, 0.8, 2.0, 361).min() < 1.0);
    CHECK(sweep(5, 0.8, 2.0, 361).min() >= 1.0 - 1e-9);
}

TEST_CASE("sweep: flat at r = 0, periodic and reflection symmetric")
{
    const SqueezeCurve flat = sweep(12, 0.8, 0.0, 91);
    CHECK(flat.amplitude() < 1e-12);
    CHECK(flat.min() == doctest::Approx(1.0));

    const int G = 361;
    const SqueezeCurve c = sweep(20, 0.8, 2.0, G);
    REQUIRE(c.theta.size() == size_t(G));
    CHECK(c.theta.front() == 0.0);
    CHECK(c.theta.back() == doctest::Approx(2 * std::numbers::pi));
    CHECK(c.z2.front() == doctest::Approx(c.z2.back()).epsilon(1e-12));
    for (int i = 0; i < G; ++i)
        CHECK(c.z2[i] == doctest::Approx(c.z2[G - 1 - i]).epsilon(1e-12));
}

TEST_CASE("Figure-1 curves: minima and oscillation amplitudes")
{
    const double m2 = sweep(40, 0.8, 2.0, 721).min();
    const double m4 = sweep(40, 0.8, 4.0, 721).min();
    const double m6 = sweep(40, 0.8, 6.0, 721).min();
    CHECK(m2 == doctest::Approx(0.4676).epsilon(1e-3));
    CHECK(m4 == doctest::Approx(0.6245).epsilon(1e-3));
    CHECK(m6 == doctest::Approx(0.7228).epsilon(1e-3));
    // The deepest dip is at r = 2; the oscillation amplitude decreases with r.
    CHECK(m2 < m4);
    CHECK(m4 < m6);
    CHECK(m6 < 1.0);
    const double a2 = sweep(40, 0.8, 2.0, 721).amplitude();
    const double a4 = sweep(40, 0.8, 4.0, 721).amplitude();
    const double a6 = sweep(40, 0.8, 6.0, 721).amplitude();
    CHECK(a2 > a4);
    CHECK(a4 > a6);
}

TEST_CASE("parity scan")
{
    const ParityReport rep = parity_scan({4, 5, 6, 7, 8, 9}, 0.8, 2.0, 361);
    REQUIRE(rep.entries.size() == 6);
    for (const ParityEntry& e : rep.entries)
        CHECK(e.squeezed == (e.N % 2 == 0));
    CHECK(rep.even_only());

    const ParityReport none = parity_scan({4, 5, 6, 7}, 0.8, 0.0, 91);
    for (const ParityEntry& e : none.entries)
        CHECK_FALSE(e.squeezed);

    const ParityReport with40 = parity_scan({39, 40}, 0.8, 2.0, 361);
    CHECK(with40.entries.back().squeezed);
}

TEST_CASE("contraction study")
{
    const ContractionReport rep = contraction_study({8, 16, 32, 64}, {0.8, 0.3, 0.2, 0.9});
    CHECK(rep.monotone_checked);
    CHECK(rep.monotone);
    CHECK(rep.decay_exponent > 0.0);
    CHECK(rep.kappa_bounded);
    CHECK(rep.ladder_ok);
    for (const LadderBound& b : rep.ladder)
        CHECK(b.deviation == doctest::Approx(std::abs(std::sqrt((b.n + 1) * (1.0 - double(b.n) / b.N)) -
                                                      std::sqrt(b.n + 1.0))));
    for (const ContractionEntry& e : rep.entries) {
        CHECK(e.rho_scaled == doctest::Approx(0.8 / std::sqrt(double(e.N))));
        CHECK(e.r_scaled == doctest::Approx(0.2 / e.N));
    }
    const ContractionReport one = contraction_study({16}, {0.8, 0.3, 0.2, 0.9});
    CHECK_FALSE(one.monotone_checked);
}
