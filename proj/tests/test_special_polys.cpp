#include "finosc/special_polys.hpp"

#include <doctest.h>

#include <random>

using namespace finosc;

TEST_CASE("hyp_terminating: hand-evaluated series")
{
    CHECK(std::abs(hyp_terminating({{0.0, 2.5}, {1.5}, {0.7, 0.2}, 5}) - 1.0) < 1e-15);
    const double k = 3, p = 0.4, N = 7;
    CHECK(std::abs(hyp_terminating({{-1.0, -k}, {-N}, {1.0 / p, 0.0}, 1}) - (1.0 - k / (p * N))) < 1e-14);
    const double r = 0.37;
    CHECK(std::abs(hyp_terminating({{0.5, -1.0, -0.5}, {}, {4 * r * r, 0.0}, 1}) - (1.0 + r * r)) < 1e-14);
    CHECK_THROWS_AS(hyp_terminating({{0.5, 1.5}, {}, {0.1, 0.0}, 3}), Error);
    CHECK_THROWS_AS(hyp_terminating({{-3.0}, {-1.0}, {0.1, 0.0}, 3}), Error);
}

TEST_CASE("krawtchouk: special values")
{
    for (int N : {1, 4, 9})
        for (int m = 0; m <= N; ++m) {
            CHECK(krawtchouk(m, 0.0, {0.3, N}) == doctest::Approx(1.0));
            CHECK(krawtchouk(0, 2.5, {0.3, N}) == doctest::Approx(1.0));
        }
    CHECK(std::abs(krawtchouk(1, 1.0, {0.5, 2})) < 1e-15);
    CHECK_THROWS_AS(krawtchouk(5, 1.0, {0.5, 4}), Error);
}

TEST_CASE("krawtchouk: recurrence step and forward generation")
{
    const KrawtchoukParams prm{0.3, 10};
    for (double k : {0.0, 2.0, 7.0})
        CHECK(krawtchouk_recurrence_step(0, k, prm, 1.0, 0.0) == doctest::Approx(1.0 - k / (prm.p * prm.N)));
    CHECK(krawtchouk_recurrence_step(1, 0.0, prm, 1.0, 1.0) == doctest::Approx(1.0));
    for (int k = 0; k <= 10; ++k) {
        const auto rec = krawtchouk_by_recurrence(10, k, prm);
        for (int m = 0; m <= 10; ++m) {
            const double h = krawtchouk(m, k, prm);
            CHECK(std::abs(rec[m] - h) <= 1e-12 * std::max(1.0, std::abs(h)));
        }
    }
}

TEST_CASE("krawtchouk: recurrence residual over random points")
{
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> up(0.05, 0.95), uk(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int N = 2 + int(uk(gen) * 25);
        const KrawtchoukParams prm{up(gen), N};
        const int m = 1 + int(uk(gen) * (N - 1));
        if (m >= N)
            continue;
        CHECK(krawtchouk_recurrence_residual(m, uk(gen) * N, prm) < 1e-12);
    }
}

TEST_CASE("krawtchouk: orthogonality")
{
    const auto off = krawtchouk_orthogonality(0, 1, {0.3, 6});
    CHECK(std::abs(off.lhs) < 1e-12);
    CHECK(off.rhs == 0.0);
    const auto one = krawtchouk_orthogonality(1, 1, {0.5, 2});
    CHECK(one.rhs == doctest::Approx(0.5));
    CHECK(one.lhs == doctest::Approx(0.5));
    CHECK(krawtchouk_orthogonality(0, 0, {0.37, 9}).rhs == doctest::Approx(1.0));
    for (int N : {3, 8, 12})
        for (int n = 0; n <= N; ++n)
            for (int m = 0; m <= N; ++m)
                CHECK(krawtchouk_orthogonality(n, m, {0.35, N}).relative() < 1e-10);
}

TEST_CASE("krawtchouk: generating function")
{
    CHECK(krawtchouk_genfun_check(3, 0.0, {0.4, 6}) == 0.0);
    CHECK(krawtchouk_genfun_check(0, 0.37, {0.4, 8}) < 1e-12);
    CHECK(krawtchouk_genfun_check(3, -0.2, {0.4, 6}) < 1e-12);
}

TEST_CASE("vector_poly_A: special values")
{
    for (int c : {0, 1}) {
        CHECK(vector_poly_A(0, 2.3, {c, -0.5, 8}) == doctest::Approx(1.0));
        CHECK(vector_poly_A(2, 0.0, {c, -0.5, 8}) == doctest::Approx(1.0));
    }
    const int N = 8;
    const double d = -0.36, b = 2.5;
    const double expect = 1.0 + b / (0.5 * (-N / 2.0) * ((1.0 - N) / 2.0) * d);
    CHECK(vector_poly_A(1, b, {0, d, N}) == doctest::Approx(expect).epsilon(1e-14));
    CHECK_THROWS_AS(vector_poly_A(5, 1.0, {0, -1.0, 8}), Error);
    CHECK_THROWS_AS(vector_poly_A(1, 1.0, {2, -1.0, 8}), Error);
}

TEST_CASE("vector_poly_A: corrected recurrence")
{
    CHECK(vector_poly_A_recurrence_check(0, 0.0, {0, -4 * 0.09, 6}, {0.3, 0.0}) < 1e-10);
    CHECK(vector_poly_A_recurrence_check(0, 1.7, {1, -4 * 0.0625, 8}, std::polar(0.25, 0.8)) < 1e-10);
    CHECK(vector_poly_A_recurrence_check(0, 0.0, {0, 0.0, 8}, {0.0, 0.0}) == 0.0);
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> ur(0.05, 0.6), ub(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int N = 2 + int(ub(gen) * 14);
        const int c = int(ub(gen) * 2);
        const int amax = (N - c) / 2;
        const int a = int(ub(gen) * (amax + 1));
        const double r = ur(gen);
        // Below the top degree the relation holds for every b; at the top
        // degree only on the integer grid.
        const bool top = 2 * a + c >= N - 1;
        const int u = (N - c) / 2;
        const double b = top ? double(int(ub(gen) * (u + 1))) : ub(gen) * u;
        CHECK(vector_poly_A_recurrence_check(a, b, {c, -4 * r * r, N}, std::polar(r, 6.283 * ub(gen))) < 1e-10);
    }
}

TEST_CASE("vector_poly_A: biorthogonality")
{
    const auto off = vector_poly_A_biorthogonality(0, 1, 0, 0, {0, -1.0, 8});
    const auto diag = vector_poly_A_biorthogonality(1, 1, 0, 0, {0, -1.0, 8});
    CHECK(std::abs(off.lhs) < 1e-10 * std::abs(diag.rhs));
    const auto two = vector_poly_A_biorthogonality(0, 0, 0, 0, {0, -0.7, 2});
    CHECK(two.rhs == doctest::Approx(4.0 / -0.7));
    CHECK(two.lhs == doctest::Approx(two.rhs));
    CHECK(vector_poly_A_biorthogonality(1, 1, 1, 0, {1, -0.36, 5}).relative() < 1e-10);
    for (int N : {6, 7, 10, 11}) {
        const int c2 = 0, c1 = N % 2;
        const int u = N % 2 ? (N - 1) / 2 : N / 2;
        for (int a = 0; a <= u; ++a)
            for (int ap = 0; ap <= u; ++ap)
                CHECK(vector_poly_A_biorthogonality(a, ap, c1, c2, {c1, -0.64, N}).relative() < 1e-10);
    }
    CHECK_THROWS_AS(vector_poly_A_biorthogonality(0, 0, 1, 0, {1, -1.0, 8}), Error);
}

TEST_CASE("squeeze recurrence coefficients are finite")
{
    for (int N : {2, 7})
        for (int n = 0; n <= N; ++n)
            for (int j = 0; j <= 3; ++j)
                CHECK(std::isfinite(squeeze_recurrence_f(j, n, N)));
}
