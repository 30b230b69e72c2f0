#include "finosc/exact.hpp"

#include <doctest.h>

using namespace finosc;
using exact::Rational;

TEST_CASE("exact krawtchouk: values")
{
    CHECK(exact::krawtchouk(1, Rational(1), Rational(1, 2), 2) == 0);
    CHECK(exact::krawtchouk(3, Rational(0), Rational(1, 3), 6) == 1);
    // 1 - k/(pN) with k=2, p=1/3, N=5
    CHECK(exact::krawtchouk(1, Rational(2), Rational(1, 3), 5) == Rational(-1, 5));
}

TEST_CASE("exact krawtchouk: orthogonality for every pair")
{
    const auto one = exact::krawtchouk_orthogonality(1, 1, Rational(1, 2), 2);
    CHECK(one.rhs == Rational(1, 2));
    CHECK(one.equal());
    for (const Rational& p : {Rational(1, 3), Rational(3, 7)})
        for (int N : {1, 4, 9}) {
            const auto s = exact::krawtchouk_orthogonality_all(p, N);
            CHECK(s.ok());
            CHECK(s.checked == (N + 1) * (N + 1));
        }
}

TEST_CASE("exact A family: values and biorthogonality")
{
    CHECK(exact::vector_poly_A(0, Rational(5, 2), 1, Rational(-9, 25), 7) == 1);
    const auto two = exact::vector_poly_A_biorthogonality(0, 0, 0, 0, Rational(-9, 25), 2);
    CHECK(two.rhs == Rational(4) / Rational(-9, 25));
    CHECK(two.equal());
    for (int N : {4, 5, 8, 9}) {
        const auto s = exact::vector_poly_A_biorthogonality_all(Rational(-9, 25), N);
        CHECK(s.ok());
    }
}

TEST_CASE("exact and double paths agree")
{
    const Rational p(2, 7), d(-9, 25);
    for (int m = 0; m <= 6; ++m)
        CHECK(krawtchouk(m, 4.0, {2.0 / 7.0, 6}) ==
              doctest::Approx(static_cast<double>(exact::krawtchouk(m, Rational(4), p, 6))).epsilon(1e-13));
    for (int a = 0; a <= 3; ++a)
        CHECK(vector_poly_A(a, 2.0, {0, -0.36, 7}) ==
              doctest::Approx(static_cast<double>(exact::vector_poly_A(a, Rational(2), 0, d, 7))).epsilon(1e-12));
}

TEST_CASE("exact to_string")
{
    CHECK(exact::to_string(Rational(-9, 25)) == "-9/25");
    CHECK(exact::to_string(Rational(4)) == "4");
}
