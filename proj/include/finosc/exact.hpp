#pragma once

#include "finosc/special_polys.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace finosc::exact {

using Rational = boost::multiprecision::cpp_rational;

Rational krawtchouk(int m, const Rational& k, const Rational& p, int N);
Rational vector_poly_A(int a, const Rational& b, int c, const Rational& d, int N);

struct ExactPair {
    Rational lhs, rhs;
    bool equal() const { return lhs == rhs; }
};

ExactPair krawtchouk_orthogonality(int n, int m, const Rational& p, int N);
ExactPair vector_poly_A_biorthogonality(int a, int ap, int c1, int c2, const Rational& d, int N);

struct ExactSweep {
    int checked = 0;
    int mismatches = 0;
    bool ok() const { return checked > 0 && mismatches == 0; }
};

// Every (n, m) pair at dimension N.
ExactSweep krawtchouk_orthogonality_all(const Rational& p, int N);

// Every (a, a') pair for each c pair admissible at this N: (0,0) and (1,1)
// when N is even, (1,0) when N is odd.
ExactSweep vector_poly_A_biorthogonality_all(const Rational& d, int N);

std::string to_string(const Rational& q);

}  // namespace finosc::exact
