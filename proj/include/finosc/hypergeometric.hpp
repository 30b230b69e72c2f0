#pragma once

#include "finosc/common.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace finosc {

// Rising factorial (a)_j = a(a+1)...(a+j-1).
template <class S>
S pochhammer(const S& a, int j)
{
    S out = S(1);
    for (int i = 0; i < j; ++i)
        out *= a + S(i);
    return out;
}

struct HypSeriesSpec {
    std::vector<double> upper;
    std::vector<double> lower;
    std::complex<double> argument{0.0, 0.0};
    int termination_index = 0;
};

// Smallest -u over upper parameters u that are non-positive integers; -1 if
// the series does not terminate.
inline int natural_termination(const std::vector<double>& upper)
{
    int best = -1;
    for (double u : upper) {
        if (u <= 0 && u == std::floor(u)) {
            const int t = static_cast<int>(-u);
            best = best < 0 ? t : std::min(best, t);
        }
    }
    return best;
}

// sum_{j=0..T} prod(upper)_j / prod(lower)_j * z^j / j!, ascending j.
// S is the parameter field, Z the argument/result field (S must convert to Z).
template <class S, class Z>
Z hyp_sum(const std::vector<S>& upper, const std::vector<S>& lower, const Z& z, int T)
{
    Z sum = Z(1);
    Z term = Z(1);
    for (int j = 0; j < T; ++j) {
        S ratio = S(1);
        for (const S& u : upper)
            ratio *= u + S(j);
        if (ratio == S(0))
            break;
        for (const S& l : lower) {
            const S den = l + S(j);
            if (den == S(0))
                throw Error("hypergeometric series: lower parameter pole before truncation");
            ratio /= den;
        }
        ratio /= S(j + 1);
        term *= Z(ratio) * z;
        sum += term;
    }
    return sum;
}

inline std::complex<double> hyp_terminating(const HypSeriesSpec& spec)
{
    if (natural_termination(spec.upper) < 0)
        throw Error("hyp_terminating: no upper parameter is a non-positive integer");
    return hyp_sum<double, std::complex<double>>(spec.upper, spec.lower, spec.argument,
                                                 spec.termination_index);
}

// log n! and log C(N, k) via lgamma.
inline double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

inline double log_binomial(int N, int k)
{
    return log_factorial(N) - log_factorial(k) - log_factorial(N - k);
}

inline double binomial(int N, int k)
{
    if (k < 0 || k > N)
        return 0.0;
    k = std::min(k, N - k);
    double c = 1.0;
    for (int i = 1; i <= k; ++i)
        c = c * (N - k + i) / i;
    return c;
}

}  // namespace finosc
