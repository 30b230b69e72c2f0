#pragma once

#include "finosc/hypergeometric.hpp"

#include <vector>

namespace finosc {

struct KrawtchoukParams {
    double p = 0.5;
    int N = 0;
};

// c in {0,1}; d = -4 r^2.
struct VectorPolyParams {
    int c = 0;
    double d = -1.0;
    int N = 0;
};

struct SumPair {
    double lhs = 0.0;
    double rhs = 0.0;
    double scale = 0.0;  // sum of the moduli of the lhs terms

    // |lhs - rhs| / max(scale, |rhs|)
    double relative() const;
};

// Scalar-generic forms shared by the double and the exact rational paths.
namespace generic {

// K_m(k; p, N) = 2F1(-m, -k; -N; 1/p)
template <class S>
S krawtchouk(int m, const S& k, const S& p, int N)
{
    if (m < 0 || m > N)
        throw Error("krawtchouk: degree outside 0..N");
    return hyp_sum<S, S>({S(-m), -k}, {S(-N)}, S(1) / p, m);
}

// A_a^(c)(b; d, N) = 2F3(-a, -b; c+1/2, (c-N)/2, (c-N+1)/2; 1/d)
template <class S>
S vector_poly_A(int a, const S& b, int c, const S& d, int N)
{
    if (c != 0 && c != 1)
        throw Error("vector_poly_A: c must be 0 or 1");
    if (a < 0 || 2 * a + c > N)
        throw Error("vector_poly_A: degree outside the domain 2a+c <= N");
    if (a == 0)
        return S(1);
    if (d == S(0))
        throw Error("vector_poly_A: d must be non-zero");
    const S half = S(1) / S(2);
    return hyp_sum<S, S>({S(-a), -b}, {S(c) + half, S(c - N) / S(2), S(c - N + 1) / S(2)}, S(1) / d, a);
}

// abs_sum, when given, receives the sum of the term moduli.
template <class S>
S krawtchouk_ortho_lhs(int n, int m, const S& p, int N, S* abs_sum = nullptr)
{
    using std::abs;
    S sum = S(0);
    for (int x = 0; x <= N; ++x) {
        S w = S(1);
        for (int i = 1; i <= x; ++i)
            w = w * S(N - x + i) / S(i);
        w *= ipow(p, x) * ipow(S(1) - p, N - x);
        const S t = w * krawtchouk<S>(m, S(x), p, N) * krawtchouk<S>(n, S(x), p, N);
        sum += t;
        if (abs_sum)
            *abs_sum += abs(t);
    }
    return sum;
}

template <class S>
S krawtchouk_ortho_rhs(int n, int m, const S& p, int N)
{
    if (n != m)
        return S(0);
    S fact = S(1);
    for (int i = 1; i <= n; ++i)
        fact *= S(i);
    const S sign = (n % 2) ? S(-1) : S(1);
    return sign * fact / pochhammer(S(-N), n) * ipow((S(1) - p) / p, n);
}

// Half-range u and the c pair for the A-biorthogonality sum.
inline int biortho_u(int c1, int c2, int N)
{
    if (c1 == c2) {
        if ((N - 2 * c1) % 2 != 0 || N < 2 * c1)
            throw Error("A-biorthogonality: even case needs N = 2u + 2c");
        return (N - 2 * c1) / 2;
    }
    if (c1 == 1 && c2 == 0) {
        if (N % 2 != 1)
            throw Error("A-biorthogonality: interlaced case needs odd N");
        return (N - 1) / 2;
    }
    throw Error("A-biorthogonality: c pair must be (c,c) or (1,0)");
}

template <class S>
S A_biortho_lhs(int a, int ap, int c1, int c2, const S& d, int N, S* abs_sum = nullptr)
{
    using std::abs;
    const int u = biortho_u(c1, c2, N);
    S sum = S(0);
    S binom = S(1);
    for (int b = 0; b <= u; ++b) {
        if (b > 0)
            binom = binom * S(u - b + 1) / S(b);
        const S sign = (b % 2) ? S(-1) : S(1);
        const S t = sign * binom * vector_poly_A<S>(a, S(b), c1, d, N) * vector_poly_A<S>(u - ap, S(u - b), c2, d, N);
        sum += t;
        if (abs_sum)
            *abs_sum += abs(t);
    }
    return sum;
}

template <class S>
S A_biortho_rhs(int a, int ap, int c1, int c2, const S& d, int N)
{
    const int u = biortho_u(c1, c2, N);
    if (a != ap)
        return S(0);
    const S half = S(1) / S(2);
    S w;
    if (c1 == c2)
        w = ipow(pochhammer(S(c1) + half, u), 2);
    else
        w = pochhammer(half, u) * pochhammer(S(3) / S(2), u);
    S fact = S(1);
    for (int i = 1; i <= a; ++i)
        fact *= S(i);
    return fact / (pochhammer(S(-u), a) * w) * ipow(S(1) / d, u);
}

}  // namespace generic

double krawtchouk(int m, double k, const KrawtchoukParams& prm);

// K_{m+1} from the three-term recurrence.
double krawtchouk_recurrence_step(int m, double k, const KrawtchoukParams& prm, double K_m, double K_m1);

// |p(N-m) K_{m+1} - (p(N-m) + m(1-p) - k) K_m + m(1-p) K_{m-1}| with the
// hypergeometric K, over (sum of coefficient moduli) * (largest sum of series
// term moduli).
double krawtchouk_recurrence_residual(int m, double k, const KrawtchoukParams& prm);

// K_0..K_{m_max} at k by forward recurrence.
std::vector<double> krawtchouk_by_recurrence(int m_max, double k, const KrawtchoukParams& prm);

SumPair krawtchouk_orthogonality(int n, int m, const KrawtchoukParams& prm);

// |(1+t)^(N-x) (1 - ((1-p)/p) t)^x - sum_n C(N,n) K_n(x) t^n|
double krawtchouk_genfun_check(int x, double t, const KrawtchoukParams& prm);

double vector_poly_A(int a, double b, const VectorPolyParams& prm);

// Coefficients f_n^(j), j = 0..3, of the three-step squeeze recurrence.
double squeeze_recurrence_f(int j, int n, int N);

// Residual of the A-family recurrence at degree a, point b, with |xi|^2 = r2:
//   (b-a) A_a = -(r2/4)/(a+1) (n+1)_2 (n-N)_2 A_{a+1} - a A_{a-1}
//               + (r2/2) sum_j 2^j (-a)_j f_n^(j) A_{a-j},   n = 2a+c.
// Out-of-domain A are zero. The residual is divided by max(1, sum of |terms|).
double vector_poly_A_recurrence_check(int a, double b, const VectorPolyParams& prm, std::complex<double> xi);

// Interlaced biorthogonality of the A-families; c_pair = (c,c) for N = 2u+2c,
// (1,0) for N = 2u+1.
SumPair vector_poly_A_biorthogonality(int a, int ap, int c1, int c2, const VectorPolyParams& prm);

}  // namespace finosc
