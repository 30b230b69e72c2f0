#include "finosc/special_polys.hpp"

#include <cmath>

namespace finosc {

double SumPair::relative() const
{
    const double s = std::max(scale, std::abs(rhs));
    return s == 0.0 ? 0.0 : std::abs(lhs - rhs) / s;
}

double krawtchouk(int m, double k, const KrawtchoukParams& prm)
{
    if (prm.p == 0.0)
        throw Error("krawtchouk: p must be non-zero");
    return generic::krawtchouk<double>(m, k, prm.p, prm.N);
}

double krawtchouk_recurrence_step(int m, double k, const KrawtchoukParams& prm, double K_m, double K_m1)
{
    const double p = prm.p;
    const int N = prm.N;
    if (m < 0 || m >= N)
        throw Error("krawtchouk_recurrence_step: m outside 0..N-1");
    const double up = p * (N - m);
    if (up == 0.0)
        throw Error("krawtchouk_recurrence_step: p(N-m) vanishes");
    const double down = m * (1.0 - p);
    return ((up + down - k) * K_m - down * K_m1) / up;
}

double krawtchouk_recurrence_residual(int m, double k, const KrawtchoukParams& prm)
{
    const double p = prm.p;
    const int N = prm.N;
    if (m < 0 || m >= N)
        throw Error("krawtchouk_recurrence_residual: m outside 0..N-1");
    const double up = p * (N - m);
    const double down = m * (1.0 - p);
    const double Kp = krawtchouk(m + 1, k, prm), K0 = krawtchouk(m, k, prm);
    const double Km = m > 0 ? krawtchouk(m - 1, k, prm) : 0.0;
    const double res = std::abs(up * Kp - (up + down - k) * K0 + down * Km);
    // Every series term has sign (-1)^j, so the sum of the term moduli is the
    // same series at argument -1/p.
    auto abs_series = [&](int mm) { return mm < 0 ? 0.0 : generic::krawtchouk<double>(mm, k, -p, N); };
    const double scale = (up + std::abs(up + down - k) + down) *
                         std::max({abs_series(m + 1), abs_series(m), abs_series(m - 1)});
    return scale == 0.0 ? 0.0 : res / scale;
}

std::vector<double> krawtchouk_by_recurrence(int m_max, double k, const KrawtchoukParams& prm)
{
    if (m_max > prm.N)
        throw Error("krawtchouk_by_recurrence: degree above N");
    std::vector<double> K(static_cast<size_t>(m_max + 1));
    K[0] = 1.0;
    double prev = 0.0;
    for (int m = 0; m < m_max; ++m) {
        K[m + 1] = krawtchouk_recurrence_step(m, k, prm, K[m], prev);
        prev = K[m];
    }
    return K;
}

SumPair krawtchouk_orthogonality(int n, int m, const KrawtchoukParams& prm)
{
    if (!(prm.p > 0.0 && prm.p < 1.0))
        throw Error("krawtchouk_orthogonality: p must lie in (0,1)");
    if (n < 0 || m < 0 || n > prm.N || m > prm.N)
        throw Error("krawtchouk_orthogonality: degree outside 0..N");
    SumPair out;
    out.lhs = generic::krawtchouk_ortho_lhs<double>(n, m, prm.p, prm.N, &out.scale);
    out.rhs = generic::krawtchouk_ortho_rhs<double>(n, m, prm.p, prm.N);
    return out;
}

double krawtchouk_genfun_check(int x, double t, const KrawtchoukParams& prm)
{
    const int N = prm.N;
    const double p = prm.p;
    const double lhs = std::pow(1.0 + t, N - x) * std::pow(1.0 - (1.0 - p) / p * t, x);
    double rhs = 0.0;
    double tn = 1.0;
    for (int n = 0; n <= N; ++n) {
        rhs += binomial(N, n) * krawtchouk(n, x, prm) * tn;
        tn *= t;
    }
    return std::abs(lhs - rhs);
}

double vector_poly_A(int a, double b, const VectorPolyParams& prm)
{
    return generic::vector_poly_A<double>(a, b, prm.c, prm.d, prm.N);
}

double squeeze_recurrence_f(int j, int n, int N)
{
    const double nn = n, NN = N;
    switch (j) {
    case 0:
        return (NN - 2 * nn) * (-1 + NN + 2 * NN * nn - 2 * nn * nn);
    case 1:
        return 6 * nn * nn - 12 * nn + NN * (5 - 6 * nn) + NN * NN + 9;
    case 2:
        return 4 * nn - 2 * NN - 8;
    case 3:
        return 1.0;
    default:
        throw Error("squeeze_recurrence_f: j outside 0..3");
    }
}

double vector_poly_A_recurrence_check(int a, double b, const VectorPolyParams& prm, std::complex<double> xi)
{
    const int c = prm.c, N = prm.N;
    const int n = 2 * a + c;
    if (a < 0 || n > N)
        throw Error("vector_poly_A_recurrence_check: degree outside the domain");
    const double r2 = std::norm(xi);
    auto A = [&](int aa) -> double {
        if (aa < 0 || 2 * aa + c > N)
            return 0.0;
        return vector_poly_A(aa, b, prm);
    };
    const double lhs = (b - a) * A(a);
    // At xi = 0 the squeeze terms vanish; A(a+1) is not evaluated since 1/d is undefined.
    const double up =
        r2 == 0.0 ? 0.0 : -(r2 / 4.0) / (a + 1) * pochhammer<double>(n + 1, 2) * pochhammer<double>(n - N, 2) * A(a + 1);
    const double down = -a * A(a - 1);
    double rhs = up + down;
    double scale = std::abs(lhs) + std::abs(up) + std::abs(down);
    for (int j = 0; j <= 3 && r2 != 0.0; ++j) {
        const double t = r2 / 2.0 * std::ldexp(1.0, j) * pochhammer<double>(-a, j) * squeeze_recurrence_f(j, n, N) * A(a - j);
        rhs += t;
        scale += std::abs(t);
    }
    return std::abs(lhs - rhs) / std::max(1.0, scale);
}

SumPair vector_poly_A_biorthogonality(int a, int ap, int c1, int c2, const VectorPolyParams& prm)
{
    SumPair out;
    out.lhs = generic::A_biortho_lhs<double>(a, ap, c1, c2, prm.d, prm.N, &out.scale);
    out.rhs = generic::A_biortho_rhs<double>(a, ap, c1, c2, prm.d, prm.N);
    return out;
}

}  // namespace finosc
