#include "finosc/matrix_elements.hpp"

#include "finosc/hypergeometric.hpp"
#include "finosc/kernels.hpp"
#include "finosc/special_polys.hpp"
#include "finosc/su2.hpp"

#include <cmath>

namespace finosc {

std::string to_string(TableKind kind)
{
    switch (kind) {
    case TableKind::lambda:
        return "lambda";
    case TableKind::phi:
        return "phi";
    case TableKind::R:
        return "R";
    case TableKind::R_inverse:
        return "Rinv";
    }
    return "?";
}

TableKind parse_table_kind(const std::string& s)
{
    if (s == "lambda")
        return TableKind::lambda;
    if (s == "phi")
        return TableKind::phi;
    if (s == "R")
        return TableKind::R;
    if (s == "Rinv")
        return TableKind::R_inverse;
    throw Error("unknown table kind: " + s);
}

namespace {

inline double parity_sign(int e) { return (e % 2) ? -1.0 : 1.0; }

// sign of x^e for real x
inline double power_sign(double x, int e) { return (x < 0 && (e % 2)) ? -1.0 : 1.0; }

// log sqrt((N-c)! n! / (N-n)!)
inline double log_sqrt_ratio(int N, int c, int n)
{
    return 0.5 * (log_factorial(N - c) + log_factorial(n) - log_factorial(N - n));
}

void check_indices(int i, int j, int N)
{
    if (N < 0 || i < 0 || j < 0 || i > N || j > N)
        throw Error("matrix element index outside 0..N");
}

}  // namespace

std::complex<double> lambda_elem(int k, int m, const Params& prm, int N)
{
    check_indices(k, m, N);
    if (prm.rho == 0.0)
        return k == m ? 1.0 : 0.0;
    const double rho = prm.rho;
    const double logmag = (m + k) * std::log(std::abs(rho)) - 0.5 * N * std::log1p(rho * rho) +
                          0.5 * (log_binomial(N, k) + log_binomial(N, m));
    const double sign = parity_sign(m) * power_sign(rho, m + k);
    const double K = krawtchouk(m, k, {prm.p(), N});
    return sign * std::exp(logmag) * K * std::polar(1.0, prm.delta * (k - m));
}

std::complex<double> phi_elem(int m, int n, const Params& prm, int N)
{
    check_indices(m, n, N);
    if (prm.r == 0.0)
        return m == n ? 1.0 : 0.0;
    if ((m - n) % 2 != 0)
        return 0.0;
    const int c = n % 2;
    const int a = (n - c) / 2;
    const int b = (m - c) / 2;
    const double r = prm.r;
    const double logmag = (a + b) * std::log(std::abs(r) / 2.0) - log_factorial(a) - log_factorial(b) +
                          log_sqrt_ratio(N, c, m) + log_sqrt_ratio(N, c, n);
    const double sign = parity_sign(a) * power_sign(r, a + b);
    const double A = vector_poly_A(a, b, {c, prm.d(), N});
    return sign * std::exp(logmag) * A * std::polar(1.0, prm.gamma * (b - a));
}

std::complex<double> R_elem(int k, int n, const Params& prm, int N)
{
    check_indices(k, n, N);
    if (prm.rho == 0.0)
        return phi_elem(k, n, prm, N);
    if (prm.r == 0.0)
        return lambda_elem(k, n, prm, N);
    const double rho = prm.rho, r = prm.r;
    const double lrho = std::log(std::abs(rho));
    const double lr2 = std::log(std::abs(r) / 2.0);
    const int c = n % 2;
    const int a = (n - c) / 2;
    const KrawtchoukParams kp{prm.p(), N};
    const VectorPolyParams vp{c, prm.d(), N};

    const double logPhi = -0.5 * N * std::log1p(rho * rho) + k * lrho + a * lr2 - log_factorial(a) +
                          0.5 * log_binomial(N, k) + log_sqrt_ratio(N, c, n);
    const double signPhi = power_sign(rho, k) * parity_sign(a) * power_sign(r, a);
    const double phasePhi = k * prm.delta - a * prm.gamma;

    std::complex<double> sum = 0.0;
    for (int b = 0; 2 * b + c <= N; ++b) {
        const int m = 2 * b + c;
        const double logTheta = m * lrho + b * lr2 - log_factorial(b) + 0.5 * log_binomial(N, m) +
                                log_sqrt_ratio(N, c, m);
        const double signTheta = parity_sign(m) * power_sign(rho, m) * power_sign(r, b);
        const double phaseTheta = -m * prm.delta + b * prm.gamma;
        const double mag = std::exp(logPhi + logTheta);
        const double poly = krawtchouk(m, k, kp) * vector_poly_A(a, b, vp);
        sum += signPhi * signTheta * mag * poly * std::polar(1.0, phasePhi + phaseTheta);
    }
    return sum;
}

std::complex<double> R_inverse_elem(int n, int k, const Params& prm, int N)
{
    check_indices(n, k, N);
    return R_elem(N - k, N - n, prm.tilde(), N);
}

namespace {

MatrixElementTable wrap(MatC m, TableKind kind, const Params& prm, int N)
{
    MatrixElementTable t;
    t.N = N;
    t.entries = std::move(m);
    t.kind = kind;
    t.params = prm;
    return t;
}

}  // namespace

MatrixElementTable lambda_table(const Params& prm, int N, Exec ex)
{
    auto m = kernels::fill_table<double>(N + 1, N + 1, [&](Eigen::Index k, Eigen::Index j) {
        return lambda_elem(int(k), int(j), prm, N);
    }, ex);
    return wrap(std::move(m), TableKind::lambda, prm, N);
}

MatrixElementTable phi_table(const Params& prm, int N, Exec ex)
{
    auto m = kernels::fill_table<double>(N + 1, N + 1, [&](Eigen::Index i, Eigen::Index j) {
        return phi_elem(int(i), int(j), prm, N);
    }, ex);
    return wrap(std::move(m), TableKind::phi, prm, N);
}

MatrixElementTable R_table(const Params& prm, int N, RMethod method, Exec ex)
{
    if (method == RMethod::convolution) {
        const MatC L = lambda_table(prm, N, ex).entries;
        const MatC P = phi_table(prm, N, ex).entries;
        return wrap(kernels::matmul<double>(L, P, ex), TableKind::R, prm, N);
    }
    auto m = kernels::fill_table<double>(N + 1, N + 1, [&](Eigen::Index k, Eigen::Index n) {
        return R_elem(int(k), int(n), prm, N);
    }, ex);
    return wrap(std::move(m), TableKind::R, prm, N);
}

MatrixElementTable R_inverse_table(const Params& prm, int N, RMethod method, Exec ex)
{
    if (method == RMethod::convolution) {
        // <n|S^-1|m> = conj(phi_{N-n,N-m}), <m|D^-1|k> = conj(lambda_{k,m})
        const MatC L = lambda_table(prm, N, ex).entries;
        const MatC P = phi_table(prm, N, ex).entries;
        MatC Sinv(N + 1, N + 1);
        for (int n = 0; n <= N; ++n)
            for (int m = 0; m <= N; ++m)
                Sinv(n, m) = std::conj(P(N - n, N - m));
        const MatC Dinv = L.adjoint();
        return wrap(kernels::matmul<double>(Sinv, Dinv, ex), TableKind::R_inverse, prm, N);
    }
    auto m = kernels::fill_table<double>(N + 1, N + 1, [&](Eigen::Index n, Eigen::Index k) {
        return R_inverse_elem(int(n), int(k), prm, N);
    }, ex);
    return wrap(std::move(m), TableKind::R_inverse, prm, N);
}

MatrixElementTable make_table(TableKind kind, const Params& prm, int N, Exec ex)
{
    switch (kind) {
    case TableKind::lambda:
        return lambda_table(prm, N, ex);
    case TableKind::phi:
        return phi_table(prm, N, ex);
    case TableKind::R:
        return R_table(prm, N, RMethod::closed_form, ex);
    case TableKind::R_inverse:
        return R_inverse_table(prm, N, RMethod::closed_form, ex);
    }
    throw Error("make_table: unknown kind");
}

double table_deviation(const MatC& closed, const MatC& oracle)
{
    if (closed.rows() != oracle.rows() || closed.cols() != oracle.cols())
        throw Error("table_deviation: shape mismatch");
    const double scale = max_abs(oracle);
    return max_abs(closed - oracle) / (scale > 0 ? scale : 1.0);
}

double lambda_unitarity_check(const Params& prm, int N)
{
    const MatC L = lambda_table(prm, N).entries;
    const MatC G = L.transpose() * L.conjugate();
    return max_abs(G - MatC::Identity(N + 1, N + 1));
}

double lambda_biorthogonality_check(const Params& prm, int N)
{
    const MatC L = lambda_table(prm, N).entries;
    double worst = 0.0;
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= N; ++m) {
            std::complex<double> s = 0.0;
            double scale = 0.0;
            for (int k = 0; k <= N; ++k) {
                    const std::complex<double> t = L(k, m) * std::conj(L(N - n, N - k));
                    s += t;
                    scale += std::abs(t);
                }
            worst = std::max(worst, std::abs(s - (n == m ? 1.0 : 0.0)) / std::max(1.0, scale));
        }
    return worst;
}

double phi_biorthogonality_check(int N, const Params& prm)
{
    const MatC P = phi_table(prm, N).entries;
    double worst = 0.0;
    for (int n = 0; n <= N; ++n)
        for (int np = 0; np <= N; ++np) {
            std::complex<double> s = 0.0;
            double scale = 0.0;
            for (int m = 0; m <= N; ++m) {
                    const std::complex<double> t = P(m, n) * std::conj(P(N - np, N - m));
                    s += t;
                    scale += std::abs(t);
                }
            worst = std::max(worst, std::abs(s - (n == np ? 1.0 : 0.0)) / std::max(1.0, scale));
        }
    return worst;
}

double R_biorthogonality_check(int N, const Params& prm)
{
    const MatC R = R_table(prm, N).entries;
    const MatC Rt = R_table(prm.tilde(), N).entries;
    double worst = 0.0;
    for (int n = 0; n <= N; ++n)
        for (int np = 0; np <= N; ++np) {
            std::complex<double> s = 0.0;
            double scale = 0.0;
            for (int k = 0; k <= N; ++k) {
                    const std::complex<double> t = R(k, n) * Rt(N - k, N - np);
                    s += t;
                    scale += std::abs(t);
                }
            worst = std::max(worst, std::abs(s - (n == np ? 1.0 : 0.0)) / std::max(1.0, scale));
        }
    return worst;
}

StateVector state(int n, const Params& prm, int N)
{
    if (n < 0 || n > N)
        throw Error("state: n outside 0..N");
    StateVector s;
    s.N = N;
    s.amplitudes.resize(N + 1);
    for (int k = 0; k <= N; ++k)
        s.amplitudes(k) = R_elem(k, n, prm, N);
    const double norm = s.amplitudes.norm();
    if (!(norm > 0))
        throw Error("state: zero column");
    s.amplitudes /= norm;
    s.normalized = true;
    return s;
}

std::complex<double> coherent_D_element(int m, std::complex<double> x, const Params& prm, int N)
{
    if (m < 0 || m > N)
        throw Error("coherent_D_element: m outside 0..N");
    // conj(eta)^m ((1-p)/p eta conj(x) - 1)^m = (conj(x) - conj(eta))^m, regular at rho = 0.
    const std::complex<double> eta = prm.eta();
    const std::complex<double> xb = std::conj(x);
    const double pref = std::exp(-0.5 * N * std::log1p(prm.rho * prm.rho) + 0.5 * log_binomial(N, m));
    return pref * ipow(1.0 + eta * xb, N - m) * ipow(xb - std::conj(eta), m);
}

std::complex<double> squeeze_coherent_element(int m, std::complex<double> y, const Params& prm, int N)
{
    if (m < 0 || m > N)
        throw Error("squeeze_coherent_element: m outside 0..N");
    const int s = m % 2;
    const int t = (m - s) / 2;
    const std::complex<double> xi = prm.xi();
    const std::complex<double> y2 = y * y;
    const double pref = std::exp(0.5 * (log_factorial(N) + log_factorial(m) - log_factorial(N - m)) -
                                 log_factorial(t));
    std::complex<double> sum = 0.0;
    for (int k = 0; k <= t; ++k) {
        const int z = N - 2 * k - s;
        // (xi/2)^t (-2 y^2/xi)^k = (xi/2)^(t-k) (-y^2)^k
        const std::complex<double> lead = ipow(xi / 2.0, t - k) * ipow(-y2, k) *
                                          pochhammer<double>(-t, k) / std::exp(log_factorial(2 * k + s));
        const std::complex<double> F = hyp_sum<double, std::complex<double>>(
            {-z / 2.0, (1.0 - z) / 2.0}, {}, -2.0 * std::conj(xi) * y2, z / 2);
        sum += lead * F;
    }
    return pref * ipow(y, s) * sum;
}

GeneratingResult generating_G(std::complex<double> x, std::complex<double> y, const Params& prm, int N)
{
    GeneratingResult g;
    // The convolution keeps the (1+rho^2)^-N coherent prefactor; the true
    // element carries (1+rho^2)^(-N/2).
    const double printed = std::pow(1.0 + prm.rho * prm.rho, -0.5 * N);
    for (int m = 0; m <= N; ++m) {
        const std::complex<double> t = printed * coherent_D_element(m, x, prm, N) * squeeze_coherent_element(m, y, prm, N);
        g.convolution += t;
        g.convolution_abs += std::abs(t);
    }

    const MatC R = R_table(prm, N).entries;
    const std::complex<double> xb = std::conj(x);
    std::complex<double> acc = 0.0;
    for (int k = 0; k <= N; ++k)
        for (int n = 0; n <= N; ++n)
        {
            const std::complex<double> t = std::sqrt(binomial(N, k) * binomial(N, n)) * ipow(xb, k) * ipow(y, n) * R(k, n);
            acc += t;
            g.double_sum_abs += std::abs(t);
        }
    const double pre = std::pow(1.0 + prm.rho * prm.rho, -N);
    g.double_sum = acc * pre;
    g.double_sum_abs *= pre;
    g.scale = g.convolution / g.double_sum;
    g.expected_scale = std::pow(1.0 + prm.rho * prm.rho, 0.5 * N);
    return g;
}

LadderResidual ladder_check(int n, const Params& prm, int N)
{
    if (n < 0 || n > N)
        throw Error("ladder_check: n outside 0..N");
    const MatC R = R_table(prm, N).entries;
    const MatC Ro = build_R<double>(prm, N);
    const auto g = build_generators<double>(N);
    const MatC Jp3 = g.Jp * g.Jp * g.Jp;
    const MatC Jm3 = g.Jm * g.Jm * g.Jm;
    const MatC up = Ro * Jp3;
    const MatC down = Ro * Jm3;
    const double scale = std::max(1.0, max_abs(Ro) * max_abs(Jp3));

    LadderResidual res;
    const double cu = -pochhammer<double>(n + 1, 3) * pochhammer<double>(n - N, 3);
    const double cd = -pochhammer<double>(-n, 3) * pochhammer<double>(N - n + 1, 3);
    for (int k = 0; k <= N; ++k) {
        const std::complex<double> lu = n + 3 <= N ? std::sqrt(std::max(cu, 0.0)) * R(k, n + 3) : 0.0;
        const std::complex<double> ld = n - 3 >= 0 ? std::sqrt(std::max(cd, 0.0)) * R(k, n - 3) : 0.0;
        res.raise = std::max(res.raise, std::abs(lu - up(k, n)) / scale);
        res.lower = std::max(res.lower, std::abs(ld - down(k, n)) / scale);
    }
    return res;
}

}  // namespace finosc
