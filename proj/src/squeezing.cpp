#include "finosc/squeezing.hpp"

#include "finosc/hypergeometric.hpp"
#include "finosc/kernels.hpp"
#include "finosc/multi_ortho.hpp"
#include "finosc/su2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace finosc {

double kappa(double r, int N)
{
    if (N < 0)
        throw Error("kappa: N must be non-negative");
    return hyp_sum<double, double>({0.5, -0.5 * N, 0.5 * (1 - N)}, {}, 4.0 * r * r, N / 2);
}

AuxPolynomials aux_polynomials(double r, int N)
{
    AuxPolynomials a;
    const double r2 = r * r;
    const double n = N;
    double k = 0.0, g = 0.0, h = 0.0, j = 0.0, l = 0.0, m = 0.0;
    // w_i = (r^2)^i / i! (1/2)_i (-N)_{2i}
    double w = 1.0;
    for (int i = 0; 2 * i <= N; ++i) {
        if (i > 0)
            w *= r2 / i * (i - 0.5) * (-n + 2 * i - 2) * (-n + 2 * i - 1);
        const double di = i;
        k += w;
        g += w * (n - 4 * di);
        h += w * (2 * di - n / 2);
        j += w * (4 * di * di - 2 * di * n + n * n / 4);
        l += w * (-16 * di * di + 8 * di * n - n * n / 2 + n);
        // (r^2)^i / i! (1/2)_{i+1} (-N)_{2i+2} = w (i + 1/2)(2i - N)(2i + 1 - N)
        m += w * (di + 0.5) * (2 * di - n) * (2 * di + 1 - n);
    }
    a.kappa = k;
    a.G = g / k;
    a.H = h / k;
    a.J = j / k;
    a.L = l / k;
    a.M = r * m / k;
    return a;
}

MomentSet moments(const Params& prm, int N)
{
    const AuxPolynomials a = aux_polynomials(prm.r, N);
    const double rho2 = prm.rho * prm.rho;
    const double q = 1.0 + rho2;
    MomentSet s;
    s.norm_sq = a.kappa;
    s.j1 = prm.rho * std::cos(prm.delta) / q * a.G;
    s.j2 = -prm.rho * std::sin(prm.delta) / q * a.G;
    s.j3 = (1.0 - rho2) / q * a.H;
    s.j3sq = ((1.0 + rho2 * rho2) * a.J + rho2 * a.L + 4.0 * rho2 * std::cos(2.0 * prm.delta - prm.gamma) * a.M) /
             (q * q);
    return s;
}

template <class T>
MomentSet oracle_moments(const Params& prm, int N)
{
    const Mat<T> R = build_R<T>(prm, N);
    const auto g = build_generators<T>(N);
    Vec<T> psi = R.col(0);
    const T norm2 = psi.squaredNorm();
    psi /= std::sqrt(norm2);
    const std::complex<T> half(T(0.5), T(0));
    const std::complex<T> halfi(T(0), T(-0.5));
    const Mat<T> J1 = half * (g.Jp + g.Jm);
    const Mat<T> J2 = halfi * (g.Jp - g.Jm);
    auto expval = [&](const Mat<T>& op) {
        return static_cast<double>((psi.adjoint() * op * psi)(0, 0).real());
    };
    MomentSet s;
    s.norm_sq = static_cast<double>(norm2);
    s.j1 = expval(J1);
    s.j2 = expval(J2);
    s.j3 = expval(g.J3);
    s.j3sq = expval(g.J3 * g.J3);
    s.j1sq = expval(J1 * J1);
    s.j2sq = expval(J2 * J2);
    return s;
}

template MomentSet oracle_moments<double>(const Params&, int);
template MomentSet oracle_moments<long double>(const Params&, int);

double z2_axis(const MomentSet& m, int axis, int N)
{
    double var = 0.0, den = 0.0;
    switch (axis) {
    case 1:
        if (!m.j1sq)
            throw Error("z2_axis: axis 1 needs oracle second moments");
        var = *m.j1sq - m.j1 * m.j1;
        den = m.j2 * m.j2 + m.j3 * m.j3;
        break;
    case 2:
        if (!m.j2sq)
            throw Error("z2_axis: axis 2 needs oracle second moments");
        var = *m.j2sq - m.j2 * m.j2;
        den = m.j3 * m.j3 + m.j1 * m.j1;
        break;
    case 3:
        var = m.j3sq - m.j3 * m.j3;
        den = m.j1 * m.j1 + m.j2 * m.j2;
        break;
    default:
        throw Error("z2_axis: axis must be 1, 2 or 3");
    }
    if (!(den > 0.0))
        throw Error("undefined direction: transverse means vanish");
    return N * var / den;
}

double SqueezeCurve::min() const
{
    if (z2.empty())
        throw Error("SqueezeCurve: empty");
    return *std::min_element(z2.begin(), z2.end());
}

double SqueezeCurve::max() const
{
    if (z2.empty())
        throw Error("SqueezeCurve: empty");
    return *std::max_element(z2.begin(), z2.end());
}

SqueezeCurve sweep(int N, double rho, double r, int grid_size, Exec ex)
{
    if (grid_size < 2)
        throw Error("sweep: grid needs at least two points");
    SqueezeCurve c;
    c.N = N;
    c.rho = rho;
    c.r = r;
    c.theta.resize(grid_size);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int i = 0; i < grid_size; ++i)
        c.theta[i] = two_pi * i / (grid_size - 1);
    c.z2 = kernels::map_index<double>(grid_size, [&](long i) {
        const Params prm{rho, 0.5 * c.theta[i], r, 0.0};
        return z2_axis(moments(prm, N), 3, N);
    }, ex);
    return c;
}

bool ParityReport::even_only() const
{
    if (entries.empty())
        return false;
    for (const auto& e : entries)
        if (e.squeezed != (e.N % 2 == 0))
            return false;
    return true;
}

ParityReport parity_scan(const std::vector<int>& Ns, double rho, double r, int grid, Exec ex)
{
    ParityReport rep;
    rep.rho = rho;
    rep.r = r;
    rep.grid = grid;
    for (size_t i = 1; i < Ns.size(); ++i)
        if (Ns[i] != Ns[i - 1] + 1)
            throw Error("parity_scan: N range must be consecutive");
    for (int N : Ns) {
        const SqueezeCurve c = sweep(N, rho, r, grid, ex);
        ParityEntry e;
        e.N = N;
        e.min_z2 = c.min();
        e.squeezed = is_squeezed(e.min_z2);
        rep.entries.push_back(e);
    }
    return rep;
}

ContractionReport contraction_study(const std::vector<int>& Ns, const Params& base, Exec ex)
{
    ContractionReport rep;
    rep.rho = base.rho;
    rep.r = base.r;
    rep.delta = base.delta;
    rep.gamma = base.gamma;
    for (size_t i = 1; i < Ns.size(); ++i)
        if (Ns[i] <= Ns[i - 1])
            throw Error("contraction_study: N list must be increasing");

    rep.entries = kernels::map_index<ContractionEntry>(static_cast<long>(Ns.size()), [&](long idx) {
        const int N = Ns[idx];
        ContractionEntry e;
        e.N = N;
        e.rho_scaled = base.rho / std::sqrt(double(N));
        e.r_scaled = base.r / N;
        const Params prm{e.rho_scaled, base.delta, e.r_scaled, base.gamma};
        const MatC F = forward_operator_structured(prm, N, Exec::serial);
        for (int n = 0; n <= N; ++n)
            for (int j = -9; j <= 3; ++j) {
                if (n + j < 0 || n + j > N)
                    continue;
                const double a = std::abs(F(n + j, n));
                if (j >= -2 && j <= 2)
                    e.in_window += a;
                else
                    e.out_window += a;
            }
        e.ratio = e.in_window > 0 ? e.out_window / e.in_window : 0.0;
        e.kappa = kappa(e.r_scaled, N);
        return e;
    }, ex);

    if (rep.entries.size() >= 2) {
        rep.monotone_checked = true;
        for (size_t i = 1; i < rep.entries.size(); ++i)
            if (!(rep.entries[i].ratio < rep.entries[i - 1].ratio))
                rep.monotone = false;
        bool positive = true;
        for (const auto& e : rep.entries)
            positive = positive && e.ratio > 0;
        if (positive) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const double n = double(rep.entries.size());
            for (const auto& e : rep.entries) {
                const double x = std::log(double(e.N)), y = std::log(e.ratio);
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            rep.decay_exponent = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
        }
    }

    // kappa(r/N) <= (1 - r^2)^(-1/2) for r < 1: (-N)_{2i} <= N^{2i} termwise.
    if (std::abs(base.r) < 1.0) {
        const double limit = 1.0 / std::sqrt(1.0 - base.r * base.r);
        for (const auto& e : rep.entries)
            rep.kappa_bounded = rep.kappa_bounded && e.kappa <= limit * (1 + 1e-12);
    } else {
        rep.kappa_bounded = false;
    }

    for (int N : Ns) {
        const auto g = build_generators<double>(N);
        for (int n = 0; n <= std::min(3, N - 1); ++n) {
            LadderBound b;
            b.N = N;
            b.n = n;
            const double elem = g.Jp(n + 1, n).real() / std::sqrt(double(N));
            b.deviation = std::abs(elem - std::sqrt(double(n + 1)));
            b.bound = 2.0 * std::pow(double(n + 1), 1.5) / N;
            b.within = b.deviation < b.bound;
            rep.ladder_ok = rep.ladder_ok && b.within;
            rep.ladder.push_back(b);
        }
    }
    return rep;
}

}  // namespace finosc
