#include "finosc/su2.hpp"

#include "finosc/kernels.hpp"

#include <cstdio>
#include <sstream>

namespace finosc {

template <class T>
GeneratorSet<T> build_generators(int N)
{
    if (N < 0)
        throw Error("build_generators: N must be non-negative");
    GeneratorSet<T> g;
    g.N = N;
    const int n1 = N + 1;
    g.Jp = Mat<T>::Zero(n1, n1);
    g.J3 = Mat<T>::Zero(n1, n1);
    g.Nhat = Mat<T>::Zero(n1, n1);
    for (int n = 0; n < N; ++n)
        g.Jp(n + 1, n) = std::sqrt(static_cast<T>(n + 1) * static_cast<T>(N - n));
    for (int n = 0; n <= N; ++n) {
        g.J3(n, n) = static_cast<T>(n) - static_cast<T>(N) / 2;
        g.Nhat(n, n) = static_cast<T>(n);
    }
    g.Jm = g.Jp.transpose();
    return g;
}

namespace {

enum class Shape { strictly_lower, strictly_upper, diagonal, other };

template <class T>
Shape classify(const Mat<T>& M)
{
    bool lower = true, upper = true, diag = true;
    for (Eigen::Index j = 0; j < M.cols(); ++j)
        for (Eigen::Index i = 0; i < M.rows(); ++i) {
            if (M(i, j) == std::complex<T>(0))
                continue;
            if (i <= j)
                lower = false;
            if (i >= j)
                upper = false;
            if (i != j)
                diag = false;
        }
    // The zero matrix is both; report it as nilpotent.
    if (lower)
        return Shape::strictly_lower;
    if (upper)
        return Shape::strictly_upper;
    if (diag)
        return Shape::diagonal;
    return Shape::other;
}

template <class T>
Mat<T> mpow(const Mat<T>& M, int e, Exec ex)
{
    Mat<T> out = Mat<T>::Identity(M.rows(), M.cols());
    for (int i = 0; i < e; ++i)
        out = kernels::matmul(out, M, ex);
    return out;
}

template <class T>
struct Scalars {
    std::complex<T> eta, xi;
    T mu;
};

template <class T>
Scalars<T> scalars(const Params& prm)
{
    const T rho = prm.rho, r = prm.r;
    const T delta = prm.delta, gamma = prm.gamma;
    Scalars<T> s;
    s.eta = std::polar(T(1), delta) * rho;
    s.xi = std::polar(T(1), gamma) * r;
    s.mu = std::log1p(rho * rho);
    return s;
}

}  // namespace

template <class T>
Mat<T> exp_poly_in_shift(const Mat<T>& M, std::complex<T> coeff, Exec ex)
{
    if (M.rows() != M.cols())
        throw Error("exp_poly_in_shift: matrix is not square");
    const Eigen::Index n = M.rows();
    const Shape shape = classify(M);
    if (shape == Shape::other)
        throw Error("exp_poly_in_shift: matrix is neither nilpotent triangular nor diagonal");
    if (shape == Shape::diagonal) {
        Mat<T> out = Mat<T>::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            out(i, i) = std::exp(coeff * M(i, i));
        return out;
    }
    const Mat<T> I = Mat<T>::Identity(n, n);
    const Mat<T> cM = coeff * M;
    Mat<T> acc = I;
    for (Eigen::Index a = n - 1; a >= 1; --a) {
        Mat<T> step = kernels::matmul<T>(cM, acc, ex);
        acc = I + step / static_cast<T>(a);
    }
    return acc;
}

template <class T>
Mat<T> build_D(const Params& prm, int N, Exec ex)
{
    const auto g = build_generators<T>(N);
    const auto s = scalars<T>(prm);
    const Mat<T> a = exp_poly_in_shift<T>(g.Jp, s.eta, ex);
    const Mat<T> b = exp_poly_in_shift<T>(g.J3, std::complex<T>(s.mu), ex);
    const Mat<T> c = exp_poly_in_shift<T>(g.Jm, -std::conj(s.eta), ex);
    return kernels::matmul<T>(kernels::matmul<T>(a, b, ex), c, ex);
}

template <class T>
Mat<T> build_S(const Params& prm, int N, Exec ex)
{
    const auto g = build_generators<T>(N);
    const auto s = scalars<T>(prm);
    const Mat<T> Jp2 = kernels::matmul<T>(g.Jp, g.Jp, ex);
    const Mat<T> Jm2 = kernels::matmul<T>(g.Jm, g.Jm, ex);
    const Mat<T> a = exp_poly_in_shift<T>(Jp2, s.xi / T(2), ex);
    const Mat<T> b = exp_poly_in_shift<T>(Jm2, -std::conj(s.xi) / T(2), ex);
    return kernels::matmul<T>(a, b, ex);
}

template <class T>
Mat<T> build_R(const Params& prm, int N, Exec ex)
{
    return kernels::matmul<T>(build_D<T>(prm, N, ex), build_S<T>(prm, N, ex), ex);
}

template <class T>
Mat<T> build_R_inverse(const Params& prm, int N, Exec ex)
{
    const auto g = build_generators<T>(N);
    const auto s = scalars<T>(prm);
    const Mat<T> Jp2 = kernels::matmul<T>(g.Jp, g.Jp, ex);
    const Mat<T> Jm2 = kernels::matmul<T>(g.Jm, g.Jm, ex);
    const Mat<T> f1 = exp_poly_in_shift<T>(Jm2, std::conj(s.xi) / T(2), ex);
    const Mat<T> f2 = exp_poly_in_shift<T>(Jp2, -s.xi / T(2), ex);
    const Mat<T> f3 = exp_poly_in_shift<T>(g.Jm, std::conj(s.eta), ex);
    const Mat<T> f4 = exp_poly_in_shift<T>(g.J3, std::complex<T>(-s.mu), ex);
    const Mat<T> f5 = exp_poly_in_shift<T>(g.Jp, -s.eta, ex);
    Mat<T> out = kernels::matmul<T>(f1, f2, ex);
    out = kernels::matmul<T>(out, f3, ex);
    out = kernels::matmul<T>(out, f4, ex);
    return kernels::matmul<T>(out, f5, ex);
}

template <class T>
Mat<T> conjugate(const Mat<T>& A, const Mat<T>& R, const Mat<T>& Rinv, Conjugation side, Exec ex)
{
    if (side == Conjugation::inverse_first)
        return kernels::matmul<T>(kernels::matmul<T>(Rinv, A, ex), R, ex);
    return kernels::matmul<T>(kernels::matmul<T>(R, A, ex), Rinv, ex);
}

bool BchReport::all_pass() const
{
    for (const auto& it : items)
        if (!it.pass)
            return false;
    return true;
}

std::vector<IdentityResult> BchReport::failures() const
{
    std::vector<IdentityResult> out;
    for (const auto& it : items)
        if (!it.pass)
            out.push_back(it);
    return out;
}

namespace {

// Residual relative to the operand scale (a bound on the size of the products
// that were summed), at least 1.
double rel_residual(const MatC& lhs, const MatC& rhs, double scale)
{
    return norm_inf(MatC(lhs - rhs)) / std::max(1.0, scale);
}

}  // namespace

BchReport verify_bch_suite(int N, std::complex<double> a1, std::complex<double> a2, double tol)
{
    BchReport rep;
    rep.N = N;
    const auto g = build_generators<double>(N);
    const Eigen::Index n1 = N + 1;
    const MatC I = MatC::Identity(n1, n1);
    auto mm = [](const MatC& a, const MatC& b) { return kernels::matmul<double>(a, b); };
    auto add = [&](const std::string& name, double res) {
        rep.items.push_back({name, res, tol, res <= tol});
    };

    // J3 J+-^n = J+-^n (J3 +- n)
    double shift = 0.0;
    for (int n = 1; n <= N + 1; ++n) {
        const MatC Pp = mpow(g.Jp, n, Exec::parallel);
        const MatC Pm = mpow(g.Jm, n, Exec::parallel);
        const double sc = (norm_inf(g.J3) + n) * norm_inf(Pp);
        shift = std::max(shift, rel_residual(mm(g.J3, Pp), mm(Pp, g.J3 + double(n) * I), sc));
        shift = std::max(shift, rel_residual(mm(g.J3, Pm), mm(Pm, g.J3 - double(n) * I), sc));
    }
    add("shift J3 J^n = J^n (J3 +- n)", shift);

    // [J+, J-^n] and [J-, J+^n]
    double comm = 0.0;
    for (int n = 1; n <= N + 1; ++n) {
        const MatC Pm = mpow(g.Jm, n, Exec::parallel);
        const MatC Pm1 = mpow(g.Jm, n - 1, Exec::parallel);
        const MatC Pp = mpow(g.Jp, n, Exec::parallel);
        const MatC Pp1 = mpow(g.Jp, n - 1, Exec::parallel);
        const double sc = 2.0 * norm_inf(g.Jp) * norm_inf(Pm) + (2.0 * n * norm_inf(g.J3) + n * (n - 1.0)) * norm_inf(Pm1);
        comm = std::max(comm, rel_residual(mm(g.Jp, Pm) - mm(Pm, g.Jp),
                                           2.0 * n * mm(g.J3, Pm1) + double(n) * (n - 1) * Pm1, sc));
        comm = std::max(comm, rel_residual(mm(g.Jm, Pp) - mm(Pp, g.Jm),
                                           -2.0 * n * mm(Pp1, g.J3) - double(n) * (n - 1) * Pp1, sc));
    }
    add("power commutators [J+-, J-+^n]", comm);

    struct Mono {
        std::complex<double> a;
        int deg;
    };
    const Mono monos[] = {{a1, 1}, {a2, 2}};
    double polycomm = 0.0, conj3 = 0.0, conjp = 0.0, conjm = 0.0;
    for (const auto& mono : monos) {
        auto P = [&](const MatC& X) -> MatC { return mono.a * mpow(X, mono.deg, Exec::parallel); };
        auto dP = [&](const MatC& X) -> MatC {
            return mono.a * double(mono.deg) * mpow(X, mono.deg - 1, Exec::parallel);
        };
        auto ddP = [&](const MatC& X) -> MatC {
            if (mono.deg < 2)
                return MatC::Zero(n1, n1);
            return mono.a * double(mono.deg * (mono.deg - 1)) * mpow(X, mono.deg - 2, Exec::parallel);
        };
        for (int sgn : {+1, -1}) {
            const MatC& X = sgn > 0 ? g.Jp : g.Jm;
            const MatC PX = P(X);
            polycomm = std::max(polycomm, rel_residual(mm(PX, g.J3) - mm(g.J3, PX), -double(sgn) * mm(X, dP(X)),
                                                       2.0 * norm_inf(PX) * norm_inf(g.J3)));
            const MatC E = exp_poly_in_shift<double>(PX, 1.0);
            const MatC Einv = exp_poly_in_shift<double>(PX, -1.0);
            conj3 = std::max(conj3, rel_residual(mm(mm(E, g.J3), Einv), g.J3 - double(sgn) * mm(X, dP(X)),
                                                 norm_inf(E) * norm_inf(g.J3) * norm_inf(Einv)));
        }
        const double psc = 2.0 * norm_inf(g.Jp) * norm_inf(P(g.Jm));
        polycomm = std::max(polycomm, rel_residual(mm(g.Jp, P(g.Jm)) - mm(P(g.Jm), g.Jp),
                                                   2.0 * mm(g.J3, dP(g.Jm)) + mm(g.Jm, ddP(g.Jm)), psc));
        polycomm = std::max(polycomm, rel_residual(mm(g.Jm, P(g.Jp)) - mm(P(g.Jp), g.Jm),
                                                   -2.0 * mm(dP(g.Jp), g.J3) - mm(g.Jp, ddP(g.Jp)), psc));
        {
            const MatC E = exp_poly_in_shift<double>(P(g.Jm), 1.0);
            const MatC Einv = exp_poly_in_shift<double>(P(g.Jm), -1.0);
            const MatC d1 = dP(g.Jm);
            const MatC rhs = g.Jp - 2.0 * mm(g.J3, d1) - mm(g.Jm, ddP(g.Jm) + mm(d1, d1));
            conjp = std::max(conjp, rel_residual(mm(mm(E, g.Jp), Einv), rhs, norm_inf(E) * norm_inf(g.Jp) * norm_inf(Einv)));
        }
        {
            const MatC E = exp_poly_in_shift<double>(P(g.Jp), 1.0);
            const MatC Einv = exp_poly_in_shift<double>(P(g.Jp), -1.0);
            const MatC d1 = dP(g.Jp);
            const MatC rhs = g.Jm + 2.0 * mm(d1, g.J3) + mm(g.Jp, ddP(g.Jp) - mm(d1, d1));
            conjm = std::max(conjm, rel_residual(mm(mm(E, g.Jm), Einv), rhs, norm_inf(E) * norm_inf(g.Jm) * norm_inf(Einv)));
        }
    }
    add("polynomial commutators [P(J), J3], [J+-, P(J-+)]", polycomm);
    add("exp(P(J+-)) J3 exp(-P(J+-))", conj3);
    add("exp(P(J-)) J+ exp(-P(J-))", conjp);
    add("exp(P(J+)) J- exp(-P(J+))", conjm);
    return rep;
}

std::string debug_print(const MatC& m)
{
    std::ostringstream os;
    char buf[96];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j)
                os << '\t';
            std::snprintf(buf, sizeof buf, "%.17g%+.17gi", m(i, j).real(), m(i, j).imag());
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

#define FINOSC_INSTANTIATE(T)                                                                     \
    template GeneratorSet<T> build_generators<T>(int);                                            \
    template Mat<T> exp_poly_in_shift<T>(const Mat<T>&, std::complex<T>, Exec);                    \
    template Mat<T> build_D<T>(const Params&, int, Exec);                                         \
    template Mat<T> build_S<T>(const Params&, int, Exec);                                         \
    template Mat<T> build_R<T>(const Params&, int, Exec);                                         \
    template Mat<T> build_R_inverse<T>(const Params&, int, Exec);                                 \
    template Mat<T> conjugate<T>(const Mat<T>&, const Mat<T>&, const Mat<T>&, Conjugation, Exec);

FINOSC_INSTANTIATE(double)
FINOSC_INSTANTIATE(long double)

}  // namespace finosc
