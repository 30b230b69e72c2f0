#include "finosc/multi_ortho.hpp"

#include "finosc/kernels.hpp"
#include "finosc/matrix_elements.hpp"
#include "finosc/su2.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace finosc {

namespace {

inline int floor_div(int a, int b)
{
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline std::complex<double> at_or_zero(const MatC& m, int i, int j)
{
    if (i < 0 || j < 0 || i >= m.rows() || j >= m.cols())
        return 0.0;
    return m(i, j);
}

double cond3(const Mat3& m)
{
    Eigen::JacobiSVD<Mat3> svd(m);
    const auto& s = svd.singularValues();
    if (s(2) == 0.0)
        return INFINITY;
    return s(0) / s(2);
}

Mat3 reversal()
{
    Mat3 J = Mat3::Zero();
    J(0, 2) = J(1, 1) = J(2, 0) = 1.0;
    return J;
}

}  // namespace

std::complex<double> BandOperator::coeff(int n, int j) const { return at_or_zero(entries, n + j, n); }

std::vector<int> BandOperator::nonzero_offsets(double rel_tol) const
{
    const double scale = max_abs(entries);
    std::vector<int> out;
    for (int j = -N; j <= N; ++j) {
        double best = 0.0;
        for (int n = 0; n <= N; ++n)
            best = std::max(best, std::abs(coeff(n, j)));
        if (best > rel_tol * scale)
            out.push_back(j);
    }
    return out;
}

std::pair<int, int> BandOperator::observed_support(double rel_tol) const
{
    const auto offs = nonzero_offsets(rel_tol);
    if (offs.empty())
        return {0, 0};
    return {offs.front(), offs.back()};
}

double out_of_band_mass(const MatC& entries, int lo, int hi, double scale)
{
    if (scale <= 0.0)
        scale = max_abs(entries);
    if (scale == 0.0)
        return 0.0;
    double worst = 0.0;
    for (Eigen::Index j = 0; j < entries.cols(); ++j)
        for (Eigen::Index i = 0; i < entries.rows(); ++i) {
            const long off = static_cast<long>(i - j);
            if (off < lo || off > hi)
                worst = std::max(worst, std::abs(entries(i, j)));
        }
    return worst / scale;
}

template <class T>
Mat<T> forward_operator_oracle(const Params& prm, int N, Exec ex)
{
    const Mat<T> R = build_R<T>(prm, N, ex);
    const Mat<T> Rinv = build_R_inverse<T>(prm, N, ex);
    const auto g = build_generators<T>(N);
    return conjugate<T>(g.Nhat, R, Rinv, Conjugation::inverse_first, ex);
}

template Mat<double> forward_operator_oracle<double>(const Params&, int, Exec);
template Mat<long double> forward_operator_oracle<long double>(const Params&, int, Exec);

MatC forward_operator_structured(const Params& prm, int N, Exec ex)
{
    const auto g = build_generators<double>(N);
    const Eigen::Index n1 = N + 1;
    const MatC I = MatC::Identity(n1, n1);
    auto mm = [ex](const MatC& a, const MatC& b) { return kernels::matmul<double>(a, b, ex); };
    const double p = prm.p(), rho = prm.rho, r = prm.r;
    const double dl = prm.delta, gm = prm.gamma;
    const std::complex<double> xb = std::conj(prm.xi());
    const std::complex<double> i1(0.0, 1.0);

    const MatC Jm2 = mm(g.Jm, g.Jm);
    const MatC Jm3 = mm(Jm2, g.Jm);
    const MatC A0 = g.J3 + xb * Jm2;
    const MatC Am = g.Jm;
    const MatC Ap = g.Jp - xb * mm(I + 2.0 * g.J3, g.Jm) - xb * xb * Jm3;
    const MatC Ap2 = mm(Ap, Ap);
    const MatC Ap3 = mm(Ap2, Ap);

    MatC X = (1.0 - 2.0 * p) * A0;
    X += rho * std::exp(-i1 * dl) * (1.0 - p) * Am;
    X += rho * (1.0 - p) * (std::exp(i1 * dl) - r * std::exp(-i1 * (dl - gm))) * Ap;
    X += (1.0 - 2.0 * p) * r * std::exp(i1 * gm) * Ap2;
    X -= rho * r * r * std::exp(-i1 * (dl - 2.0 * gm)) * (1.0 - p) * Ap3;
    X -= 2.0 * rho * r * std::exp(-i1 * (dl - gm)) * (1.0 - p) * mm(Ap, A0);
    X += 0.5 * N * I;
    return X;
}

MatC difference_operator_structured(const Params& prm, int N, Exec ex)
{
    const auto g = build_generators<double>(N);
    const Eigen::Index n1 = N + 1;
    auto mm = [ex](const MatC& a, const MatC& b) { return kernels::matmul<double>(a, b, ex); };
    const std::complex<double> eta = prm.eta(), etab = std::conj(eta), xi = prm.xi(), xib = std::conj(xi);
    const double emu = 1.0 + prm.rho * prm.rho;

    // Images of J+, J-, J3 under X -> D X D^-1, one factor at a time.
    // e^{-conj(eta) J-}: J+ -> J+ + 2 conj(eta) J3 - conj(eta)^2 J-, J3 -> J3 - conj(eta) J-.
    // e^{mu J3}:         J+ -> e^mu J+, J- -> e^-mu J-.
    // e^{eta J+}:        J- -> J- + 2 eta J3 - eta^2 J+, J3 -> J3 - eta J+.
    const MatC Jm1 = g.Jm + 2.0 * eta * g.J3 - eta * eta * g.Jp;
    const MatC J31 = g.J3 - eta * g.Jp;
    const MatC Jp2 = emu * g.Jp;
    const MatC Jm2 = Jm1 / emu;
    const MatC Jp = Jp2 + 2.0 * etab * J31 - etab * etab * Jm2;
    const MatC J3 = J31 - etab * Jm2;
    const MatC& Jm = Jm2;

    // S (J3 + N/2) S^-1 = J3 - xi J+^2 - conj(xi) (J-')^2 + N/2,
    // J-' = J- + 2 xi J+ J3 + xi J+ - xi^2 J+^3.
    const MatC Jp_sq = mm(Jp, Jp);
    const MatC Jmp = Jm + 2.0 * xi * mm(Jp, J3) + xi * Jp - xi * xi * mm(Jp_sq, Jp);
    MatC X = J3 - xi * Jp_sq - xib * mm(Jmp, Jmp);
    X += 0.5 * N * MatC::Identity(n1, n1);
    return X;
}

MatC difference_operator(const Params& prm, int N, BandSource src, Exec ex)
{
    if (src == BandSource::structured)
        return difference_operator_structured(prm, N, ex);
    const MatX R = build_R<long double>(prm, N, ex);
    const MatX Rinv = build_R_inverse<long double>(prm, N, ex);
    const auto g = build_generators<long double>(N);
    return to_double(conjugate<long double>(g.Nhat, R, Rinv, Conjugation::forward_first, ex));
}

MatC forward_operator(const Params& prm, int N, BandSource src, Exec ex)
{
    if (src == BandSource::structured)
        return forward_operator_structured(prm, N, ex);
    return to_double(forward_operator_oracle<long double>(prm, N, ex));
}

namespace {

// N ||R|| ||R^-1||: the size of the products summed in a conjugation.
double conjugation_scale(const Params& prm, int N)
{
    return N * norm_inf(build_R<double>(prm, N)) * norm_inf(build_R_inverse<double>(prm, N));
}

BandOperator make_band(MatC entries, int N, int lo, int hi, std::string convention, double tol,
                       const char* what, double scale = 0.0)
{
    BandOperator b;
    b.N = N;
    b.entries = std::move(entries);
    b.band_lo = lo;
    b.band_hi = hi;
    b.convention = std::move(convention);
    b.out_of_band = out_of_band_mass(b.entries, lo, hi, scale);
    if (b.out_of_band > tol)
        throw Error(std::string(what) + ": out-of-band mass " + std::to_string(b.out_of_band) +
                    " exceeds tolerance");
    return b;
}

}  // namespace

BandOperator extract_recurrence_band(const Params& prm, int N, BandSource src, double tol)
{
    if (N < 1)
        throw Error("extract_recurrence_band: N must be at least 1");
    return make_band(forward_operator(prm, N, src), N, -9, 3, "entry [n+j][n] carries c_n^(j)", tol,
                     "extract_recurrence_band", src == BandSource::oracle ? conjugation_scale(prm, N) : 0.0);
}

BandOperator inverse_recurrence_band(const Params& prm, int N, BandSource src, double tol)
{
    if (N < 1)
        throw Error("inverse_recurrence_band: N must be at least 1");
    MatC Ft = forward_operator(prm, N, src).transpose();
    return make_band(std::move(Ft), N, -3, 9, "entry [n+j][n] carries the coefficient of Psi^-1_{n+j} in k Psi^-1_n",
                     tol, "inverse_recurrence_band", src == BandSource::oracle ? conjugation_scale(prm, N) : 0.0);
}

BandOperator difference_band(const Params& prm, int N, BandSource src, double tol)
{
    if (N < 1)
        throw Error("difference_band: N must be at least 1");
    const MatC Dm = difference_operator(prm, N, src);
    return make_band(Dm.transpose(), N, -6, 6, "entry [k+j][k] carries m_k^(j)", tol, "difference_band",
                     src == BandSource::oracle ? conjugation_scale(prm, N) : 0.0);
}

double difference_equation_residual(const BandOperator& band, const MatC& R)
{
    const int N = band.N;
    double worst = 0.0;
    for (int n = 0; n <= N; ++n)
        for (int k = 0; k <= N; ++k) {
            std::complex<double> s = 0.0;
            for (int j = band.band_lo; j <= band.band_hi; ++j)
                if (k + j >= 0 && k + j <= N)
                    s += band.coeff(k, j) * R(k + j, n);
            worst = std::max(worst, std::abs(double(n) * R(k, n) - s));
        }
    const double scale = (N + norm_inf(band.entries)) * max_abs(R);
    return scale == 0.0 ? worst : worst / scale;
}

GammaBlocks assemble_gamma(const BandOperator& band)
{
    if (band.band_lo != -9 || band.band_hi != 3)
        throw Error("assemble_gamma: band must have shape [-9, 3]");
    GammaBlocks g;
    g.N = band.N;
    g.n_max = top_block(band.N);
    g.blocks.resize(g.n_max < 0 ? 0 : g.n_max + 1);
    for (int n = 0; n <= g.n_max; ++n)
        for (int m = -3; m <= 1; ++m) {
            Mat3 B = Mat3::Zero();
            for (int i = 0; i < 3; ++i)
                for (int l = 0; l < 3; ++l) {
                    const int j = 3 * m + l - i;
                    if (j < -9 || j > 3)
                        continue;
                    const int col = 3 * n + i;
                    if (col + j < 0 || col + j > band.N || col > band.N)
                        continue;
                    B(i, l) = band.coeff(col, j);
                }
            g.blocks[n][m + 3] = B;
        }
    return g;
}

double gamma_triangularity_defect(const GammaBlocks& g)
{
    double worst = 0.0;
    for (int n = 0; n <= g.n_max; ++n) {
        const Mat3& up = g.at(n, 1);
        const Mat3& lo = g.at(n, -3);
        const double su = std::max(max_abs(up), 1e-300);
        const double sl = std::max(max_abs(lo), 1e-300);
        for (int i = 0; i < 3; ++i)
            for (int l = 0; l < 3; ++l) {
                if (l > i)
                    worst = std::max(worst, std::abs(up(i, l)) / su);
                if (l < i)
                    worst = std::max(worst, std::abs(lo(i, l)) / sl);
            }
    }
    return worst;
}

QColumn solve_Q(const GammaBlocks& g, double k, int n_max, double cond_limit)
{
    if (n_max > g.n_max)
        throw Error("solve_Q: n_max beyond the available blocks");
    QColumn col;
    col.k = k;
    col.Q.reserve(std::max(n_max + 1, 1));
    col.Q.push_back(Mat3::Identity());
    for (int n = 0; n < n_max; ++n) {
        const Mat3& G1 = g.at(n, 1);
        const double c = cond3(G1);
        col.max_condition = std::max(col.max_condition, c);
        if (!(c <= cond_limit)) {
            col.well_conditioned = false;
            col.failed_step = n;
            break;
        }
        Mat3 rhs = k * col.Q[n];
        for (int m = -3; m <= 0; ++m)
            if (n + m >= 0)
                rhs -= g.at(n, m) * col.Q[n + m];
        col.Q.push_back(G1.partialPivLu().solve(rhs));
    }
    return col;
}

std::vector<QColumn> solve_Q_grid(const GammaBlocks& g, int n_max, Exec ex)
{
    return kernels::map_index<QColumn>(g.N + 1, [&](long k) { return solve_Q(g, double(k), n_max); }, ex);
}

MatrixPolyLayer MatrixPolyLayer::build(const Params& prm, int N, Exec ex)
{
    MatrixPolyLayer L;
    L.N = N;
    L.params = prm;
    L.n_max = top_block(N);
    if (L.n_max < 0)
        throw Error("MatrixPolyLayer: N too small for a complete 3-block");
    L.R = R_table(prm, N, RMethod::closed_form, ex).entries;
    L.Rinv = R_inverse_table(prm, N, RMethod::closed_form, ex).entries;
    L.Rtilde = R_table(prm.tilde(), N, RMethod::closed_form, ex).entries;
    L.F = forward_operator_structured(prm, N, ex);
    L.band = extract_recurrence_band(prm, N, BandSource::structured);
    L.band_tilde = extract_recurrence_band(prm.tilde(), N, BandSource::structured);
    L.gamma = assemble_gamma(L.band);
    L.gamma_tilde = assemble_gamma(L.band_tilde);
    L.Q = solve_Q_grid(L.gamma, L.n_max, ex);
    L.Qtilde = solve_Q_grid(L.gamma_tilde, L.n_max, ex);
    return L;
}

Vec3 MatrixPolyLayer::psi(int k, int n) const
{
    Vec3 v;
    for (int l = 0; l < 3; ++l)
        v(l) = at_or_zero(R, k, 3 * n + l);
    return v;
}

Vec3 MatrixPolyLayer::psi_inv(int n, int k) const
{
    Vec3 v;
    for (int l = 0; l < 3; ++l)
        v(l) = at_or_zero(Rinv, 3 * n + l, k);
    return v;
}

SolveQReport psi_Q_residual(const MatrixPolyLayer& L)
{
    SolveQReport rep;
    for (int k = 0; k <= L.N; ++k) {
        const QColumn& col = L.Q[k];
        rep.max_condition = std::max(rep.max_condition, col.max_condition);
        if (!col.well_conditioned) {
            ++rep.columns_skipped;
            continue;
        }
        ++rep.columns_used;
        const Vec3 p0 = L.psi(k, 0);
        for (int n = 0; n <= L.n_max; ++n) {
            const Vec3 pn = L.psi(k, n);
            const double den = std::max(pn.norm(), col.Q[n].norm() * p0.norm());
            if (den == 0.0)
                continue;
            rep.residual = std::max(rep.residual, (pn - col.Q[n] * p0).norm() / den);
        }
    }
    return rep;
}

double gamma_recurrence_residual(const MatrixPolyLayer& L)
{
    double worst = 0.0;
    for (int k = 0; k <= L.N; ++k) {
        const QColumn& col = L.Q[k];
        const int top = static_cast<int>(col.Q.size()) - 2;
        for (int n = 0; n <= top; ++n) {
            Mat3 s = Mat3::Zero();
            double scale = std::abs(double(k)) * max_abs(col.Q[n]);
            for (int m = -3; m <= 1; ++m)
                if (n + m >= 0) {
                    const Mat3 t = L.gamma.at(n, m) * col.Q[n + m];
                    s += t;
                    scale += max_abs(t);
                }
            worst = std::max(worst, max_abs(Mat3(double(k) * col.Q[n] - s)) / std::max(scale, 1.0));
        }
    }
    return worst;
}

double finite_difference_residual(const MatrixPolyLayer& L, int (*order)(int n))
{
    double worst = 0.0;
    for (int n = 0; n <= L.n_max; ++n) {
        const int ord = order(n);
        if (ord + 1 > L.N + 1)
            continue;
        bool ok = true;
        for (int k = 0; k <= L.N; ++k)
            ok = ok && L.Q[k].well_conditioned;
        if (!ok)
            continue;
        double scale = 0.0;
        for (int k = 0; k <= L.N; ++k)
            scale = std::max(scale, max_abs(L.Q[k].Q[n]));
        for (int i = 0; i < 3; ++i)
            for (int l = 0; l < 3; ++l)
                for (int start = 0; start + ord <= L.N; ++start) {
                    // ord-th forward difference from start
                    std::complex<double> s = 0.0;
                    double binom = 1.0;
                    for (int t = 0; t <= ord; ++t) {
                        if (t > 0)
                            binom = binom * (ord - t + 1) / t;
                        const double sign = ((ord - t) % 2) ? -1.0 : 1.0;
                        s += sign * binom * L.Q[start + t].Q[n](i, l);
                    }
                    worst = std::max(worst, std::abs(s) / (std::ldexp(1.0, ord) * std::max(scale, 1e-300)));
                }
    }
    return worst;
}

Mat3 weight_matrix(const MatrixPolyLayer& L, int k)
{
    Mat3 W;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            W(i, j) = at_or_zero(L.R, k, i) * at_or_zero(L.Rtilde, L.N - k, j);
    return W;
}

WeightReport weight_biorthogonality(const MatrixPolyLayer& L)
{
    WeightReport rep;
    const int N = L.N;
    rep.aligned = (N % 3 == 2);
    const Mat3 J = reversal();

    for (int k = 0; k <= N; ++k) {
        const Mat3 W = weight_matrix(L, k);
        const double s2 = std::max(max_abs(W) * max_abs(W), 1e-300);
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                for (int c = 0; c < 3; ++c)
                    for (int d = c + 1; d < 3; ++d) {
                        const std::complex<double> minor = W(a, c) * W(b, d) - W(a, d) * W(b, c);
                        rep.rank_one = std::max(rep.rank_one, std::abs(minor) / s2);
                    }
    }

    const int M = L.n_max;
    for (int n = 0; n <= M; ++n)
        for (int np = 0; np <= M; ++np) {
            Mat3 sum = Mat3::Zero();
            double scale = 0.0;
            for (int k = 0; k <= N; ++k) {
                if (!L.Q[k].well_conditioned)
                    continue;
                Mat3 term;
                if (rep.aligned) {
                    if (!L.Qtilde[N - k].well_conditioned)
                        continue;
                    term = L.Q[k].Q[n] * weight_matrix(L, k) * L.Qtilde[N - k].Q[M - np].transpose() * J;
                } else {
                    Vec3 hat;
                    for (int l = 0; l < 3; ++l)
                        hat(l) = at_or_zero(L.Rtilde, N - k, N - 3 * np - l);
                    term = L.Q[k].Q[n] * L.psi(k, 0) * hat.transpose();
                }
                sum += term;
                scale += max_abs(term);
            }
            const Mat3 target = (n == np) ? Mat3(Mat3::Identity()) : Mat3(Mat3::Zero());
            const double abs_res = max_abs(Mat3(sum - target));
            rep.absolute = std::max(rep.absolute, abs_res);
            rep.residual = std::max(rep.residual, abs_res / std::max(1.0, scale));
            ++rep.pairs;
        }
    return rep;
}

bool FunctionalReport::pass(double tol, double fail_threshold) const
{
    for (const auto& e : entries) {
        if (e.expect_zero && !(e.residual <= tol))
            return false;
        if (!e.expect_zero && !(e.absolute > fail_threshold))
            return false;
    }
    return true;
}

FunctionalReport functional_annihilation_check(const MatrixPolyLayer& L, bool include_failures)
{
    FunctionalReport rep;
    rep.min_nonzero_absolute = INFINITY;
    const int N = L.N;
    auto evaluate = [&](int i, int n, int nu, bool expect_zero) {
        Mat3 sum = Mat3::Zero();
        double scale = 0.0;
        for (int k = 0; k <= N; ++k) {
            if (!L.Q[k].well_conditioned)
                continue;
            const double kn = std::pow(double(k), nu);
            const Mat3 term = kn * L.Q[k].Q[n] * L.psi(k, 0) * L.psi_inv(i - 1, k).transpose();
            sum += term;
            scale += max_abs(term);
        }
        FunctionalEntry e;
        e.i = i;
        e.n = n;
        e.nu = nu;
        e.expect_zero = expect_zero;
        e.absolute = max_abs(sum);
        e.scale = scale;
        e.residual = e.absolute / std::max(scale, 1e-300);
        if (expect_zero)
            rep.max_zero_residual = std::max(rep.max_zero_residual, e.residual);
        else
            rep.min_nonzero_absolute = std::min(rep.min_nonzero_absolute, e.absolute);
        rep.entries.push_back(e);
    };
    for (int n = 0; n <= L.n_max; ++n)
        for (int i = 1; i <= 3; ++i) {
            const int top = floor_div(n - i, 3);
            for (int nu = 0; nu <= top; ++nu)
                evaluate(i, n, nu, true);
            if (!include_failures)
                continue;
            if (n < i - 1) {
                ++rep.skipped;
                continue;
            }
            evaluate(i, n, top + 1, false);
        }
    if (rep.min_nonzero_absolute == INFINITY)
        rep.min_nonzero_absolute = 0.0;
    return rep;
}

Mat3 inverse_block(const MatC& F, int n, int m)
{
    Mat3 e;
    for (int i = 0; i < 3; ++i)
        for (int l = 0; l < 3; ++l)
            e(i, l) = at_or_zero(F, 3 * n + i, 3 * (n + m) + l);
    return e;
}

double inverse_recurrence_residual(const MatrixPolyLayer& L)
{
    double worst = 0.0;
    for (int n = 0; n <= L.n_max; ++n)
        for (int k = 0; k <= L.N; ++k) {
            Vec3 s = Vec3::Zero();
            double scale = std::abs(double(k)) * max_abs(L.psi_inv(n, k));
            for (int m = -1; m <= 3; ++m) {
                if (n + m < 0)
                    continue;
                const Vec3 t = inverse_block(L.F, n, m) * L.psi_inv(n + m, k);
                s += t;
                scale += max_abs(t);
            }
            const Vec3 diff = double(k) * L.psi_inv(n, k) - s;
            worst = std::max(worst, max_abs(diff) / std::max(scale, 1.0));
        }
    return worst;
}

InverseTriangularity inverse_block_triangularity(const MatC& F, int N)
{
    InverseTriangularity t;
    const int M = top_block(N);
    for (int n = 0; n <= M; ++n) {
        if (n >= 1) {
            const Mat3 e = inverse_block(F, n, -1);
            const double s = std::max(max_abs(e), 1e-300);
            for (int i = 0; i < 3; ++i)
                for (int l = 0; l < 3; ++l) {
                    if (l < i)
                        t.e_minus1_lower = std::max(t.e_minus1_lower, std::abs(e(i, l)) / s);
                    if (l > i)
                        t.e_minus1_upper = std::max(t.e_minus1_upper, std::abs(e(i, l)) / s);
                }
        }
        if (n + 3 <= M) {
            const Mat3 e = inverse_block(F, n, 3);
            const double s = std::max(max_abs(e), 1e-300);
            for (int i = 0; i < 3; ++i)
                for (int l = 0; l < 3; ++l) {
                    if (l < i)
                        t.e_plus3_lower = std::max(t.e_plus3_lower, std::abs(e(i, l)) / s);
                    if (l > i)
                        t.e_plus3_upper = std::max(t.e_plus3_upper, std::abs(e(i, l)) / s);
                }
        }
    }
    return t;
}

bool PropositionReport::all_match() const
{
    if (entries.empty())
        return false;
    for (const auto& e : entries)
        if (!e.match)
            return false;
    return true;
}

namespace {

using MatPoly = std::vector<Mat3>;  // coefficient of k^j at index j

MatPoly poly_add(const MatPoly& a, const MatPoly& b)
{
    MatPoly out(std::max(a.size(), b.size()), Mat3::Zero());
    for (size_t j = 0; j < a.size(); ++j)
        out[j] += a[j];
    for (size_t j = 0; j < b.size(); ++j)
        out[j] += b[j];
    return out;
}

MatPoly poly_left(const Mat3& m, const MatPoly& p)
{
    MatPoly out(p.size());
    for (size_t j = 0; j < p.size(); ++j)
        out[j] = m * p[j];
    return out;
}

MatPoly poly_shift(const MatPoly& p)
{
    MatPoly out(p.size() + 1, Mat3::Zero());
    for (size_t j = 0; j < p.size(); ++j)
        out[j + 1] = p[j];
    return out;
}

Mat3 poly_eval(const MatPoly& p, double k)
{
    Mat3 acc = Mat3::Zero();
    for (size_t j = p.size(); j-- > 0;)
        acc = acc * k + p[j];
    return acc;
}

}  // namespace

PropositionReport proposition_degree_check(const MatrixPolyLayer& L, int n_limit, double coeff_tol)
{
    PropositionReport rep;
    const int top = std::min(n_limit, L.n_max);
    const double kscale = std::max(1, L.N);
    // reps[n][i] = P_i^(n)
    std::vector<std::array<MatPoly, 3>> reps(top + 1);
    for (int n = 0; n <= std::min(top, 2); ++n)
        for (int i = 0; i < 3; ++i)
            reps[n][i] = MatPoly{i == n ? Mat3(Mat3::Identity()) : Mat3(Mat3::Zero())};
    rep.min_pivot = INFINITY;
    for (int n = 0; n + 3 <= top; ++n) {
        const Mat3 e3 = inverse_block(L.F, n, 3);
        const double s = std::max(max_abs(e3), 1e-300);
        const double piv = std::abs(e3.determinant()) / (s * s * s);
        rep.min_pivot = std::min(rep.min_pivot, piv);
        if (piv < 1e-14)
            rep.ill_conditioned = true;
        const Mat3 e3inv = e3.inverse();
        for (int i = 0; i < 3; ++i) {
            MatPoly acc = poly_shift(reps[n][i]);
            acc = poly_add(acc, poly_left(-inverse_block(L.F, n, 0), reps[n][i]));
            if (n >= 1)
                acc = poly_add(acc, poly_left(-inverse_block(L.F, n, -1), reps[n - 1][i]));
            acc = poly_add(acc, poly_left(-inverse_block(L.F, n, 1), reps[n + 1][i]));
            acc = poly_add(acc, poly_left(-inverse_block(L.F, n, 2), reps[n + 2][i]));
            reps[n + 3][i] = poly_left(e3inv, acc);
        }
    }
    if (rep.min_pivot == INFINITY)
        rep.min_pivot = 0.0;

    for (int n = 0; n <= top; ++n) {
        PropositionEntry e;
        e.n = n;
        e.nu = n / 3;
        e.ell = n % 3;
        double scale = 0.0;
        for (int i = 0; i < 3; ++i)
            for (size_t j = 0; j < reps[n][i].size(); ++j)
                scale = std::max(scale, max_abs(reps[n][i][j]) * std::pow(kscale, double(j)));
        for (int i = 0; i < 3; ++i) {
            int deg = -1;
            for (size_t j = 0; j < reps[n][i].size(); ++j)
                if (max_abs(reps[n][i][j]) * std::pow(kscale, double(j)) > coeff_tol * scale)
                    deg = static_cast<int>(j);
            e.degrees[i] = deg;
            if (n < 3)
                e.expected[i] = (i == n) ? 0 : -1;
            else
                e.expected[i] = (i <= e.ell) ? e.nu : e.nu - 1;
        }
        e.match = (e.degrees == e.expected);
        rep.entries.push_back(e);

        double vscale = 0.0, worst = 0.0;
        for (int k = 0; k <= L.N; ++k) {
            Vec3 v = Vec3::Zero();
            for (int i = 0; i < 3; ++i)
                v += poly_eval(reps[n][i], double(k)) * L.psi_inv(i, k);
            vscale = std::max(vscale, max_abs(L.psi_inv(n, k)));
            worst = std::max(worst, max_abs(Vec3(v - L.psi_inv(n, k))));
        }
        rep.representation_residual = std::max(rep.representation_residual, worst / std::max(vscale, 1e-300));
    }
    return rep;
}

}  // namespace finosc
