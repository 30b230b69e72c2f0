#pragma once

#include "finosc/common.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace finosc {

enum class BandSource {
    oracle,      // dense conjugation in long double
    structured,  // generator-product expression for R^-1 J3 R, double
};

// Entry [n+j][n] carries coefficient c_n^(j).
struct BandOperator {
    int N = 0;
    MatC entries;
    int band_lo = 0;
    int band_hi = 0;
    std::string convention = "entry [n+j][n] carries c_n^(j)";
    double out_of_band = 0.0;  // max |entry| outside [lo,hi], relative (oracle: to N ||R|| ||R^-1||)

    std::complex<double> coeff(int n, int j) const;
    // Offsets j whose diagonal has an entry above rel_tol * max |entry|.
    std::vector<int> nonzero_offsets(double rel_tol = 1e-10) const;
    std::pair<int, int> observed_support(double rel_tol = 1e-10) const;
};

// Largest entry outside the offsets [lo,hi], divided by scale (max |entry| when scale <= 0).
double out_of_band_mass(const MatC& entries, int lo, int hi, double scale = 0.0);

// R^-1 (J3 + N/2) R, dense oracle.
template <class T>
Mat<T> forward_operator_oracle(const Params& prm, int N, Exec ex = Exec::parallel);

// Same operator from the banded generator expression
//   (1-2p)A0 + rho e^{-i delta}(1-p)A- + rho(1-p)[e^{i delta} - r e^{-i(delta-gamma)}]A+
//   + (1-2p) xi A+^2 - rho r^2 e^{-i(delta-2gamma)}(1-p)A+^3 - 2 rho r e^{-i(delta-gamma)}(1-p)A+A0
// with A0 = J3 + conj(xi) J-^2, A- = J-, A+ = J+ - conj(xi)(1+2J3)J- - conj(xi)^2 J-^3.
MatC forward_operator_structured(const Params& prm, int N, Exec ex = Exec::parallel);

MatC forward_operator(const Params& prm, int N, BandSource src, Exec ex = Exec::parallel);

// c_n^(j) band, nominal support [-9, 3]. Throws when the out-of-band mass
// exceeds tol.
BandOperator extract_recurrence_band(const Params& prm, int N, BandSource src = BandSource::oracle,
                                     double tol = 1e-10);

// Band of the inverse-element recurrence: transpose of the forward operator,
// nominal support [-3, 9].
BandOperator inverse_recurrence_band(const Params& prm, int N, BandSource src = BandSource::oracle,
                                     double tol = 1e-10);

// R (J3 + N/2) R^-1 from the adjoint action of D on the generators applied to
//   S (J3 + N/2) S^-1 = J3 - xi J+^2 - conj(xi) (J-')^2 + N/2,
//   J-' = J- + 2 xi J+ J3 + xi J+ - xi^2 J+^3.
MatC difference_operator_structured(const Params& prm, int N, Exec ex = Exec::parallel);

// Oracle conjugation in long double, or the structured form.
MatC difference_operator(const Params& prm, int N, BandSource src, Exec ex = Exec::parallel);

// m_k^(j) band of R (J3 + N/2) R^-1 in the convention entry [k+j][k] = m_k^(j),
// nominal support [-6, 6].
BandOperator difference_band(const Params& prm, int N, BandSource src = BandSource::oracle, double tol = 1e-10);

// max over (k, n) of |n R_{k,n} - sum_j m_k^(j) R_{k+j,n}| relative to the
// operand scale.
double difference_equation_residual(const BandOperator& band, const MatC& R);

// Number of complete 3-blocks and the top block index.
inline int full_blocks(int N) { return (N + 1) / 3; }
inline int top_block(int N) { return full_blocks(N) - 1; }

struct GammaBlocks {
    int N = 0;
    int n_max = -1;
    // blocks[n][m + 3] = Gamma_n^(m), m = -3..1
    std::vector<std::array<Mat3, 5>> blocks;

    const Mat3& at(int n, int m) const { return blocks.at(n).at(m + 3); }
};

// Gamma_n^(m)[i][l] = c_{3n+i}^{(3m+l-i)}; coefficients outside [-9, 3] or
// outside 0..N are zero.
GammaBlocks assemble_gamma(const BandOperator& band);

// Largest entry in the structural-zero parts (strict upper of Gamma^(1),
// strict lower of Gamma^(-3)) relative to the block norm.
double gamma_triangularity_defect(const GammaBlocks& g);

struct QColumn {
    double k = 0.0;
    std::vector<Mat3> Q;  // Q_0..Q_{n_max}
    bool well_conditioned = true;
    double max_condition = 1.0;
    int failed_step = -1;
};

// Forward solve Q_{n+1} = (Gamma_n^(1))^-1 [k Q_n - sum_{m=-3..0} Gamma_n^(m) Q_{n+m}],
// Q_0 = Id. Stops at the first step whose Gamma_n^(1) condition exceeds cond_limit.
QColumn solve_Q(const GammaBlocks& g, double k, int n_max, double cond_limit = 1e12);

std::vector<QColumn> solve_Q_grid(const GammaBlocks& g, int n_max, Exec ex = Exec::parallel);

// Cached tables and derived objects for one parameter point. Every
// matrix-level identity below reads from the same instance.
struct MatrixPolyLayer {
    int N = 0;
    Params params;
    MatC R, Rinv, Rtilde;
    MatC F;  // forward operator R^-1 (J3 + N/2) R
    BandOperator band, band_tilde;
    GammaBlocks gamma, gamma_tilde;
    std::vector<QColumn> Q, Qtilde;  // indexed by integer k = 0..N
    int n_max = -1;

    static MatrixPolyLayer build(const Params& prm, int N, Exec ex = Exec::parallel);

    Vec3 psi(int k, int n) const;      // (R_{k,3n}, R_{k,3n+1}, R_{k,3n+2})
    Vec3 psi_inv(int n, int k) const;  // rows 3n..3n+2 of R^-1 at column k, zero-padded
};

struct SolveQReport {
    double residual = 0.0;  // max ||Psi_{k,n} - Q_n(k) Psi_{k,0}|| / max(||Psi_{k,n}||, ||Q_n(k)|| ||Psi_{k,0}||)
    int columns_used = 0;
    int columns_skipped = 0;
    double max_condition = 0.0;
};

SolveQReport psi_Q_residual(const MatrixPolyLayer& L);

// k Q_n(k) = sum_m Gamma_n^(m) Q_{n+m}(k), for n whose Q_{n+1} exists.
double gamma_recurrence_residual(const MatrixPolyLayer& L);

// Order-(order(n)) forward difference over the k grid of every entry of
// Q_n, relative to 2^order * max |Q_n|. Blocks with too few grid points are skipped.
double finite_difference_residual(const MatrixPolyLayer& L, int (*order)(int n));

Mat3 weight_matrix(const MatrixPolyLayer& L, int k);

struct WeightReport {
    double residual = 0.0;   // relative to the summed term scale
    double absolute = 0.0;   // raw max ||sum - delta Id||
    double rank_one = 0.0;   // max 2x2 minor / ||W||^2
    bool aligned = false;    // N = 3M + 2 block-aligned form used
    int pairs = 0;
};

// Aligned N (N = 3M+2): sum_k Q_n(k) W(k) Qtilde_{M-n'}(N-k)^t J = delta Id,
// J the 3x3 reversal. Otherwise the vector form
// sum_k Q_n(k) Psi_{k,0} Psihat_{k,n'}^t with Psihat_{k,n'}[l] = Rtilde_{N-k,N-3n'-l}.
WeightReport weight_biorthogonality(const MatrixPolyLayer& L);

struct FunctionalEntry {
    int i = 0, n = 0, nu = 0;
    bool expect_zero = true;
    double residual = 0.0;  // absolute over operand scale
    double absolute = 0.0;
    double scale = 0.0;
};

struct FunctionalReport {
    std::vector<FunctionalEntry> entries;
    int skipped = 0;  // (n, i) with n < i-1: the first failing order is identically zero
    double max_zero_residual = 0.0;
    double min_nonzero_absolute = 0.0;
    bool pass(double tol, double fail_threshold = 1e-4) const;
};

// F_i[G] = sum_k G(k) Psi_{k,0} Xi_{i-1,k}^t, i = 1..3. Entries for nu up to
// floor((n-i)/3) (expected zero) and one order past it (expected non-zero).
FunctionalReport functional_annihilation_check(const MatrixPolyLayer& L, bool include_failures = true);

// e_n^(m)[i][l] = F[3n+i][3(n+m)+l], m = -1..3.
Mat3 inverse_block(const MatC& F, int n, int m);

// max over blocks n, k of ||sum_m e_n^(m) Psi^-1_{n+m} - k Psi^-1_n|| over operand scale.
double inverse_recurrence_residual(const MatrixPolyLayer& L);

struct InverseTriangularity {
    double e_minus1_lower = 0.0;  // strict lower part of e^(-1) (zero when upper triangular)
    double e_minus1_upper = 0.0;
    double e_plus3_lower = 0.0;
    double e_plus3_upper = 0.0;   // strict upper part of e^(3) (zero when lower triangular)
};

InverseTriangularity inverse_block_triangularity(const MatC& F, int N);

struct PropositionEntry {
    int n = 0, nu = 0, ell = 0;
    std::array<int, 3> degrees{};
    std::array<int, 3> expected{};
    bool match = false;
};

struct PropositionReport {
    std::vector<PropositionEntry> entries;
    double representation_residual = 0.0;
    double min_pivot = 0.0;  // smallest |det e_n^(3)| relative to its norm^3
    bool ill_conditioned = false;
    bool all_match() const;
};

// Psi^-1_n = sum_i P_i^(n)(k) Xi_i with matrix-polynomial P propagated
// through the inverse recurrence; degrees read from the leading coefficients.
PropositionReport proposition_degree_check(const MatrixPolyLayer& L, int n_limit, double coeff_tol = 1e-10);

}  // namespace finosc
