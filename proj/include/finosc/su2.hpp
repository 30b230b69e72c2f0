#pragma once

#include "finosc/common.hpp"

#include <string>
#include <vector>

namespace finosc {

// Generators of the (N+1)-dimensional representation in the mode basis.
// Entry [row][col] is <row|Op|col>.
template <class T>
struct GeneratorSet {
    int N = 0;
    Mat<T> Jp, Jm, J3, Nhat;
};

template <class T = double>
GeneratorSet<T> build_generators(int N);

// Exact exponential of coeff*M for M strictly triangular (nilpotent) or
// diagonal. Horner accumulation of the terminating series.
template <class T = double>
Mat<T> exp_poly_in_shift(const Mat<T>& M, std::complex<T> coeff, Exec ex = Exec::parallel);

template <class T = double>
Mat<T> build_D(const Params& prm, int N, Exec ex = Exec::parallel);
template <class T = double>
Mat<T> build_S(const Params& prm, int N, Exec ex = Exec::parallel);
template <class T = double>
Mat<T> build_R(const Params& prm, int N, Exec ex = Exec::parallel);
template <class T = double>
Mat<T> build_R_inverse(const Params& prm, int N, Exec ex = Exec::parallel);

enum class Conjugation {
    inverse_first,  // R^-1 A R
    forward_first,  // R A R^-1
};

template <class T = double>
Mat<T> conjugate(const Mat<T>& A, const Mat<T>& R, const Mat<T>& Rinv, Conjugation side,
                 Exec ex = Exec::parallel);

// One named residual. Used by every verification suite.
struct IdentityResult {
    std::string identity;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct BchReport {
    int N = 0;
    std::vector<IdentityResult> items;
    bool all_pass() const;
    std::vector<IdentityResult> failures() const;
};

// Commutator, shift and conjugation identities for the generators, with
// P(x) = a1*x and P(x) = a2*x^2. Residuals are infinity norms divided by the
// product of the operand infinity norms.
BchReport verify_bch_suite(int N, std::complex<double> a1 = {0.2, 0.1},
                           std::complex<double> a2 = {0.4, 0.0}, double tol = 1e-10);

// Row-major, tab-separated "re+imi" entries.
std::string debug_print(const MatC& m);

}  // namespace finosc
