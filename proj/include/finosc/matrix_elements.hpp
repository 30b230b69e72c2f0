#pragma once

#include "finosc/common.hpp"

#include <string>

namespace finosc {

enum class TableKind { lambda, phi, R, R_inverse };

std::string to_string(TableKind kind);
// Accepts lambda, phi, R, Rinv.
TableKind parse_table_kind(const std::string& s);

// Row = first index, column = second index, as in R_{k,n}.
struct MatrixElementTable {
    int N = 0;
    MatC entries;
    TableKind kind = TableKind::R;
    Params params;
};

struct StateVector {
    int N = 0;
    VecC amplitudes;
    bool normalized = false;
};

// <k|D|m>
std::complex<double> lambda_elem(int k, int m, const Params& prm, int N);
// <m|S|n>; exact zero on mismatched parity.
std::complex<double> phi_elem(int m, int n, const Params& prm, int N);
// <k|R|n> from the single-sum Krawtchouk x A closed form.
std::complex<double> R_elem(int k, int n, const Params& prm, int N);
// <n|R^-1|k> = Rtilde_{N-k, N-n}, Rtilde built with (-rho, -r).
std::complex<double> R_inverse_elem(int n, int k, const Params& prm, int N);

enum class RMethod {
    closed_form,  // single sum over b
    convolution,  // sum_m lambda_{k,m} phi_{m,n} (and the analogue for the inverse)
};

MatrixElementTable lambda_table(const Params& prm, int N, Exec ex = Exec::parallel);
MatrixElementTable phi_table(const Params& prm, int N, Exec ex = Exec::parallel);
MatrixElementTable R_table(const Params& prm, int N, RMethod method = RMethod::closed_form,
                           Exec ex = Exec::parallel);
MatrixElementTable R_inverse_table(const Params& prm, int N, RMethod method = RMethod::closed_form,
                                   Exec ex = Exec::parallel);
MatrixElementTable make_table(TableKind kind, const Params& prm, int N, Exec ex = Exec::parallel);

// max|closed - oracle| / max|oracle|
double table_deviation(const MatC& closed, const MatC& oracle);

// max_{m,n} |sum_k lambda_{k,m} conj(lambda_{k,n}) - delta_{mn}|
double lambda_unitarity_check(const Params& prm, int N);
// max_{n,m} |sum_k lambda_{k,m} conj(lambda_{N-n,N-k}) - delta_{nm}|
double lambda_biorthogonality_check(const Params& prm, int N);
// max_{n,n'} |sum_m phi_{m,n} conj(phi_{N-n',N-m}) - delta_{nn'}|
double phi_biorthogonality_check(int N, const Params& prm);
// max_{n,n'} |sum_k R_{k,n} Rtilde_{N-k,N-n'} - delta_{nn'}|
double R_biorthogonality_check(int N, const Params& prm);

// Column n of R normalised to unit Euclidean norm.
StateVector state(int n, const Params& prm, int N);

// <x|D|m> with the unnormalised coherent bra <x| = sum_k C(N,k)^(1/2) conj(x)^k <k|.
std::complex<double> coherent_D_element(int m, std::complex<double> x, const Params& prm, int N);
// <m|S|y> with the unnormalised coherent ket |y> = sum_n C(N,n)^(1/2) y^n |n>.
std::complex<double> squeeze_coherent_element(int m, std::complex<double> y, const Params& prm, int N);

struct GeneratingResult {
    std::complex<double> convolution;  // sum_m <x|D|m><m|S|y>
    std::complex<double> double_sum;   // (1+rho^2)^-N sum_{k,n} C^(1/2) C^(1/2) conj(x)^k y^n R_{k,n}
    std::complex<double> scale;        // convolution / double_sum, computed
    double expected_scale = 1.0;       // (1+rho^2)^(N/2)
    double convolution_abs = 0.0;      // sums of the term moduli
    double double_sum_abs = 0.0;

    // |convolution - expected_scale * double_sum| over the term-modulus scale.
    double residual() const
    {
        return std::abs(convolution - expected_scale * double_sum) /
               std::max(convolution_abs, expected_scale * double_sum_abs);
    }
};

GeneratingResult generating_G(std::complex<double> x, std::complex<double> y, const Params& prm, int N);

// Residuals (max over k) of
//   sqrt(-(n+1)_3 (n-N)_3) R_{k,n+3} = <k|R J+^3|n>
//   sqrt(-(-n)_3 (N-n+1)_3) R_{k,n-3} = <k|R J-^3|n>
// with the right-hand sides taken from the dense oracle.
struct LadderResidual {
    double raise = 0.0;
    double lower = 0.0;
};

LadderResidual ladder_check(int n, const Params& prm, int N);

}  // namespace finosc
