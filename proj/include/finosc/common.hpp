#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace finosc {

template <class T>
using cplx = std::complex<T>;

template <class T>
using Mat = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
using Vec = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, 1>;

using MatC = Mat<double>;
using MatX = Mat<long double>;
using VecC = Vec<double>;
using Mat3 = Eigen::Matrix<std::complex<double>, 3, 3>;
using Vec3 = Eigen::Matrix<std::complex<double>, 3, 1>;

// Execution policy for the kernels that come in serial and OpenMP flavours.
enum class Exec { serial, parallel };

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// (rho, delta, r, gamma). Everything else is derived.
struct Params {
    double rho = 0.0;
    double delta = 0.0;
    double r = 0.0;
    double gamma = 0.0;

    std::complex<double> eta() const { return std::polar(1.0, delta) * rho; }
    std::complex<double> xi() const { return std::polar(1.0, gamma) * r; }
    double mu() const { return std::log1p(rho * rho); }
    double p() const { return rho * rho / (1.0 + rho * rho); }
    double d() const { return -4.0 * r * r; }

    // rho -> -rho, r -> -r; used for the biorthogonal partner tables.
    Params tilde() const { return {-rho, delta, -r, gamma}; }
};

// Largest entry modulus.
template <class Derived>
auto max_abs(const Eigen::MatrixBase<Derived>& m)
{
    using std::abs;
    typename Eigen::NumTraits<typename Derived::Scalar>::Real best = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            best = std::max(best, abs(m(i, j)));
    return best;
}

// Induced infinity norm (max absolute row sum).
template <class Derived>
auto norm_inf(const Eigen::MatrixBase<Derived>& m)
{
    using std::abs;
    typename Eigen::NumTraits<typename Derived::Scalar>::Real best = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        typename Eigen::NumTraits<typename Derived::Scalar>::Real s = 0;
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            s += abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

// Integer power that treats 0^0 as 1 (std::pow on complex zero does not).
template <class S>
S ipow(S base, int e)
{
    S out = S(1);
    for (int i = 0; i < e; ++i)
        out *= base;
    return out;
}

// Default tolerance by dimension.
inline double default_tolerance(int N) { return N <= 20 ? 1e-10 : 1e-7; }

template <class T>
Mat<T> cast_matrix(const MatC& m)
{
    return m.unaryExpr([](const std::complex<double>& z) {
        return std::complex<T>(static_cast<T>(z.real()), static_cast<T>(z.imag()));
    });
}

template <class T>
MatC to_double(const Mat<T>& m)
{
    return m.unaryExpr([](const std::complex<T>& z) {
        return std::complex<double>(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    });
}

}  // namespace finosc
