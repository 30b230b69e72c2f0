#include "finosc/kernels.hpp"

#include <omp.h>

namespace finosc::kernels {

namespace {

template <class T>
void check_shapes(const Mat<T>& a, const Mat<T>& b)
{
    if (a.cols() != b.rows())
        throw Error("matmul: inner dimensions differ");
}

template <class T>
inline std::complex<T> dot_row_col(const Mat<T>& a, const Mat<T>& b, Eigen::Index i, Eigen::Index j)
{
    // Plain complex multiply-add with explicit real arithmetic; the
    // compiler's Annex G handling of std::complex operator* is slow.
    T re = 0, im = 0;
    for (Eigen::Index l = 0; l < a.cols(); ++l) {
        const std::complex<T> x = a(i, l);
        const std::complex<T> y = b(l, j);
        re += x.real() * y.real() - x.imag() * y.imag();
        im += x.real() * y.imag() + x.imag() * y.real();
    }
    return {re, im};
}

}  // namespace

template <class T>
Mat<T> matmul_serial(const Mat<T>& a, const Mat<T>& b)
{
    check_shapes(a, b);
    Mat<T> out(a.rows(), b.cols());
    for (Eigen::Index j = 0; j < b.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            out(i, j) = dot_row_col(a, b, i, j);
    return out;
}

template <class T>
Mat<T> matmul_parallel(const Mat<T>& a, const Mat<T>& b)
{
    check_shapes(a, b);
    Mat<T> out(a.rows(), b.cols());
    const long cols = static_cast<long>(b.cols());
#pragma omp parallel for schedule(static)
    for (long j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            out(i, j) = dot_row_col(a, b, i, j);
    return out;
}

int max_threads() { return omp_get_max_threads(); }

template Mat<double> matmul_serial(const Mat<double>&, const Mat<double>&);
template Mat<double> matmul_parallel(const Mat<double>&, const Mat<double>&);
template Mat<long double> matmul_serial(const Mat<long double>&, const Mat<long double>&);
template Mat<long double> matmul_parallel(const Mat<long double>&, const Mat<long double>&);

}  // namespace finosc::kernels
