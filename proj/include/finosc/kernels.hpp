#pragma once

#include "finosc/common.hpp"

#include <vector>

namespace finosc::kernels {

// Dense product. Both flavours accumulate every output entry over the inner
// index in ascending order, so the results are bitwise identical.
template <class T>
Mat<T> matmul_serial(const Mat<T>& a, const Mat<T>& b);

template <class T>
Mat<T> matmul_parallel(const Mat<T>& a, const Mat<T>& b);

template <class T>
Mat<T> matmul(const Mat<T>& a, const Mat<T>& b, Exec ex = Exec::parallel)
{
    return ex == Exec::serial ? matmul_serial(a, b) : matmul_parallel(a, b);
}

// out(i, j) = f(i, j) for an independent per-entry function f.
template <class T, class F>
Mat<T> fill_table(Eigen::Index rows, Eigen::Index cols, F&& f, Exec ex = Exec::parallel)
{
    Mat<T> out(rows, cols);
    const long total = static_cast<long>(rows * cols);
    if (ex == Exec::serial) {
        for (long idx = 0; idx < total; ++idx)
            out(idx / cols, idx % cols) = f(idx / cols, idx % cols);
    } else {
#pragma omp parallel for schedule(dynamic, 4)
        for (long idx = 0; idx < total; ++idx)
            out(idx / cols, idx % cols) = f(idx / cols, idx % cols);
    }
    return out;
}

// Evaluate f over 0..count-1, results stored in index order.
template <class R, class F>
std::vector<R> map_index(long count, F&& f, Exec ex = Exec::parallel)
{
    std::vector<R> out(static_cast<size_t>(count));
    if (ex == Exec::serial) {
        for (long i = 0; i < count; ++i)
            out[i] = f(i);
    } else {
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < count; ++i)
            out[i] = f(i);
    }
    return out;
}

int max_threads();

}  // namespace finosc::kernels
