#include "finosc/exact.hpp"

namespace finosc::exact {

Rational krawtchouk(int m, const Rational& k, const Rational& p, int N)
{
    if (p == 0)
        throw Error("krawtchouk: p must be non-zero");
    return generic::krawtchouk<Rational>(m, k, p, N);
}

Rational vector_poly_A(int a, const Rational& b, int c, const Rational& d, int N)
{
    return generic::vector_poly_A<Rational>(a, b, c, d, N);
}

ExactPair krawtchouk_orthogonality(int n, int m, const Rational& p, int N)
{
    return {generic::krawtchouk_ortho_lhs<Rational>(n, m, p, N),
            generic::krawtchouk_ortho_rhs<Rational>(n, m, p, N)};
}

ExactPair vector_poly_A_biorthogonality(int a, int ap, int c1, int c2, const Rational& d, int N)
{
    return {generic::A_biortho_lhs<Rational>(a, ap, c1, c2, d, N),
            generic::A_biortho_rhs<Rational>(a, ap, c1, c2, d, N)};
}

ExactSweep krawtchouk_orthogonality_all(const Rational& p, int N)
{
    ExactSweep s;
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= N; ++m) {
            ++s.checked;
            if (!krawtchouk_orthogonality(n, m, p, N).equal())
                ++s.mismatches;
        }
    return s;
}

ExactSweep vector_poly_A_biorthogonality_all(const Rational& d, int N)
{
    ExactSweep s;
    auto run = [&](int c1, int c2) {
        const int u = generic::biortho_u(c1, c2, N);
        for (int a = 0; 2 * a + c1 <= N && a <= u; ++a)
            for (int ap = 0; ap <= u; ++ap) {
                if (2 * (u - ap) + c2 > N)
                    continue;
                ++s.checked;
                if (!vector_poly_A_biorthogonality(a, ap, c1, c2, d, N).equal())
                    ++s.mismatches;
            }
    };
    if (N % 2 == 0) {
        run(0, 0);
        if (N >= 2)
            run(1, 1);
    } else {
        run(1, 0);
    }
    return s;
}

std::string to_string(const Rational& q) { return q.str(); }

}  // namespace finosc::exact
