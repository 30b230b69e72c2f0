#include "finosc/matrix_elements.hpp"
#include "finosc/special_polys.hpp"
#include "finosc/squeezing.hpp"
#include "finosc/su2.hpp"

#include <doctest.h>

#include <random>

using namespace finosc;

namespace {

const Params kGeneric{0.8, 0.3, 0.2, 0.9};

std::vector<Params> random_params_local(unsigned seed, int count)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.1, 1.4), ur(0.05, 0.5), ph(0.0, 6.283);
    std::vector<Params> out;
    for (int i = 0; i < count; ++i)
        out.push_back({u(gen), ph(gen), ur(gen), ph(gen)});
    return out;
}

}  // namespace

TEST_CASE("table kinds round-trip through their names")
{
    for (TableKind k : {TableKind::lambda, TableKind::phi, TableKind::R, TableKind::R_inverse})
        CHECK(parse_table_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_table_kind("Q"), Error);
}

TEST_CASE("lambda: trivial limit, oracle agreement, unitarity")
{
    const MatC id = lambda_table({0.0, 0.4, 0.3, 0.2}, 7).entries;
    CHECK((id - MatC::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-15);
    for (const Params& p : random_params_local(1, 5))
        CHECK(table_deviation(lambda_table(p, 6).entries, build_D<double>(p, 6)) < 1e-10);
    CHECK(lambda_unitarity_check({0.8, 0.3, 0.0, 0.0}, 10) < 1e-10);
    CHECK(lambda_biorthogonality_check(kGeneric, 10) < 1e-10);
}

TEST_CASE("phi: trivial limit, hand value, oracle agreement")
{
    const MatC id = phi_table({0.3, 0.0, 0.0, 1.0}, 5).entries;
    CHECK((id - MatC::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-15);

    const Params p{0.0, 0.0, 0.35, 0.6};
    CHECK(std::abs(phi_elem(0, 2, p, 2) + std::conj(p.xi())) < 1e-15);
    CHECK(std::abs(build_S<double>(p, 2)(0, 2) + std::conj(p.xi())) < 1e-15);

    const Params q{0.0, 0.0, 0.3, 1.1};
    CHECK(table_deviation(phi_table(q, 8).entries, build_S<double>(q, 8)) < 1e-10);
    // Opposite parity entries vanish exactly.
    CHECK(phi_elem(1, 4, q, 8) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("biorthogonality of phi and R, even and odd N")
{
    CHECK(phi_biorthogonality_check(8, {0.0, 0.0, 0.0, 0.0}) == doctest::Approx(0.0));
    CHECK(phi_biorthogonality_check(8, {0.0, 0.0, 0.3, 0.4}) < 1e-10);
    CHECK(phi_biorthogonality_check(9, {0.0, 0.0, 0.3, 0.4}) < 1e-10);
    CHECK(R_biorthogonality_check(6, {0.0, 0.0, 0.0, 0.0}) == doctest::Approx(0.0));
    CHECK(R_biorthogonality_check(8, {0.5, 0.2, 0.25, 0.7}) < 1e-9);
    CHECK(R_biorthogonality_check(9, {0.5, 0.2, 0.25, 0.7}) < 1e-9);
}

TEST_CASE("R: closed form and convolution against the oracle")
{
    const MatC id = R_table({0, 0, 0, 0}, 5).entries;
    CHECK((id - MatC::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-15);

    const Params c{0.6, 1.1, 0.0, 0.0};
    CHECK(std::abs(R_elem(1, 0, c, 1) - c.eta() / std::sqrt(1 + c.rho * c.rho)) < 1e-15);

    CHECK(table_deviation(R_table(kGeneric, 10).entries, build_R<double>(kGeneric, 10)) < 1e-9);
    for (const Params& p : random_params_local(2, 6))
        for (int N : {1, 4, 9, 12}) {
            const MatC R = build_R<double>(p, N), Ri = build_R_inverse<double>(p, N);
            CHECK(table_deviation(R_table(p, N, RMethod::closed_form).entries, R) < 1e-9);
            CHECK(table_deviation(R_table(p, N, RMethod::convolution).entries, R) < 1e-9);
            CHECK(table_deviation(R_inverse_table(p, N, RMethod::closed_form).entries, Ri) < 1e-9);
            CHECK(table_deviation(R_inverse_table(p, N, RMethod::convolution).entries, Ri) < 1e-9);
        }
}

TEST_CASE("states: basis vector, binomial amplitudes, squeezed norm")
{
    const StateVector e3 = state(3, {0, 0, 0, 0}, 6);
    CHECK(e3.normalized);
    for (int k = 0; k <= 6; ++k)
        CHECK(std::abs(e3.amplitudes(k) - (k == 3 ? 1.0 : 0.0)) < 1e-15);

    const StateVector b = state(0, {1.0, 0.0, 0.0, 0.0}, 2);
    CHECK(b.amplitudes(0).real() == doctest::Approx(0.5));
    CHECK(b.amplitudes(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(b.amplitudes(2).real() == doctest::Approx(0.5));

    const Params s{0.4, 0.1, 0.3, 0.5};
    const double n2 = R_table(s, 6).entries.col(0).squaredNorm();
    CHECK(std::abs(n2 - kappa(0.3, 6)) < 1e-10 * n2);
}

TEST_CASE("coherent element matches the two-boson product formula")
{
    // <x|D|y> = (conj(x) (y e^{mu/2} + eta (1 - conj(eta) y) e^{-mu/2}) + (1 - conj(eta) y) e^{-mu/2})^N
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (const Params& p : random_params_local(3, 4))
        for (int N : {1, 4, 7}) {
            const std::complex<double> x{u(gen), u(gen)}, y{u(gen), u(gen)};
            const double e = std::sqrt(1 + p.rho * p.rho);
            const std::complex<double> w = 1.0 - std::conj(p.eta()) * y;
            const std::complex<double> expect =
                std::pow(std::conj(x) * (y * e + p.eta() * w / e) + w / e, N);
            std::complex<double> sum = 0.0;
            for (int m = 0; m <= N; ++m)
                sum += coherent_D_element(m, x, p, N) * std::sqrt(binomial(N, m)) * std::pow(y, m);
            CHECK(std::abs(sum - expect) < 1e-12 * std::max(1.0, std::abs(expect)));
        }
}

TEST_CASE("squeezed coherent element against the dense oracle")
{
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (const Params& p : random_params_local(4, 4))
        for (int N : {2, 5, 8}) {
            const std::complex<double> y{u(gen), u(gen)};
            VecC ket(N + 1);
            for (int n = 0; n <= N; ++n)
                ket(n) = std::sqrt(binomial(N, n)) * std::pow(y, n);
            const VecC ref = build_S<double>(p, N) * ket;
            for (int m = 0; m <= N; ++m)
                CHECK(std::abs(squeeze_coherent_element(m, y, p, N) - ref(m)) < 1e-11 * (1.0 + ref.cwiseAbs().maxCoeff()));
        }
}

TEST_CASE("generating function: convolution against the double sum")
{
    const GeneratingResult z = generating_G({0, 0}, {0, 0}, kGeneric, 4);
    CHECK(z.residual() < 1e-12);
    const GeneratingResult c = generating_G({0.3, -0.2}, {0.1, 0.4}, {0.7, 0.5, 0.0, 0.0}, 4);
    CHECK(c.residual() < 1e-10);
    for (const Params& p : random_params_local(5, 4)) {
        const GeneratingResult g = generating_G({0.4, 0.1}, {-0.2, 0.3}, p, 6);
        CHECK(g.residual() < 1e-9);
        CHECK(std::abs(g.scale - g.expected_scale) < 1e-8 * g.expected_scale * g.convolution_abs / std::abs(g.convolution));
    }
}

TEST_CASE("ladder relations")
{
    const int N = 8;
    const LadderResidual top = ladder_check(N - 2, kGeneric, N);
    CHECK(top.raise < 1e-12);
    const LadderResidual low = ladder_check(1, kGeneric, N);
    CHECK(low.lower < 1e-12);
    for (int n = 0; n <= N; ++n) {
        const LadderResidual l = ladder_check(n, kGeneric, N);
        CHECK(l.raise < 1e-9);
        CHECK(l.lower < 1e-9);
    }
}
