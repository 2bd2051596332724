#include <doctest.h>

#include "finspec/dirac_moduli.hpp"
#include "finspec/linalg.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace finspec;
using fixtures::I;

namespace {

KrajewskiData direct_sum(const KrajewskiData& a, const KrajewskiData& b) {
    KrajewskiData s = a;
    const int shift = a.num_summands();
    for (int n : b.dims) s.dims.push_back(n);
    for (const auto& [i, j] : b.pairs) s.pairs.emplace_back(i + shift, j + shift);
    for (int g : b.grading) s.grading.push_back(g);
    return s;
}

}  // namespace

TEST_CASE("electrodynamics moduli") {
    const FiniteTriple t = build_triple(fixtures::ed_data());
    const ModuliBasis m = solve_moduli(t);
    REQUIRE(m.real_dim == 2);
    CHECK(m.gap_ratio >= 1e4);
    for (const auto& b : m.basis) {
        // each basis element lies in the family D(d) with d = b(0,1)
        CHECK(max_abs(b - fixtures::ed_dirac(b(0, 1))) < 1e-12);
        CHECK(oracles::moduli_residual(t, b, true) < 1e-12);
    }
    // the family D(d) lies in the span
    for (const cplx d : {cplx(0, -0.5), cplx(1.0, 0), cplx(0.3, 2.0)}) {
        const Matrix x = fixtures::ed_dirac(d);
        CHECK(max_abs(project_onto_moduli(m, x) - x) < 1e-12);
    }
    // a random Hermitian matrix projects into the family
    Rng rng(4);
    const Matrix p = project_onto_moduli(m, random_hermitian(4, rng));
    CHECK(max_abs(p - fixtures::ed_dirac(p(0, 1))) < 1e-12);
}

TEST_CASE("Yang-Mills moduli vanish") {
    for (int n = 1; n <= 4; ++n) {
        const ModuliBasis m = solve_moduli(build_triple(fixtures::ym_data(n)));
        CHECK(m.real_dim == 0);
        CHECK(m.basis.empty());
    }
}

TEST_CASE("dropping the grading constraint enlarges the moduli") {
    const FiniteTriple ym = build_triple(fixtures::ym_data(2));
    // D = λ·1 on M_2 commutes with everything; J-compatibility keeps it real
    CHECK(solve_moduli(ym, false).real_dim >= 1);
    std::mt19937_64 rng(8);
    for (int k = 0; k < 20; ++k) {
        const FiniteTriple t = build_triple(fixtures::random_krajewski(rng, 0, 2 * (k % 4)));
        if (t.dim_h > 16) continue;
        CHECK(solve_moduli(t, false).real_dim >= solve_moduli(t, true).real_dim);
    }
}

TEST_CASE("Higgs-type triple has nonzero moduli") {
    const FiniteTriple t = build_triple(fixtures::higgs_data());
    const ModuliBasis m = solve_moduli(t);
    CHECK(m.real_dim > 0);
    for (const auto& b : m.basis) CHECK(oracles::moduli_residual(t, b, true) < 1e-10);
}

TEST_CASE("moduli basis is orthonormal and re-verifies independently") {
    std::mt19937_64 rng(31);
    int nonzero = 0;
    for (int k = 0; k < 40; ++k) {
        const FiniteTriple t = build_triple(fixtures::random_krajewski(rng, 0));
        if (t.dim_h > 24) continue;
        const ModuliBasis m = solve_moduli(t);
        nonzero += m.real_dim > 0 ? 1 : 0;
        CHECK(m.real_dim == static_cast<int>(m.basis.size()));
        for (std::size_t a = 0; a < m.basis.size(); ++a) {
            CHECK(oracles::moduli_residual(t, m.basis[a], t.even()) < 1e-10);
            CHECK(m.residuals[a] < 1e-10);
            for (std::size_t b = a; b < m.basis.size(); ++b) {
                const double ip = (m.basis[a].adjoint() * m.basis[b]).trace().real();
                CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-10);
            }
        }
    }
    CHECK(nonzero > 5);
}

TEST_CASE("projection is idempotent and fixes the span") {
    Rng rng(12);
    const FiniteTriple t = build_triple(fixtures::higgs_data(2, 2));
    const ModuliBasis m = solve_moduli(t);
    REQUIRE(m.real_dim > 0);
    const Matrix x = random_hermitian(t.dim_h, rng);
    const Matrix p = project_onto_moduli(m, x);
    CHECK(max_abs(project_onto_moduli(m, p) - p) < 1e-12);
    CHECK(moduli_residuals(t, p, true).max() < 1e-10);
    // the remainder is orthogonal to the span
    for (const auto& b : m.basis) CHECK(std::abs((b.adjoint() * (x - p)).trace().real()) < 1e-10);
    CHECK(max_abs(project_onto_moduli(m, x - p)) < 1e-12);
    // a generic Hermitian matrix is detected as inadmissible
    CHECK(moduli_residuals(t, x, true).max() > 1e-3);
    CHECK_THROWS_AS(project_onto_moduli(m, Matrix::Zero(2, 2)), DimensionError);
}

TEST_CASE("moduli dimension is frame independent") {
    std::mt19937_64 rng(77);
    Rng urng(78);
    for (int k = 0; k < 12; ++k) {
        const FiniteTriple t = build_triple(fixtures::random_krajewski(rng, 0));
        if (t.dim_h > 10) continue;
        const FiniteTriple f = change_frame(t, random_unitary(t.dim_h, urng));
        const ModuliBasis a = solve_moduli(t), b = solve_moduli(f);
        CHECK(a.real_dim == b.real_dim);
        for (const auto& d : b.basis) CHECK(moduli_residuals(f, d, true).max() < 1e-9);
    }
}

TEST_CASE("direct sums do not lose moduli") {
    const KrajewskiData h = fixtures::higgs_data();
    const KrajewskiData y = fixtures::ym_data(2);
    const KrajewskiData s = direct_sum(h, y);
    const int sum = solve_moduli(build_triple(s)).real_dim;
    CHECK(sum >= solve_moduli(build_triple(h)).real_dim + solve_moduli(build_triple(y)).real_dim);
}
