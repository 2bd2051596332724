#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "finspec/dirac_moduli.hpp"
#include "finspec/lagrangian.hpp"
#include "finspec/lattice_product.hpp"
#include "finspec/linalg.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace finspec;
using fixtures::I;

namespace {

double max_diff(const RealVector& a, const std::vector<double>& b) {
    REQUIRE(static_cast<std::size_t>(a.size()) == b.size());
    double m = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) m = std::max(m, std::abs(a(static_cast<Eigen::Index>(k)) - b[k]));
    return m;
}

FieldConfig uniform(const LatticeSpec& lat, int dim_h, const std::vector<Matrix>& b, const Matrix& phi) {
    FieldConfig cfg = FieldConfig::zero(lat, dim_h);
    for (auto& site : cfg.gauge) site = b;
    for (auto& p : cfg.phi) p = phi;
    return cfg;
}

Matrix ed_charge() {
    Matrix p = Matrix::Zero(4, 4);
    p.diagonal() << I, I, -I, -I;
    return p;
}

KrajewskiData one_point(int ko, int grading_partner) {
    // N = [1] with a doubled diagonal slot; the partner grading fixes ε″
    return {{1}, {{0, 0}, {0, 0}}, KOSignature::from_dimension(ko), {1, grading_partner}};
}

Vector random_even(const ProductOperator& p, Rng& rng) {
    Vector v = even_part(p, random_vector(p.dimension(), rng));
    return v / v.norm();
}

}  // namespace

TEST_CASE("Clifford data") {
    for (const std::string basis : {"chiral", "dirac"}) {
        const CliffordData c = clifford(4, basis);
        CHECK(c.spinor_dim() == 4);
        CHECK(check_clifford(c).max() < 1e-15);
        REQUIRE(c.chirality.has_value());
        Matrix prod = c.gammas[0] * c.gammas[1] * c.gammas[2] * c.gammas[3];
        CHECK(max_abs(*c.chirality - prod) < 1e-15);
    }
    Matrix g5 = Matrix::Zero(4, 4);
    g5.diagonal() << 1, 1, -1, -1;
    CHECK(max_abs(*clifford(4).chirality - g5) == 0.0);

    const CliffordResiduals r2 = check_clifford(clifford(2));
    CHECK(r2.anticommutation == 0.0);
    CHECK(r2.hermitian == 0.0);
    CHECK(r2.chirality == 0.0);
    CHECK(r2.c_unitary == 0.0);
    const CliffordData c1 = clifford(1);
    CHECK_FALSE(c1.chirality.has_value());
    CHECK(check_clifford(c1).anticommutation == 0.0);

    CHECK_THROWS_AS(clifford(3), InvalidData);
    CHECK_THROWS_AS(clifford(2, "dirac"), InvalidData);
    CHECK_THROWS_AS(clifford(4, "weyl"), InvalidData);
}

TEST_CASE("free operator on a circle") {
    const FiniteTriple t = build_triple({{1}, {{0, 0}}, KOSignature::from_dimension(0), {1}});
    for (const int n : {3, 5, 8}) {
        const double a = 0.7;
        const FieldConfig cfg = FieldConfig::zero({{n}, a}, 1);
        const ProductOperator p = build_product(clifford(1), cfg, t);
        CHECK(p.dimension() == n);
        std::vector<double> expected;
        for (int j = 0; j < n; ++j) expected.push_back(std::sin(2.0 * std::numbers::pi * j / n) / a);
        std::sort(expected.begin(), expected.end());
        const RealVector e = spectrum(p);
        CHECK(max_diff(e, expected) < 1e-12);

        const auto f = [](double x) { return std::exp(-x * x); };
        double closed = 0.0;
        for (double l : expected) closed += f(l / 1.3);
        CHECK(std::abs(spectral_action_trace(p, f, 1.3) - closed) < 1e-12);
    }
    FieldConfig bad = FieldConfig::zero({{4}, 1.0}, 1);
    bad.phi[0](0, 0) = 1.0;
    CHECK_THROWS_AS(build_product(clifford(1), bad, t), DimensionError);
    CHECK_THROWS_AS(build_product(clifford(2), FieldConfig::zero({{4}, 1.0}, 1), t), DimensionError);
}

TEST_CASE("translation-invariant spectra match the Fourier blocks") {
    SUBCASE("electrodynamics in two dimensions") {
        const FiniteTriple ed = build_triple(fixtures::ed_data(), fixtures::ed_dirac({0.0, -0.4}));
        const FieldConfig cfg = uniform({{3, 4}, 0.6}, 4, {0.3 * ed_charge(), -0.2 * ed_charge()}, ed.dirac);
        const CliffordData c = clifford(2);
        const ProductOperator p = build_product(c, cfg, ed);
        CHECK(max_abs(p.dirac - p.dirac.adjoint()) < 1e-14);
        CHECK(max_diff(spectrum(p), oracles::fourier_spectrum(c, cfg)) < 1e-9);
    }
    SUBCASE("non-abelian fields in both four-dimensional bases") {
        Rng rng(9);
        const FiniteTriple h = build_triple(fixtures::higgs_data(1, 1));
        const Matrix phi = solve_moduli(h).basis.at(0);
        std::vector<Matrix> b;
        for (int mu = 0; mu < 4; ++mu) b.push_back(tau(h, random_anti_hermitian_element(h.data.dims, rng)));
        const FieldConfig cfg = uniform({{3, 3, 3, 3}, 0.9}, h.dim_h, b, 0.7 * phi);
        for (const std::string basis : {"chiral", "dirac"}) {
            const CliffordData c = clifford(4, basis);
            const ProductOperator p = build_product(c, cfg, h);
            CHECK(max_diff(spectrum(p), oracles::fourier_spectrum(c, cfg)) < 1e-9);
        }
    }
    SUBCASE("Higgs-type triple in two dimensions") {
        Rng rng(10);
        const FiniteTriple h = build_triple(fixtures::higgs_data());
        const Matrix phi = solve_moduli(h).basis.at(0);
        const FieldConfig cfg = uniform({{4, 5}, 0.5}, h.dim_h,
                                        {tau(h, random_anti_hermitian_element(h.data.dims, rng)),
                                         tau(h, random_anti_hermitian_element(h.data.dims, rng))},
                                        phi);
        const CliffordData c = clifford(2);
        CHECK(max_diff(spectrum(build_product(c, cfg, h)), oracles::fourier_spectrum(c, cfg)) < 1e-9);
    }
}

TEST_CASE("index layout") {
    const FiniteTriple ed = build_triple(fixtures::ed_data());
    const ProductOperator p = build_product(clifford(2), FieldConfig::zero({{3, 3}, 1.0}, 4), ed);
    CHECK(p.dimension() == 9 * 2 * 4);
    CHECK(p.index(0, 0, 0) == 0);
    CHECK(p.index(0, 1, 0) == 4);
    CHECK(p.index(2, 1, 3) == (2 * 2 + 1) * 4 + 3);
}

TEST_CASE("product KO-dimension follows 4 + k") {
    Rng rng(11);
    struct Case {
        KrajewskiData data;
        int expected;
    };
    const std::vector<Case> cases{{fixtures::ym_data(1), 4}, {one_point(2, -1), 6}, {one_point(4, 1), 0},
                                  {fixtures::ed_data(), 2}};
    for (const auto& [data, expected] : cases) {
        const FiniteTriple t0 = build_triple(data);
        const ModuliBasis m = solve_moduli(t0);
        Matrix d = Matrix::Zero(t0.dim_h, t0.dim_h);
        for (const auto& b : m.basis) d += 0.4 * b;
        const FiniteTriple t = t0.with_dirac(d);
        std::vector<Matrix> b;
        for (int mu = 0; mu < 4; ++mu) b.push_back(tau(t, random_anti_hermitian_element(t.data.dims, rng)));
        const FieldConfig cfg = uniform({{3, 3, 3, 3}, 1.0}, t.dim_h, b, t.dirac);
        for (const std::string basis : {"chiral", "dirac"}) {
            const ProductKOReport r = verify_product_ko(build_product(clifford(4, basis), cfg, t));
            CHECK(r.passed());
            CHECK(r.expected_ko == expected);
            REQUIRE(r.matched_ko.has_value());
            CHECK(*r.matched_ko == expected);
            const KOSignature ko = KOSignature::from_dimension(expected);
            CHECK(r.eps == ko.eps);
            CHECK(r.eps_prime == ko.eps_prime);
            CHECK(r.eps_double_prime == *ko.eps_double_prime);
            CHECK(r.j2_residual < 1e-12);
            CHECK(r.jd_residual < 1e-12);
            CHECK(r.jg_residual < 1e-12);
            CHECK(r.gamma_d_residual < 1e-12);
        }
    }
    const FiniteTriple ed = build_triple(fixtures::ed_data());
    CHECK_THROWS(verify_product_ko(build_product(clifford(2), FieldConfig::zero({{3, 3}, 1.0}, 4), ed)));
}

TEST_CASE("spectral symmetry and gauge invariance of the trace") {
    Rng rng(12);
    const FiniteTriple h = build_triple(fixtures::higgs_data());
    const auto fields = fixtures::make_smooth_fields(h, solve_moduli(h).basis.at(0), rng);
    const FieldConfig cfg = fixtures::smooth_config(h, fields, 4, 2);
    const ProductOperator p = build_product(clifford(2), cfg, h);
    const RealVector e = spectrum(p);
    // γ anticommutes with D: the spectrum is symmetric
    CHECK((e + e.reverse()).cwiseAbs().maxCoeff() < 1e-10);

    const auto f = [](double x) { return std::exp(-x * x); };
    const double s0 = spectral_action_trace(p, f, 2.0);
    const std::vector<AlgebraElement> u(static_cast<std::size_t>(cfg.lattice.num_sites()),
                                        random_unitary_element(h.data.dims, rng));
    const ProductOperator q = build_product(clifford(2), gauge_transform_fields(h, cfg, u), h);
    CHECK(std::abs(spectral_action_trace(q, f, 2.0) - s0) <= 1e-10 * std::abs(s0));
    CHECK((spectrum(q) - e).cwiseAbs().maxCoeff() < 1e-9);

    // f ≡ 1 counts the dimension
    CHECK(spectral_action_trace(RealVector::Zero(7), f, 1.0) == doctest::Approx(7.0));
}

TEST_CASE("fermionic form") {
    Rng rng(13);
    const FiniteTriple ed = build_triple(fixtures::ed_data(), fixtures::ed_dirac({0.0, -0.5}));
    std::vector<Matrix> b;
    for (int mu = 0; mu < 4; ++mu) b.push_back((0.1 * mu - 0.15) * ed_charge());
    FieldConfig cfg = uniform({{3, 3, 3, 3}, 1.0}, 4, b, ed.dirac);
    // make the gauge field site dependent
    for (int s = 0; s < cfg.lattice.num_sites(); ++s) cfg.gauge[static_cast<std::size_t>(s)][0] += 0.05 * s * ed_charge();
    ProductOperator p = build_product(clifford(4), cfg, ed);
    REQUIRE(verify_product_ko(p).eps == -1);

    for (int k = 0; k < 20; ++k) {
        const Vector x = random_even(p, rng), y = random_even(p, rng);
        const cplx a = fermionic_form(p, x, y), c = fermionic_form(p, y, x);
        CHECK(std::abs(a + c) <= 1e-12);
        CHECK(std::abs(a) > 1e-6);
        CHECK(std::abs(fermionic_form(p, x, x)) <= 1e-12);
        // oracle: ⟨Jξ, Dξ′⟩ from the explicit antiunitary
        const Vector jx = p.apply_j(x);
        CHECK(std::abs(jx.dot(p.dirac * y) - a) < 1e-12);
    }
    const Vector odd = random_vector(p.dimension(), rng);
    CHECK_THROWS_AS(fermionic_form(p, odd, random_even(p, rng)), PreconditionError);
    CHECK_THROWS_AS(fermionic_form(p, Vector::Zero(3), Vector::Zero(3)), DimensionError);

    p.dirac.setZero();
    CHECK(std::abs(fermionic_form(p, random_even(p, rng), random_even(p, rng))) == 0.0);
}
