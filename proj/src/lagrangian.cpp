#include "finspec/lagrangian.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace finspec {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

double trace_product(const Matrix& a, const Matrix& b) {
    // tr(AB) without forming the product
    return (a.transpose().cwiseProduct(b)).sum().real();
}

}  // namespace

void validate(const Moments& m) {
    if (!std::isfinite(m.f0) || !std::isfinite(m.f2) || !std::isfinite(m.f4)) {
        throw InvalidData("cutoff moments must be finite");
    }
    if (!(m.lambda > 0.0) || !std::isfinite(m.lambda)) throw InvalidData("cutoff Lambda must be positive");
}

Matrix CurvatureField::at(int site, int mu, int nu) const {
    const auto& row = values[static_cast<std::size_t>(site)];
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (pairs[k] == std::make_pair(mu, nu)) return row[k];
        if (pairs[k] == std::make_pair(nu, mu)) return -row[k];
    }
    const Eigen::Index n = row.empty() ? 0 : row.front().rows();
    return Matrix::Zero(n, n);
}

CurvatureField curvature(const FieldConfig& cfg) {
    const auto& lat = cfg.lattice;
    const int d = lat.dimension();
    const int sites = lat.num_sites();
    CurvatureField f;
    for (int mu = 0; mu < d; ++mu) {
        for (int nu = mu + 1; nu < d; ++nu) f.pairs.emplace_back(mu, nu);
    }
    // ∂_μ B_ν for every (μ, ν)
    std::vector<std::vector<std::vector<Matrix>>> dB(static_cast<std::size_t>(d));
    for (int nu = 0; nu < d; ++nu) {
        std::vector<Matrix> b_nu(static_cast<std::size_t>(sites));
        for (int x = 0; x < sites; ++x) b_nu[static_cast<std::size_t>(x)] = cfg.gauge[static_cast<std::size_t>(x)][static_cast<std::size_t>(nu)];
        for (int mu = 0; mu < d; ++mu) {
            if (mu == nu) continue;
            dB[static_cast<std::size_t>(mu)].resize(static_cast<std::size_t>(d));
            dB[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)] = central_difference(lat, b_nu, mu);
        }
    }
    f.values.resize(static_cast<std::size_t>(sites));
    for (int x = 0; x < sites; ++x) {
        const auto xs = static_cast<std::size_t>(x);
        const auto& b = cfg.gauge[xs];
        for (const auto& [mu, nu] : f.pairs) {
            const auto m = static_cast<std::size_t>(mu), n = static_cast<std::size_t>(nu);
            f.values[xs].push_back(dB[m][n][xs] - dB[n][m][xs] + commutator(b[m], b[n]));
        }
    }
    return f;
}

std::vector<std::vector<Matrix>> covariant_derivative(const FieldConfig& cfg) {
    const auto& lat = cfg.lattice;
    const int d = lat.dimension();
    const auto sites = static_cast<std::size_t>(lat.num_sites());
    std::vector<std::vector<Matrix>> out(sites);
    for (int mu = 0; mu < d; ++mu) {
        const auto dphi = central_difference(lat, cfg.phi, mu);
        for (std::size_t x = 0; x < sites; ++x) {
            out[x].push_back(dphi[x] + commutator(cfg.gauge[x][static_cast<std::size_t>(mu)], cfg.phi[x]));
        }
    }
    return out;
}

std::vector<double> density_gauge(const FieldConfig& cfg, const Moments& m) {
    const CurvatureField f = curvature(cfg);
    const double c = m.f0 / (24.0 * kPi2);
    std::vector<double> out(f.values.size());
    for (std::size_t x = 0; x < f.values.size(); ++x) {
        double acc = 0.0;
        for (const auto& fmn : f.values[x]) acc += trace_product(fmn, fmn);
        // each unordered pair appears twice in Σ_{μ,ν}
        out[x] = c * 2.0 * acc;
    }
    return out;
}

std::vector<HiggsDensity> density_higgs_terms(const FieldConfig& cfg, const Moments& m) {
    const auto& lat = cfg.lattice;
    const auto sites = static_cast<std::size_t>(lat.num_sites());
    const double l2 = m.lambda * m.lambda;
    std::vector<double> tr_phi2(sites), tr_phi4(sites);
    for (std::size_t x = 0; x < sites; ++x) {
        const Matrix p2 = cfg.phi[x] * cfg.phi[x];
        tr_phi2[x] = p2.trace().real();
        tr_phi4[x] = trace_product(p2, p2);
    }
    const auto lap = laplacian(lat, tr_phi2);
    const auto dphi = covariant_derivative(cfg);
    std::vector<HiggsDensity> out(sites);
    for (std::size_t x = 0; x < sites; ++x) {
        HiggsDensity& h = out[x];
        h.mass = -(2.0 * m.f2 * l2 / (4.0 * kPi2)) * tr_phi2[x];
        h.quartic = (m.f0 / (8.0 * kPi2)) * tr_phi4[x];
        h.boundary = (m.f0 / (24.0 * kPi2)) * lap[x];
        h.curvature = (m.f0 / (48.0 * kPi2)) * cfg.gravity[x].s * tr_phi2[x];
        double kin = 0.0;
        for (const auto& dm : dphi[x]) kin += trace_product(dm, dm);
        h.kinetic = (m.f0 / (8.0 * kPi2)) * kin;
    }
    return out;
}

std::vector<double> density_higgs(const FieldConfig& cfg, const Moments& m) {
    const auto terms = density_higgs_terms(cfg, m);
    std::vector<double> out(terms.size());
    for (std::size_t x = 0; x < terms.size(); ++x) out[x] = terms[x].total();
    return out;
}

std::vector<double> density_gravity(const FieldConfig& cfg, const Moments& m, int fibre_rank) {
    const auto& lat = cfg.lattice;
    const auto sites = static_cast<std::size_t>(lat.num_sites());
    std::vector<double> s(sites);
    for (std::size_t x = 0; x < sites; ++x) s[x] = cfg.gravity[x].s;
    const auto lap_s = laplacian(lat, s);
    const double l2 = m.lambda * m.lambda;
    std::vector<double> out(sites);
    for (std::size_t x = 0; x < sites; ++x) {
        const auto& g = cfg.gravity[x];
        const double lm = m.f4 * l2 * l2 / (2.0 * kPi2) - m.f2 * l2 * g.s / (24.0 * kPi2) +
                          (m.f0 / (16.0 * kPi2)) * (lap_s[x] / 30.0 - g.weyl_sq / 20.0 + 11.0 * g.euler / 360.0);
        out[x] = fibre_rank * lm;
    }
    return out;
}

ActionBreakdown total_action_breakdown(const FieldConfig& cfg, const Moments& m) {
    const auto grav = density_gravity(cfg, m, cfg.dim_h);
    const auto gauge = density_gauge(cfg, m);
    const auto higgs = density_higgs_terms(cfg, m);
    CompensatedSum total, s_grav, s_gauge, s_higgs, s_bdry;
    for (std::size_t x = 0; x < grav.size(); ++x) {
        const double h = higgs[x].total();
        total.add(grav[x] + gauge[x] + h);
        s_grav.add(grav[x]);
        s_gauge.add(gauge[x]);
        s_higgs.add(h);
        s_bdry.add(higgs[x].boundary);
    }
    const double vol = cfg.lattice.volume_element();
    return {vol * total.value(), vol * s_grav.value(), vol * s_gauge.value(), vol * s_higgs.value(),
            vol * s_bdry.value()};
}

double total_action(const FieldConfig& cfg, const Moments& m) { return total_action_breakdown(cfg, m).total; }

FieldConfig gauge_transform_fields(const FiniteTriple& t, const FieldConfig& cfg, const std::vector<AlgebraElement>& u,
                                   double tol) {
    const auto& lat = cfg.lattice;
    const auto sites = static_cast<std::size_t>(lat.num_sites());
    if (u.size() != sites) {
        throw DimensionError("gauge transformation has " + std::to_string(u.size()) + " sites, expected " +
                             std::to_string(sites));
    }
    if (t.dim_h != cfg.dim_h) throw DimensionError("gauge transformation: triple and field sizes differ");
    std::vector<Matrix> g(sites), g_star(sites);
    for (std::size_t x = 0; x < sites; ++x) {
        g[x] = gauge_element(t, u[x], tol);
        g_star[x] = g[x].adjoint();
    }
    FieldConfig out = cfg;
    for (int mu = 0; mu < lat.dimension(); ++mu) {
        const auto d_star = central_difference(lat, g_star, mu);
        const auto m = static_cast<std::size_t>(mu);
        for (std::size_t x = 0; x < sites; ++x) {
            out.gauge[x][m] = g[x] * cfg.gauge[x][m] * g_star[x] + g[x] * d_star[x];
        }
    }
    for (std::size_t x = 0; x < sites; ++x) out.phi[x] = g[x] * cfg.phi[x] * g_star[x];
    return out;
}

}  // namespace finspec
