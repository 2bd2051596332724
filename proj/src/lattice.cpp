#include "finspec/lattice.hpp"

#include <cmath>
#include <string>

#include "finspec/linalg.hpp"

namespace finspec {

int LatticeSpec::num_sites() const {
    int n = 1;
    for (int d : dims) n *= d;
    return n;
}

std::vector<int> LatticeSpec::coords(int site) const {
    std::vector<int> c(dims.size());
    for (int axis = dimension() - 1; axis >= 0; --axis) {
        const int n = dims[static_cast<std::size_t>(axis)];
        c[static_cast<std::size_t>(axis)] = site % n;
        site /= n;
    }
    return c;
}

int LatticeSpec::site(const std::vector<int>& c) const {
    int s = 0;
    for (std::size_t axis = 0; axis < dims.size(); ++axis) {
        const int n = dims[axis];
        s = s * n + ((c[axis] % n) + n) % n;
    }
    return s;
}

int LatticeSpec::shift(int site_index, int axis, int step) const {
    auto c = coords(site_index);
    c[static_cast<std::size_t>(axis)] += step;
    return site(c);
}

double LatticeSpec::volume_element() const { return std::pow(spacing, dimension()); }

void validate(const LatticeSpec& lattice) {
    if (lattice.dims.empty() || lattice.dims.size() > 4) {
        throw InvalidData("lattice dimension must be between 1 and 4, got " + std::to_string(lattice.dims.size()));
    }
    for (int n : lattice.dims) {
        if (n < 3) throw InvalidData("every lattice axis needs at least 3 sites, got " + std::to_string(n));
    }
    if (!(lattice.spacing > 0.0) || !std::isfinite(lattice.spacing)) {
        throw InvalidData("lattice spacing must be positive");
    }
}

FieldConfig FieldConfig::zero(const LatticeSpec& lattice, int dim_h) {
    FieldConfig cfg;
    cfg.lattice = lattice;
    cfg.dim_h = dim_h;
    const int sites = lattice.num_sites();
    const Matrix z = Matrix::Zero(dim_h, dim_h);
    cfg.gauge.assign(static_cast<std::size_t>(sites), std::vector<Matrix>(lattice.dims.size(), z));
    cfg.phi.assign(static_cast<std::size_t>(sites), z);
    cfg.gravity.assign(static_cast<std::size_t>(sites), GravityScalars{});
    return cfg;
}

void validate(const FieldConfig& cfg, const FiniteTriple* triple, double tol) {
    validate(cfg.lattice);
    const auto sites = static_cast<std::size_t>(cfg.lattice.num_sites());
    const auto d = cfg.lattice.dims.size();
    if (cfg.gauge.size() != sites || cfg.phi.size() != sites || cfg.gravity.size() != sites) {
        throw DimensionError("field configuration does not have one entry per lattice site (" +
                             std::to_string(sites) + ")");
    }
    if (triple && triple->dim_h != cfg.dim_h) {
        throw DimensionError("field configuration has dim_h " + std::to_string(cfg.dim_h) + " but the triple has " +
                             std::to_string(triple->dim_h));
    }
    RealMatrix tau_image;
    if (triple) {
        const auto basis = gauge_algebra_basis(*triple);
        tau_image.resize(2 * static_cast<Eigen::Index>(cfg.dim_h) * cfg.dim_h, static_cast<Eigen::Index>(basis.size()));
        for (std::size_t k = 0; k < basis.size(); ++k) tau_image.col(static_cast<Eigen::Index>(k)) = realify(basis[k]);
    }
    for (std::size_t x = 0; x < sites; ++x) {
        if (cfg.gauge[x].size() != d) throw DimensionError("site " + std::to_string(x) + " has the wrong number of B_mu");
        for (std::size_t mu = 0; mu < d; ++mu) {
            const Matrix& b = cfg.gauge[x][mu];
            if (b.rows() != cfg.dim_h || b.cols() != cfg.dim_h) {
                throw DimensionError("B_mu at site " + std::to_string(x) + " has the wrong size");
            }
            if (max_abs(b + b.adjoint()) > tol) {
                throw InvalidData("B_" + std::to_string(mu) + " at site " + std::to_string(x) + " is not anti-Hermitian");
            }
            if (triple) {
                const RealVector v = realify(b);
                const RealVector rest = v - tau_image * (tau_image.transpose() * v);
                if (rest.cwiseAbs().maxCoeff() > tol) {
                    throw InvalidData("B_" + std::to_string(mu) + " at site " + std::to_string(x) +
                                      " is not in the gauge Lie algebra");
                }
            }
        }
        const Matrix& p = cfg.phi[x];
        if (p.rows() != cfg.dim_h || p.cols() != cfg.dim_h) {
            throw DimensionError("Phi at site " + std::to_string(x) + " has the wrong size");
        }
        if (max_abs(p - p.adjoint()) > tol) throw InvalidData("Phi at site " + std::to_string(x) + " is not Hermitian");
        if (triple && triple->even() && max_abs(triple->gamma * p + p * triple->gamma) > tol) {
            throw InvalidData("Phi at site " + std::to_string(x) + " does not anticommute with the grading");
        }
    }
}

std::vector<Matrix> central_difference(const LatticeSpec& lattice, const std::vector<Matrix>& field, int axis) {
    const int sites = lattice.num_sites();
    std::vector<Matrix> out(static_cast<std::size_t>(sites));
    const double inv = 1.0 / (2.0 * lattice.spacing);
    for (int x = 0; x < sites; ++x) {
        const auto& fwd = field[static_cast<std::size_t>(lattice.shift(x, axis, 1))];
        const auto& bwd = field[static_cast<std::size_t>(lattice.shift(x, axis, -1))];
        out[static_cast<std::size_t>(x)] = (fwd - bwd) * inv;
    }
    return out;
}

std::vector<double> central_difference(const LatticeSpec& lattice, const std::vector<double>& field, int axis) {
    const int sites = lattice.num_sites();
    std::vector<double> out(static_cast<std::size_t>(sites));
    const double inv = 1.0 / (2.0 * lattice.spacing);
    for (int x = 0; x < sites; ++x) {
        out[static_cast<std::size_t>(x)] = (field[static_cast<std::size_t>(lattice.shift(x, axis, 1))] -
                                            field[static_cast<std::size_t>(lattice.shift(x, axis, -1))]) *
                                           inv;
    }
    return out;
}

std::vector<double> laplacian(const LatticeSpec& lattice, const std::vector<double>& field) {
    const int sites = lattice.num_sites();
    const double inv = 1.0 / (lattice.spacing * lattice.spacing);
    std::vector<double> out(static_cast<std::size_t>(sites), 0.0);
    for (int x = 0; x < sites; ++x) {
        double acc = 0.0;
        const double f0 = field[static_cast<std::size_t>(x)];
        for (int axis = 0; axis < lattice.dimension(); ++axis) {
            acc += field[static_cast<std::size_t>(lattice.shift(x, axis, 1))] - 2.0 * f0 +
                   field[static_cast<std::size_t>(lattice.shift(x, axis, -1))];
        }
        out[static_cast<std::size_t>(x)] = -acc * inv;
    }
    return out;
}

}  // namespace finspec
