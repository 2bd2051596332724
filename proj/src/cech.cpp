#include "finspec/cech.hpp"

#include <algorithm>
#include <string>

namespace finspec {

namespace {

std::string where(int i, int j, const std::string& point) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")@" + point;
}

const CechSample* find_sample(const std::vector<CechSample>& samples, const std::string& point) {
    for (const auto& s : samples) {
        if (s.point == point) return &s;
    }
    return nullptr;
}

void record(CechCheck& c, double residual, const std::string& location) {
    ++c.samples;
    if (c.samples == 1 || residual > c.residual) {
        c.residual = residual;
        c.worst = location;
    }
}

void finish(CechCheck& c, double tol) { c.passed = c.residual <= tol; }

void require_same_nerve(const CechAtlas& a, const CechAtlas& b) {
    if (a.num_patches != b.num_patches) throw InvalidData("atlases have different numbers of patches");
    if (a.overlaps.size() != b.overlaps.size()) throw InvalidData("atlases have different overlaps");
    for (const auto& [key, samples] : a.overlaps) {
        const auto it = b.overlaps.find(key);
        if (it == b.overlaps.end()) {
            throw InvalidData("overlap " + where(key.first, key.second, "") + " is missing from the second atlas");
        }
        if (it->second.size() != samples.size()) {
            throw InvalidData("overlap " + where(key.first, key.second, "") + " has different sample counts");
        }
        for (const auto& s : samples) {
            if (!find_sample(it->second, s.point)) {
                throw InvalidData("sample " + where(key.first, key.second, s.point) +
                                  " is missing from the second atlas");
            }
        }
    }
}

}  // namespace

std::optional<Matrix> CechAtlas::transition(int i, int j, const std::string& point) const {
    if (auto it = overlaps.find({i, j}); it != overlaps.end()) {
        if (const auto* s = find_sample(it->second, point)) return s->g;
    }
    if (auto it = overlaps.find({j, i}); it != overlaps.end()) {
        if (const auto* s = find_sample(it->second, point)) return Matrix(s->g.adjoint());
    }
    if (i == j) return identity(group_dim);
    return std::nullopt;
}

Matrix CechAtlas::require(int i, int j, const std::string& point) const {
    auto g = transition(i, j, point);
    if (!g) throw InvalidData("missing sample of g" + where(i, j, point));
    return *g;
}

void validate(const CechAtlas& atlas, double tol) {
    if (atlas.num_patches <= 0) throw InvalidData("atlas needs at least one patch");
    if (atlas.group_dim <= 0) throw InvalidData("atlas group dimension must be positive");
    const auto in_range = [&](int p) { return p >= 0 && p < atlas.num_patches; };
    for (const auto& [key, samples] : atlas.overlaps) {
        const auto [i, j] = key;
        if (!in_range(i) || !in_range(j)) throw InvalidData("overlap " + where(i, j, "") + " names an unknown patch");
        for (const auto& s : samples) {
            if (s.g.rows() != atlas.group_dim || s.g.cols() != atlas.group_dim) {
                throw InvalidData("sample " + where(i, j, s.point) + " has the wrong size");
            }
            const double unit = max_abs(s.g * s.g.adjoint() - identity(atlas.group_dim));
            if (unit > tol) {
                throw InvalidData("sample " + where(i, j, s.point) + " is not unitary (residual " +
                                  std::to_string(unit) + ")");
            }
            for (const auto& d : s.dg) {
                if (d.rows() != atlas.group_dim || d.cols() != atlas.group_dim) {
                    throw InvalidData("derivative sample " + where(i, j, s.point) + " has the wrong size");
                }
            }
            if (auto back = atlas.overlaps.find({j, i}); i != j && back != atlas.overlaps.end()) {
                if (const auto* r = find_sample(back->second, s.point)) {
                    if (max_abs(s.g * r->g - identity(atlas.group_dim)) > tol) {
                        throw InvalidData("g" + where(j, i, s.point) + " is not the inverse of g" +
                                          where(i, j, s.point));
                    }
                }
            }
        }
    }
    for (const auto& tri : atlas.triple_overlaps) {
        if (!in_range(tri.i) || !in_range(tri.j) || !in_range(tri.k)) {
            throw InvalidData("triple overlap names an unknown patch");
        }
    }
    for (const auto& [patch, by_point] : atlas.connections) {
        if (!in_range(patch)) throw InvalidData("connection given for unknown patch " + std::to_string(patch + 1));
        for (const auto& [point, forms] : by_point) {
            for (const auto& w : forms) {
                if (w.rows() != atlas.group_dim || w.cols() != atlas.group_dim) {
                    throw InvalidData("connection sample at " + point + " has the wrong size");
                }
            }
        }
    }
}

bool CechReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CechCheck& c) { return c.passed; });
}

double CechReport::max_residual() const {
    double r = 0.0;
    for (const auto& c : checks) r = std::max(r, c.residual);
    return r;
}

CechReport verify_cocycle(const CechAtlas& atlas, double tol) {
    CechReport report;
    report.tolerance = tol;
    CechCheck c;
    c.name = "cocycle";
    const Matrix one = identity(atlas.group_dim);
    for (const auto& tri : atlas.triple_overlaps) {
        for (const auto& x : tri.points) {
            const Matrix prod = atlas.require(tri.i, tri.j, x) * atlas.require(tri.j, tri.k, x) *
                                atlas.require(tri.k, tri.i, x);
            record(c, max_abs(prod - one),
                   "(" + std::to_string(tri.i + 1) + "," + std::to_string(tri.j + 1) + "," +
                       std::to_string(tri.k + 1) + ")@" + x);
        }
    }
    finish(c, tol);
    report.checks.push_back(c);
    return report;
}

CechReport atlases_equivalent(const CechAtlas& a1, const CechAtlas& a2, const PatchField& g, double tol) {
    require_same_nerve(a1, a2);
    if (a1.group_dim != a2.group_dim) throw InvalidData("atlases have different group dimensions");
    const auto patch_element = [&](int patch, const std::string& point) -> const Matrix& {
        const auto p = g.find(patch);
        if (p == g.end()) throw InvalidData("no gauge field given on patch " + std::to_string(patch + 1));
        const auto x = p->second.find(point);
        if (x == p->second.end()) {
            throw InvalidData("gauge field on patch " + std::to_string(patch + 1) + " has no sample at " + point);
        }
        return x->second;
    };
    CechReport report;
    report.tolerance = tol;
    CechCheck c;
    c.name = "equivalence";
    for (const auto& [key, samples] : a1.overlaps) {
        const auto [i, j] = key;
        const auto& other = a2.overlaps.at(key);
        for (const auto& s : samples) {
            const Matrix& gi = patch_element(i, s.point);
            const Matrix& gj = patch_element(j, s.point);
            const Matrix expected = gi.adjoint() * s.g * gj;
            record(c, max_abs(expected - find_sample(other, s.point)->g), where(i, j, s.point));
        }
    }
    finish(c, tol);
    report.checks.push_back(c);
    return report;
}

CechAtlas quotient_cocycle(const CechAtlas& atlas, const FiniteTriple& t, double tol) {
    int algebra_dim = 0;
    for (int n : t.data.dims) algebra_dim += n;
    if (atlas.group_dim != algebra_dim) {
        throw DimensionError("atlas samples have size " + std::to_string(atlas.group_dim) +
                             " but the algebra acts by blocks of total size " + std::to_string(algebra_dim));
    }
    CechAtlas out;
    out.num_patches = atlas.num_patches;
    out.group_dim = t.dim_h;
    out.triple_overlaps = atlas.triple_overlaps;
    for (const auto& [key, samples] : atlas.overlaps) {
        auto& dst = out.overlaps[key];
        for (const auto& s : samples) {
            const AlgebraElement u = AlgebraElement::from_block_diagonal(s.g, t.data.dims);
            if (unitarity_residual(u) > tol) {
                throw PreconditionError("sample " + where(key.first, key.second, s.point) + " is not unitary");
            }
            dst.push_back({s.point, gauge_element(t, u, tol), {}});
        }
    }
    return out;
}

CechReport verify_lift(const CechAtlas& candidate, const CechAtlas& target, const FiniteTriple& t, double tol) {
    require_same_nerve(candidate, target);
    CechReport report = verify_cocycle(candidate, tol);
    report.checks.front().name = "candidate_cocycle";
    const CechAtlas image = quotient_cocycle(candidate, t, tol);
    if (target.group_dim != image.group_dim) {
        throw DimensionError("target atlas must be valued in unitaries of H_F (size " + std::to_string(t.dim_h) + ")");
    }
    CechCheck c;
    c.name = "projection";
    for (const auto& [key, samples] : image.overlaps) {
        const auto& other = target.overlaps.at(key);
        for (const auto& s : samples) {
            record(c, max_abs(s.g - find_sample(other, s.point)->g), where(key.first, key.second, s.point));
        }
    }
    finish(c, tol);
    report.checks.push_back(c);
    return report;
}

CechReport verify_connection_compat(const CechAtlas& atlas, double tol) {
    const auto omega = [&](int patch, const std::string& point) -> const std::vector<Matrix>& {
        const auto p = atlas.connections.find(patch);
        if (p == atlas.connections.end()) {
            throw InvalidData("no connection samples on patch " + std::to_string(patch + 1));
        }
        const auto x = p->second.find(point);
        if (x == p->second.end()) {
            throw InvalidData("connection on patch " + std::to_string(patch + 1) + " has no sample at " + point);
        }
        return x->second;
    };
    CechReport report;
    report.tolerance = tol;
    CechCheck c;
    c.name = "connection";
    for (const auto& [key, samples] : atlas.overlaps) {
        const auto [i, j] = key;
        for (const auto& s : samples) {
            if (s.dg.empty()) throw InvalidData("missing derivative samples for g" + where(i, j, s.point));
            const auto& wi = omega(i, s.point);
            const auto& wj = omega(j, s.point);
            if (wi.size() != s.dg.size() || wj.size() != s.dg.size()) {
                throw InvalidData("connection and derivative samples at " + where(i, j, s.point) +
                                  " have different numbers of directions");
            }
            const Matrix g_inv = s.g.adjoint();
            for (std::size_t mu = 0; mu < s.dg.size(); ++mu) {
                const Matrix expected = g_inv * s.dg[mu] + g_inv * wi[mu] * s.g;
                record(c, max_abs(wj[mu] - expected), where(i, j, s.point) + "/d" + std::to_string(mu));
            }
        }
    }
    finish(c, tol);
    report.checks.push_back(c);
    return report;
}

}  // namespace finspec
