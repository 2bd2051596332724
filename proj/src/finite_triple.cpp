#include "finspec/finite_triple.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "finspec/linalg.hpp"

namespace finspec {

// ---------------------------------------------------------------------------
// Krajewski data

int KrajewskiData::multiplicity(int i, int j) const {
    return static_cast<int>(std::count(pairs.begin(), pairs.end(), std::make_pair(i, j)));
}

void validate(const KrajewskiData& data) {
    const int l = data.num_summands();
    if (l == 0) throw InvalidData("Krajewski data has no summands");
    for (int i = 0; i < l; ++i) {
        if (data.dims[i] <= 0) {
            throw InvalidData("summand " + std::to_string(i + 1) + " has non-positive dimension");
        }
    }
    if (data.pairs.empty()) throw InvalidData("pair multiset K is empty");
    std::vector<bool> left_hit(l, false), right_hit(l, false);
    for (const auto& [i, j] : data.pairs) {
        if (i < 0 || i >= l || j < 0 || j >= l) {
            std::ostringstream os;
            os << "pair (" << i + 1 << "," << j + 1 << ") refers to a summand outside 1.." << l;
            throw InvalidData(os.str());
        }
        left_hit[i] = true;
        right_hit[j] = true;
    }
    for (int i = 0; i < l; ++i) {
        if (!left_hit[i] || !right_hit[i]) {
            throw InvalidData("summand " + std::to_string(i + 1) +
                              " does not occur in both coordinates of K (action not faithful)");
        }
        for (int j = i + 1; j < l; ++j) {
            if (data.multiplicity(i, j) != data.multiplicity(j, i)) {
                std::ostringstream os;
                os << "multiplicity of (" << i + 1 << "," << j + 1 << ") differs from (" << j + 1 << "," << i + 1
                   << ")";
                throw InvalidData(os.str());
            }
        }
        if (data.ko.eps == -1 && data.multiplicity(i, i) % 2 != 0) {
            throw InvalidData("J^2 = -1 requires an even multiplicity of (" + std::to_string(i + 1) + "," +
                              std::to_string(i + 1) + ")");
        }
    }
    const KOSignature expected = KOSignature::from_dimension(data.ko.n);
    if (!(expected == data.ko)) throw InvalidData("KO signs do not match the sign table row");

    if (!data.ko.even()) {
        if (!data.grading.empty()) throw InvalidData("grading given for odd KO-dimension");
        return;
    }
    if (data.grading.size() != data.pairs.size()) {
        throw InvalidData("grading has " + std::to_string(data.grading.size()) + " entries, expected " +
                          std::to_string(data.pairs.size()));
    }
    for (int g : data.grading) {
        if (g != 1 && g != -1) throw InvalidData("grading entries must be +1 or -1");
    }
    const auto slots = make_slots(data);
    const int epp = *data.ko.eps_double_prime;
    for (std::size_t s = 0; s < slots.size(); ++s) {
        const Slot& sl = slots[s];
        const int p = sl.partner;
        if (data.grading[static_cast<std::size_t>(p)] != epp * data.grading[s]) {
            std::ostringstream os;
            os << "grading of slot " << s << " (" << sl.i + 1 << "," << sl.j + 1 << ") and its J-partner " << p
               << " violate J gamma = " << epp << " gamma J";
            throw InvalidData(os.str());
        }
    }
}

std::vector<Slot> make_slots(const KrajewskiData& data) {
    std::vector<std::pair<int, int>> sorted = data.pairs;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Slot> slots;
    slots.reserve(sorted.size());
    std::map<std::pair<int, int>, std::vector<int>> by_pair;
    int offset = 0;
    for (const auto& [i, j] : sorted) {
        Slot s;
        s.i = i;
        s.j = j;
        auto& copies = by_pair[{i, j}];
        s.copy = static_cast<int>(copies.size());
        s.rows = data.dims.at(static_cast<std::size_t>(i));
        s.cols = data.dims.at(static_cast<std::size_t>(j));
        s.offset = offset;
        offset += s.size();
        copies.push_back(static_cast<int>(slots.size()));
        slots.push_back(s);
    }
    for (auto& s : slots) {
        if (s.i != s.j) {
            const auto it = by_pair.find({s.j, s.i});
            if (it == by_pair.end() || s.copy >= static_cast<int>(it->second.size())) {
                s.partner = -1;
                continue;
            }
            s.partner = it->second[static_cast<std::size_t>(s.copy)];
            // H_ij -> H_ji by t*, H_ji -> H_ij by eps t* (i < j)
            s.j_sign = s.i < s.j ? 1 : data.ko.eps;
        } else if (data.ko.eps == 1) {
            s.partner = by_pair[{s.i, s.i}][static_cast<std::size_t>(s.copy)];
            s.j_sign = 1;
        } else {
            const auto& copies = by_pair[{s.i, s.i}];
            const int half = static_cast<int>(copies.size()) / 2;
            if (s.copy < half) {
                s.partner = copies[static_cast<std::size_t>(s.copy + half)];
                s.j_sign = 1;
            } else {
                s.partner = copies[static_cast<std::size_t>(s.copy - half)];
                s.j_sign = -1;
            }
        }
    }
    return slots;
}

// ---------------------------------------------------------------------------
// Algebra elements

AlgebraElement AlgebraElement::zero(const std::vector<int>& dims) {
    AlgebraElement a;
    for (int n : dims) a.blocks.push_back(Matrix::Zero(n, n));
    return a;
}

AlgebraElement AlgebraElement::identity(const std::vector<int>& dims) {
    AlgebraElement a;
    for (int n : dims) a.blocks.push_back(Matrix::Identity(n, n));
    return a;
}

AlgebraElement AlgebraElement::unit(const std::vector<int>& dims, int summand, int k, int l) {
    AlgebraElement a = zero(dims);
    a.blocks.at(static_cast<std::size_t>(summand))(k, l) = 1.0;
    return a;
}

AlgebraElement AlgebraElement::adjoint() const {
    AlgebraElement r;
    for (const auto& b : blocks) r.blocks.push_back(b.adjoint());
    return r;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& other) const {
    if (other.blocks.size() != blocks.size()) throw DimensionError("algebra elements have different block counts");
    AlgebraElement r;
    for (std::size_t k = 0; k < blocks.size(); ++k) r.blocks.push_back(blocks[k] * other.blocks[k]);
    return r;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& other) const {
    if (other.blocks.size() != blocks.size()) throw DimensionError("algebra elements have different block counts");
    AlgebraElement r;
    for (std::size_t k = 0; k < blocks.size(); ++k) r.blocks.push_back(blocks[k] + other.blocks[k]);
    return r;
}

AlgebraElement AlgebraElement::operator*(cplx s) const {
    AlgebraElement r;
    for (const auto& b : blocks) r.blocks.push_back(b * s);
    return r;
}

Matrix AlgebraElement::to_block_diagonal() const {
    Eigen::Index n = 0;
    for (const auto& b : blocks) n += b.rows();
    Matrix m = Matrix::Zero(n, n);
    Eigen::Index off = 0;
    for (const auto& b : blocks) {
        m.block(off, off, b.rows(), b.cols()) = b;
        off += b.rows();
    }
    return m;
}

AlgebraElement AlgebraElement::from_block_diagonal(const Matrix& m, const std::vector<int>& dims) {
    const int n = std::accumulate(dims.begin(), dims.end(), 0);
    if (m.rows() != n || m.cols() != n) {
        throw DimensionError("block-diagonal matrix has size " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected " + std::to_string(n));
    }
    AlgebraElement a;
    int off = 0;
    for (int d : dims) {
        a.blocks.push_back(m.block(off, off, d, d));
        off += d;
    }
    return a;
}

void check_shape(const AlgebraElement& a, const std::vector<int>& dims) {
    if (a.blocks.size() != dims.size()) {
        throw DimensionError("algebra element has " + std::to_string(a.blocks.size()) + " blocks, expected " +
                             std::to_string(dims.size()));
    }
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (a.blocks[k].rows() != dims[k] || a.blocks[k].cols() != dims[k]) {
            throw DimensionError("block " + std::to_string(k + 1) + " is " + std::to_string(a.blocks[k].rows()) +
                                 "x" + std::to_string(a.blocks[k].cols()) + ", expected " +
                                 std::to_string(dims[k]) + "x" + std::to_string(dims[k]));
        }
    }
}

double unitarity_residual(const AlgebraElement& u) {
    double r = 0.0;
    for (const auto& b : u.blocks) r = std::max(r, max_abs(b * b.adjoint() - identity(b.rows())));
    return r;
}

double anti_hermiticity_residual(const AlgebraElement& x) {
    double r = 0.0;
    for (const auto& b : x.blocks) r = std::max(r, max_abs(b + b.adjoint()));
    return r;
}

// ---------------------------------------------------------------------------
// FiniteTriple

Matrix FiniteTriple::left_action(const AlgebraElement& a) const {
    check_shape(a, data.dims);
    Matrix m = Matrix::Zero(dim_h, dim_h);
    for (const auto& s : slots) {
        const Matrix& ai = a.blocks[static_cast<std::size_t>(s.i)];
        // a_i ⊗ 1_{N_j} on row-major vectorised N_i × N_j matrices
        for (int r = 0; r < s.rows; ++r) {
            for (int k = 0; k < s.rows; ++k) {
                const cplx v = ai(r, k);
                if (v == cplx(0.0)) continue;
                for (int c = 0; c < s.cols; ++c) {
                    m(s.offset + r * s.cols + c, s.offset + k * s.cols + c) = v;
                }
            }
        }
    }
    if (frame) return (*frame) * m * frame->adjoint();
    return m;
}

Matrix FiniteTriple::conjugate_by_j(const Matrix& x) const {
    return j_matrix * x.conjugate() * j_matrix.adjoint();
}

Matrix FiniteTriple::right_action(const AlgebraElement& b) const { return conjugate_by_j(left_action(b)); }

std::vector<AlgebraElement> FiniteTriple::generators() const {
    std::vector<AlgebraElement> gens;
    for (int s = 0; s < data.num_summands(); ++s) {
        const int n = data.dims[static_cast<std::size_t>(s)];
        for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) gens.push_back(AlgebraElement::unit(data.dims, s, k, l));
        }
    }
    return gens;
}

FiniteTriple FiniteTriple::with_dirac(const Matrix& d) const {
    if (d.rows() != dim_h || d.cols() != dim_h) {
        throw DimensionError("Dirac operator is " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                             ", expected " + std::to_string(dim_h) + "x" + std::to_string(dim_h));
    }
    FiniteTriple t = *this;
    t.dirac = d;
    return t;
}

FiniteTriple build_triple(const KrajewskiData& data, const std::optional<Matrix>& dirac) {
    validate(data);
    FiniteTriple t;
    t.data = data;
    t.slots = make_slots(data);
    t.dim_h = 0;
    for (const auto& s : t.slots) t.dim_h += s.size();

    t.j_matrix = Matrix::Zero(t.dim_h, t.dim_h);
    for (const auto& s : t.slots) {
        const Slot& p = t.slots[static_cast<std::size_t>(s.partner)];
        // (t*)_{c r} = conj(t_{r c}); the partner slot holds N_j × N_i matrices
        for (int r = 0; r < s.rows; ++r) {
            for (int c = 0; c < s.cols; ++c) {
                t.j_matrix(p.offset + c * p.cols + r, s.offset + r * s.cols + c) = static_cast<double>(s.j_sign);
            }
        }
    }

    t.gamma = Matrix::Identity(t.dim_h, t.dim_h);
    if (data.ko.even()) {
        for (std::size_t k = 0; k < t.slots.size(); ++k) {
            const auto& s = t.slots[k];
            for (int q = 0; q < s.size(); ++q) t.gamma(s.offset + q, s.offset + q) = data.grading[k];
        }
    }

    t.dirac = Matrix::Zero(t.dim_h, t.dim_h);
    if (dirac) t = t.with_dirac(*dirac);
    return t;
}

FiniteTriple change_frame(const FiniteTriple& t, const Matrix& w) {
    if (w.rows() != t.dim_h || w.cols() != t.dim_h) throw DimensionError("frame change has the wrong size");
    if (max_abs(w * w.adjoint() - identity(t.dim_h)) > 1e-10) throw PreconditionError("frame change is not unitary");
    FiniteTriple r = t;
    r.j_matrix = w * t.j_matrix * w.transpose();
    r.gamma = w * t.gamma * w.adjoint();
    r.dirac = w * t.dirac * w.adjoint();
    r.frame = t.frame ? Matrix(w * (*t.frame)) : w;
    return r;
}

// ---------------------------------------------------------------------------
// Axioms

bool AxiomReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck& AxiomReport::at(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return c;
    }
    throw std::out_of_range("no axiom check named " + name);
}

AxiomReport verify_axioms(const FiniteTriple& t, double tol) {
    AxiomReport rep;
    rep.tolerance = tol;
    auto add = [&](const std::string& name, double residual) {
        rep.checks.push_back({name, residual, residual < tol});
    };
    const Matrix id = identity(t.dim_h);
    const Matrix& u = t.j_matrix;
    const Matrix& d = t.dirac;
    const Matrix& g = t.gamma;
    const auto& ko = t.ko();

    add("j_unitary", max_abs(u * u.adjoint() - id));
    add("J2", max_abs(u * u.conjugate() - static_cast<double>(ko.eps) * id));
    add("JD", max_abs(t.conjugate_by_j(d) - static_cast<double>(ko.eps_prime) * d));
    if (ko.even()) {
        add("Jgamma", max_abs(t.conjugate_by_j(g) - static_cast<double>(*ko.eps_double_prime) * g));
        add("gamma2", max_abs(g * g - id));
        add("gamma_hermitian", max_abs(g - g.adjoint()));
        add("gammaD", max_abs(d * g + g * d));
    }
    add("D_hermitian", max_abs(d - d.adjoint()));

    const auto gens = t.generators();
    std::vector<Matrix> left, right, dcomm;
    left.reserve(gens.size());
    for (const auto& a : gens) {
        left.push_back(t.left_action(a));
        right.push_back(t.conjugate_by_j(left.back()));
        dcomm.push_back(commutator(d, left.back()));
    }
    double hom = max_abs(t.left_action(AlgebraElement::identity(t.data.dims)) - id);
    double grade_alg = 0.0, order0 = 0.0, order1 = 0.0;
    for (std::size_t a = 0; a < gens.size(); ++a) {
        hom = std::max(hom, max_abs(left[a].adjoint() - t.left_action(gens[a].adjoint())));
        if (ko.even()) grade_alg = std::max(grade_alg, max_abs(commutator(g, left[a])));
        for (std::size_t b = 0; b < gens.size(); ++b) {
            hom = std::max(hom, max_abs(left[a] * left[b] - t.left_action(gens[a] * gens[b])));
            order0 = std::max(order0, max_abs(commutator(left[a], right[b])));
            order1 = std::max(order1, max_abs(commutator(dcomm[a], right[b])));
        }
    }
    if (ko.even()) add("gamma_algebra", grade_alg);
    add("homomorphism", hom);
    add("order_zero", order0);
    add("first_order", order1);

    // Faithfulness: the left action must be injective on A_F.
    const auto basis = anti_hermitian_basis(t.data.dims);
    RealMatrix images(2 * static_cast<Eigen::Index>(t.dim_h) * t.dim_h, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) images.col(static_cast<Eigen::Index>(k)) = realify(t.left_action(basis[k]));
    const double smin = images.cols() == 0 ? 1.0 : Eigen::JacobiSVD<RealMatrix>(images).singularValues().minCoeff();
    add("faithful", std::max(0.0, 1.0 - smin));
    return rep;
}

// ---------------------------------------------------------------------------
// Gauge structure

std::vector<std::vector<int>> connected_components(const KrajewskiData& data) {
    const int l = data.num_summands();
    std::vector<int> parent(static_cast<std::size_t>(l));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& [i, j] : data.pairs) {
        if (i == j) continue;
        const int a = find(i), b = find(j);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::map<int, std::vector<int>> classes;
    for (int i = 0; i < l; ++i) classes[find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : classes) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

CentralSubalgebra aj_basis(const FiniteTriple& t, double /*tol*/) {
    CentralSubalgebra out;
    for (const auto& cls : connected_components(t.data)) {
        AlgebraElement b = AlgebraElement::zero(t.data.dims);
        for (int i : cls) b.blocks[static_cast<std::size_t>(i)].setIdentity();
        // bJ = Jb*  <=>  L(b)·U = U·conj(L(b)*) = U·L(b)^T
        const Matrix lb = t.left_action(b);
        out.residuals.push_back(max_abs(lb * t.j_matrix - t.j_matrix * lb.transpose()));
        out.basis.push_back(std::move(b));
    }
    return out;
}

std::vector<AlgebraElement> anti_hermitian_basis(const std::vector<int>& dims) {
    std::vector<AlgebraElement> basis;
    const double r2 = 1.0 / std::sqrt(2.0);
    const cplx i1(0.0, 1.0);
    for (std::size_t s = 0; s < dims.size(); ++s) {
        const int n = dims[s];
        for (int k = 0; k < n; ++k) {
            AlgebraElement a = AlgebraElement::zero(dims);
            a.blocks[s](k, k) = i1;
            basis.push_back(std::move(a));
        }
        for (int k = 0; k < n; ++k) {
            for (int l = k + 1; l < n; ++l) {
                AlgebraElement re = AlgebraElement::zero(dims);
                re.blocks[s](k, l) = r2;
                re.blocks[s](l, k) = -r2;
                basis.push_back(std::move(re));
                AlgebraElement im = AlgebraElement::zero(dims);
                im.blocks[s](k, l) = i1 * r2;
                im.blocks[s](l, k) = i1 * r2;
                basis.push_back(std::move(im));
            }
        }
    }
    return basis;
}

Matrix tau(const FiniteTriple& t, const AlgebraElement& x, double tol) {
    check_shape(x, t.data.dims);
    const double r = anti_hermiticity_residual(x);
    if (r > tol) throw PreconditionError("tau: argument is not anti-Hermitian (residual " + std::to_string(r) + ")");
    const Matrix lx = t.left_action(x);
    return lx + t.conjugate_by_j(lx);
}

namespace {

RealMatrix tau_image_columns(const FiniteTriple& t) {
    const auto basis = anti_hermitian_basis(t.data.dims);
    RealMatrix cols(2 * static_cast<Eigen::Index>(t.dim_h) * t.dim_h, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const Matrix lx = t.left_action(basis[k]);
        cols.col(static_cast<Eigen::Index>(k)) = realify(lx + t.conjugate_by_j(lx));
    }
    return cols;
}

}  // namespace

GaugeStructure gauge_structure(const FiniteTriple& t, double /*tol*/) {
    GaugeStructure gs;
    gs.components = connected_components(t.data);
    for (int n : t.data.dims) gs.dim_u_af += n * n;
    gs.dim_aj = static_cast<int>(gs.components.size());
    gs.gauge_lie_dim = gs.dim_u_af - gs.dim_aj;
    gs.tau_rank = numerical_rank(tau_image_columns(t));
    return gs;
}

std::vector<Matrix> gauge_algebra_basis(const FiniteTriple& t) {
    const RealMatrix cols = tau_image_columns(t);
    const RealMatrix basis = range_basis(cols);
    std::vector<Matrix> out;
    for (Eigen::Index k = 0; k < basis.cols(); ++k) out.push_back(complexify(basis.col(k), t.dim_h));
    return out;
}

Matrix gauge_element(const FiniteTriple& t, const AlgebraElement& u, double tol) {
    check_shape(u, t.data.dims);
    const double r = unitarity_residual(u);
    if (r > tol) throw PreconditionError("gauge element: argument is not unitary (residual " + std::to_string(r) + ")");
    const Matrix lu = t.left_action(u);
    return lu * t.conjugate_by_j(lu);
}

std::vector<std::pair<cplx, int>> class_determinants(const FiniteTriple& t, const AlgebraElement& u) {
    check_shape(u, t.data.dims);
    std::vector<cplx> block_det;
    for (const auto& b : u.blocks) block_det.push_back(b.determinant());
    std::vector<std::pair<cplx, int>> out;
    for (const auto& cls : connected_components(t.data)) {
        cplx det = 1.0;
        int dim = 0;
        for (const auto& s : t.slots) {
            if (std::find(cls.begin(), cls.end(), s.i) == cls.end()) continue;
            // det(u_i ⊗ 1_{N_j}) = det(u_i)^{N_j}
            det *= std::pow(block_det[static_cast<std::size_t>(s.i)], s.cols);
            dim += s.size();
        }
        out.emplace_back(det, dim);
    }
    return out;
}

UnimodularSplit unimodular_decompose(const FiniteTriple& t, const AlgebraElement& u) {
    const auto dets = class_determinants(t, u);
    const auto classes = connected_components(t.data);
    UnimodularSplit split;
    split.w = AlgebraElement::identity(t.data.dims);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const auto [det, dim] = dets[c];
        double arg = std::arg(det);
        if (det.real() < 0.0 && std::abs(det.imag()) <= 1e-15 * std::abs(det)) arg = std::numbers::pi;
        const cplx root = std::polar(std::pow(std::abs(det), 1.0 / dim), arg / dim);
        for (int i : classes[c]) split.w.blocks[static_cast<std::size_t>(i)] *= root;
    }
    AlgebraElement w_inv = split.w;
    for (auto& b : w_inv.blocks) b = b.inverse();
    split.v = u * w_inv;
    return split;
}

}  // namespace finspec
