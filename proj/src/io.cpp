#include "finspec/io.hpp"

#include <fstream>
#include <sstream>

namespace finspec {

namespace {

std::string type_name(const json& v) { return v.type_name(); }

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

const json& array_at(const Reader& r, const json& v, const std::string& path) {
    if (!v.is_array()) r.fail(path, "expected an array, found " + type_name(v));
    return v;
}

}  // namespace

ParseError::ParseError(std::string file, std::string location, const std::string& message)
    : std::runtime_error(file + ":" + (location.empty() ? std::string() : location + ":") + " " + message),
      file_(std::move(file)),
      location_(std::move(location)) {}

json parse_json_text(const std::string& text, const std::string& source_name) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string msg = e.what();
        if (const auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
        throw ParseError(source_name, std::to_string(line) + ":" + std::to_string(col), msg);
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "", "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

void Reader::fail(const std::string& path, const std::string& message) const {
    throw ParseError(file, path.empty() ? "/" : path, message);
}

const json& Reader::field(const json& obj, const std::string& path, const std::string& key) const {
    if (!obj.is_object()) fail(path, "expected an object, found " + type_name(obj));
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path, "missing required field '" + key + "'");
    return *it;
}

const json* Reader::optional_field(const json& obj, const std::string& path, const std::string& key) const {
    if (!obj.is_object()) fail(path, "expected an object, found " + type_name(obj));
    const auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

int Reader::integer(const json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer, found " + type_name(v));
    return v.get<int>();
}

double Reader::real(const json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number, found " + type_name(v));
    return v.get<double>();
}

cplx Reader::complex(const json& v, const std::string& path) const {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(path, "expected a complex number [re, im]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

Matrix Reader::matrix(const json& v, const std::string& path) const {
    array_at(*this, v, path);
    const auto rows = static_cast<Eigen::Index>(v.size());
    if (rows == 0) return Matrix(0, 0);
    const json& first = array_at(*this, v[0], child(path, 0));
    const auto cols = static_cast<Eigen::Index>(first.size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::string rp = child(path, static_cast<std::size_t>(r));
        const json& row = array_at(*this, v[static_cast<std::size_t>(r)], rp);
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            fail(rp, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = complex(row[static_cast<std::size_t>(c)], child(rp, static_cast<std::size_t>(c)));
        }
    }
    return m;
}

std::string Reader::string(const json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "expected a string, found " + type_name(v));
    return v.get<std::string>();
}

TripleSpec parse_triple(const json& doc, const std::string& file) {
    const Reader r{file};
    TripleSpec spec;
    auto& d = spec.data;

    const json& dims = array_at(r, r.field(doc, "", "dims"), "/dims");
    for (std::size_t k = 0; k < dims.size(); ++k) {
        const int n = r.integer(dims[k], child("/dims", k));
        if (n < 1) r.fail(child("/dims", k), "summand size must be at least 1");
        d.dims.push_back(n);
    }
    if (d.dims.empty()) r.fail("/dims", "at least one summand is required");

    const json& pairs = array_at(r, r.field(doc, "", "pairs"), "/pairs");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const std::string p = child("/pairs", k);
        const json& pr = array_at(r, pairs[k], p);
        if (pr.size() != 2) r.fail(p, "expected a pair [i, j]");
        const int i = r.integer(pr[0], child(p, 0));
        const int j = r.integer(pr[1], child(p, 1));
        for (int idx : {i, j}) {
            if (idx < 1 || idx > static_cast<int>(d.dims.size())) {
                r.fail(p, "summand index " + std::to_string(idx) + " out of range 1.." + std::to_string(d.dims.size()));
            }
        }
        d.pairs.emplace_back(i - 1, j - 1);
    }

    const int ko = r.integer(r.field(doc, "", "ko"), "/ko");
    if (ko < 0 || ko > 7) r.fail("/ko", "KO-dimension must be between 0 and 7");
    d.ko = KOSignature::from_dimension(ko);

    if (const json* g = r.optional_field(doc, "", "grading")) {
        array_at(r, *g, "/grading");
        for (std::size_t k = 0; k < g->size(); ++k) d.grading.push_back(r.integer((*g)[k], child("/grading", k)));
    }

    try {
        validate(d);
    } catch (const InvalidData& e) {
        r.fail("/", e.what());
    }

    if (const json* dirac = r.optional_field(doc, "", "dirac")) spec.dirac = r.matrix(*dirac, "/dirac");
    return spec;
}

TripleSpec read_triple_file(const std::string& path) { return parse_triple(load_json_file(path), path); }

namespace {

void read_site(const Reader& r, const json& obj, const std::string& path, FieldConfig& cfg, std::size_t site) {
    const int d = cfg.lattice.dimension();
    const auto n = static_cast<Eigen::Index>(cfg.dim_h);
    const auto check = [&](const Matrix& m, const std::string& p) {
        if (m.rows() != n || m.cols() != n) {
            r.fail(p, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
        }
    };
    if (!obj.is_object()) r.fail(path, "expected an object, found " + type_name(obj));
    if (const json* b = r.optional_field(obj, path, "B")) {
        const std::string bp = child(path, "B");
        array_at(r, *b, bp);
        if (static_cast<int>(b->size()) != d) {
            r.fail(bp, "expected " + std::to_string(d) + " matrices (one per axis)");
        }
        for (std::size_t mu = 0; mu < b->size(); ++mu) {
            Matrix m = r.matrix((*b)[mu], child(bp, mu));
            check(m, child(bp, mu));
            cfg.gauge[site][mu] = std::move(m);
        }
    }
    if (const json* phi = r.optional_field(obj, path, "Phi")) {
        Matrix m = r.matrix(*phi, child(path, "Phi"));
        check(m, child(path, "Phi"));
        cfg.phi[site] = std::move(m);
    }
    auto& g = cfg.gravity[site];
    if (const json* v = r.optional_field(obj, path, "s")) g.s = r.real(*v, child(path, "s"));
    if (const json* v = r.optional_field(obj, path, "weyl_sq")) g.weyl_sq = r.real(*v, child(path, "weyl_sq"));
    if (const json* v = r.optional_field(obj, path, "euler")) g.euler = r.real(*v, child(path, "euler"));
}

}  // namespace

FieldConfig parse_field_config(const json& doc, const std::string& file) {
    const Reader r{file};
    const json& lat = r.field(doc, "", "lattice");
    LatticeSpec spec;
    const json& dims = array_at(r, r.field(lat, "/lattice", "dims"), "/lattice/dims");
    for (std::size_t k = 0; k < dims.size(); ++k) spec.dims.push_back(r.integer(dims[k], child("/lattice/dims", k)));
    spec.spacing = r.real(r.field(lat, "/lattice", "spacing"), "/lattice/spacing");
    try {
        validate(spec);
    } catch (const InvalidData& e) {
        r.fail("/lattice", e.what());
    }
    const int dim_h = r.integer(r.field(doc, "", "dim_h"), "/dim_h");
    if (dim_h < 1) r.fail("/dim_h", "dim_h must be positive");

    FieldConfig cfg = FieldConfig::zero(spec, dim_h);
    const auto sites = static_cast<std::size_t>(spec.num_sites());
    const json* per_site = r.optional_field(doc, "", "sites");
    const json* uniform = r.optional_field(doc, "", "uniform");
    if ((per_site == nullptr) == (uniform == nullptr)) r.fail("/", "exactly one of 'sites' or 'uniform' is required");
    if (uniform) {
        read_site(r, *uniform, "/uniform", cfg, 0);
        for (std::size_t x = 1; x < sites; ++x) {
            cfg.gauge[x] = cfg.gauge[0];
            cfg.phi[x] = cfg.phi[0];
            cfg.gravity[x] = cfg.gravity[0];
        }
    } else {
        array_at(r, *per_site, "/sites");
        if (per_site->size() != sites) {
            r.fail("/sites", "expected " + std::to_string(sites) + " sites, found " + std::to_string(per_site->size()));
        }
        for (std::size_t x = 0; x < sites; ++x) read_site(r, (*per_site)[x], child("/sites", x), cfg, x);
    }
    return cfg;
}

FieldConfig read_field_config_file(const std::string& path) {
    return parse_field_config(load_json_file(path), path);
}

AlgebraElement parse_algebra_element(const Reader& r, const json& v, const std::string& path,
                                     const std::vector<int>& dims) {
    array_at(r, v, path);
    if (v.size() != dims.size()) {
        r.fail(path, "expected " + std::to_string(dims.size()) + " blocks (one per summand)");
    }
    AlgebraElement a;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        Matrix m = r.matrix(v[k], child(path, k));
        if (m.rows() != dims[k] || m.cols() != dims[k]) {
            r.fail(child(path, k), "expected a " + std::to_string(dims[k]) + "x" + std::to_string(dims[k]) + " block");
        }
        a.blocks.push_back(std::move(m));
    }
    return a;
}

OneFormTerms parse_one_form_terms(const json& doc, const std::string& file, const std::vector<int>& dims) {
    const Reader r{file};
    const json& terms = array_at(r, r.field(doc, "", "terms"), "/terms");
    OneFormTerms out;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const std::string p = child("/terms", k);
        out.emplace_back(parse_algebra_element(r, r.field(terms[k], p, "a"), child(p, "a"), dims),
                         parse_algebra_element(r, r.field(terms[k], p, "b"), child(p, "b"), dims));
    }
    return out;
}

CechAtlas parse_atlas(const json& doc, const std::string& file) {
    const Reader r{file};
    CechAtlas atlas;
    atlas.num_patches = r.integer(r.field(doc, "", "patches"), "/patches");
    atlas.group_dim = r.integer(r.field(doc, "", "group_dim"), "/group_dim");
    if (atlas.num_patches < 1) r.fail("/patches", "at least one patch is required");
    if (atlas.group_dim < 1) r.fail("/group_dim", "group dimension must be positive");
    const auto patch = [&](const json& v, const std::string& p) {
        const int k = r.integer(v, p);
        if (k < 1 || k > atlas.num_patches) {
            r.fail(p, "patch index " + std::to_string(k) + " out of range 1.." + std::to_string(atlas.num_patches));
        }
        return k - 1;
    };
    const auto square = [&](const json& v, const std::string& p) {
        Matrix m = r.matrix(v, p);
        if (m.rows() != atlas.group_dim || m.cols() != atlas.group_dim) {
            r.fail(p, "expected a " + std::to_string(atlas.group_dim) + "x" + std::to_string(atlas.group_dim) +
                          " matrix");
        }
        return m;
    };

    const json& overlaps = array_at(r, r.field(doc, "", "overlaps"), "/overlaps");
    for (std::size_t k = 0; k < overlaps.size(); ++k) {
        const std::string p = child("/overlaps", k);
        const json& pr = array_at(r, r.field(overlaps[k], p, "pair"), child(p, "pair"));
        if (pr.size() != 2) r.fail(child(p, "pair"), "expected a pair [i, j]");
        const int i = patch(pr[0], child(child(p, "pair"), 0));
        const int j = patch(pr[1], child(child(p, "pair"), 1));
        if (atlas.overlaps.count({i, j})) r.fail(child(p, "pair"), "overlap listed twice");
        auto& dst = atlas.overlaps[{i, j}];
        const json& samples = array_at(r, r.field(overlaps[k], p, "samples"), child(p, "samples"));
        for (std::size_t s = 0; s < samples.size(); ++s) {
            const std::string sp = child(child(p, "samples"), s);
            CechSample sample;
            sample.point = r.string(r.field(samples[s], sp, "point"), child(sp, "point"));
            sample.g = square(r.field(samples[s], sp, "g"), child(sp, "g"));
            if (const json* dg = r.optional_field(samples[s], sp, "dg")) {
                array_at(r, *dg, child(sp, "dg"));
                for (std::size_t mu = 0; mu < dg->size(); ++mu) {
                    sample.dg.push_back(square((*dg)[mu], child(child(sp, "dg"), mu)));
                }
            }
            dst.push_back(std::move(sample));
        }
    }

    if (const json* tris = r.optional_field(doc, "", "triple_overlaps")) {
        array_at(r, *tris, "/triple_overlaps");
        for (std::size_t k = 0; k < tris->size(); ++k) {
            const std::string p = child("/triple_overlaps", k);
            const json& idx = array_at(r, r.field((*tris)[k], p, "patches"), child(p, "patches"));
            if (idx.size() != 3) r.fail(child(p, "patches"), "expected three patch indices");
            TripleOverlap tri{patch(idx[0], child(child(p, "patches"), 0)), patch(idx[1], child(child(p, "patches"), 1)),
                              patch(idx[2], child(child(p, "patches"), 2)), {}};
            const json& pts = array_at(r, r.field((*tris)[k], p, "points"), child(p, "points"));
            for (std::size_t s = 0; s < pts.size(); ++s) tri.points.push_back(r.string(pts[s], child(child(p, "points"), s)));
            atlas.triple_overlaps.push_back(std::move(tri));
        }
    }

    if (const json* conns = r.optional_field(doc, "", "connections")) {
        array_at(r, *conns, "/connections");
        for (std::size_t k = 0; k < conns->size(); ++k) {
            const std::string p = child("/connections", k);
            const int pi = patch(r.field((*conns)[k], p, "patch"), child(p, "patch"));
            const std::string point = r.string(r.field((*conns)[k], p, "point"), child(p, "point"));
            const json& om = array_at(r, r.field((*conns)[k], p, "omega"), child(p, "omega"));
            std::vector<Matrix> forms;
            for (std::size_t mu = 0; mu < om.size(); ++mu) forms.push_back(square(om[mu], child(child(p, "omega"), mu)));
            atlas.connections[pi][point] = std::move(forms);
        }
    }
    return atlas;
}

CechAtlas read_atlas_file(const std::string& path) { return parse_atlas(load_json_file(path), path); }

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const AlgebraElement& a) {
    json out = json::array();
    for (const auto& b : a.blocks) out.push_back(to_json(b));
    return out;
}

json to_json(const KrajewskiData& data) {
    json pairs = json::array();
    for (const auto& [i, j] : data.pairs) pairs.push_back(json::array({i + 1, j + 1}));
    json out{{"dims", data.dims}, {"pairs", pairs}, {"ko", data.ko.n}};
    if (!data.grading.empty()) out["grading"] = data.grading;
    return out;
}

json to_json(const TripleSpec& spec) {
    json out = to_json(spec.data);
    if (spec.dirac) out["dirac"] = to_json(*spec.dirac);
    return out;
}

json to_json(const FieldConfig& cfg) {
    json sites = json::array();
    for (std::size_t x = 0; x < cfg.phi.size(); ++x) {
        json b = json::array();
        for (const auto& m : cfg.gauge[x]) b.push_back(to_json(m));
        const auto& g = cfg.gravity[x];
        sites.push_back({{"B", b}, {"Phi", to_json(cfg.phi[x])}, {"s", g.s}, {"weyl_sq", g.weyl_sq}, {"euler", g.euler}});
    }
    return {{"lattice", {{"dims", cfg.lattice.dims}, {"spacing", cfg.lattice.spacing}}},
            {"dim_h", cfg.dim_h},
            {"sites", sites}};
}

json to_json(const CechAtlas& atlas) {
    json overlaps = json::array();
    for (const auto& [key, samples] : atlas.overlaps) {
        json ss = json::array();
        for (const auto& s : samples) {
            json obj{{"point", s.point}, {"g", to_json(s.g)}};
            if (!s.dg.empty()) {
                json dg = json::array();
                for (const auto& d : s.dg) dg.push_back(to_json(d));
                obj["dg"] = dg;
            }
            ss.push_back(std::move(obj));
        }
        overlaps.push_back({{"pair", {key.first + 1, key.second + 1}}, {"samples", ss}});
    }
    json tris = json::array();
    for (const auto& t : atlas.triple_overlaps) {
        tris.push_back({{"patches", {t.i + 1, t.j + 1, t.k + 1}}, {"points", t.points}});
    }
    json conns = json::array();
    for (const auto& [patch, by_point] : atlas.connections) {
        for (const auto& [point, forms] : by_point) {
            json om = json::array();
            for (const auto& w : forms) om.push_back(to_json(w));
            conns.push_back({{"patch", patch + 1}, {"point", point}, {"omega", om}});
        }
    }
    json out{{"patches", atlas.num_patches}, {"group_dim", atlas.group_dim}, {"overlaps", overlaps}};
    if (!tris.empty()) out["triple_overlaps"] = tris;
    if (!conns.empty()) out["connections"] = conns;
    return out;
}

}  // namespace finspec
