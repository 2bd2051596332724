#include "finspec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "finspec/cech.hpp"
#include "finspec/dirac_moduli.hpp"
#include "finspec/fluctuation.hpp"
#include "finspec/io.hpp"
#include "finspec/lagrangian.hpp"
#include "finspec/lattice_product.hpp"
#include "finspec/random.hpp"

namespace finspec::cli {

namespace {

struct Options {
    double tol = kDefaultTolerance;
    std::string format = "text";
    std::uint64_t seed = 1;

    std::string triple_path;
    std::string second_path;  // terms, fields or atlas depending on the command
    std::string csv_path;

    bool no_grading_constraint = false;

    Moments moments;
    std::string lattice;
    double spacing = 1.0;
    std::string gamma_basis = "chiral";
    int fermionic_samples = 0;

    std::string lift_target;
    std::string equivalent;
    std::string transform;
};

/// Report plus verdict of one command.
struct Outcome {
    json report;
    bool passed = true;
};

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(6) << std::scientific << x;
    return s.str();
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

json header(const std::string& command, const Options& o) {
    return {{"schema_version", kSchemaVersion}, {"command", command}, {"tolerance", o.tol}};
}

std::vector<int> parse_lattice_flag(const std::string& s) {
    std::vector<int> dims;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, 'x')) {
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != part.size() || part.empty()) {
            throw ParseError("--lattice", "", "expected site counts like 3x3x3x3, got '" + s + "'");
        }
        dims.push_back(n);
    }
    return dims;
}

FiniteTriple load_triple(const Options& o) {
    const TripleSpec spec = read_triple_file(o.triple_path);
    try {
        return build_triple(spec.data, spec.dirac);
    } catch (const DimensionError& e) {
        throw ParseError(o.triple_path, "/dirac", e.what());
    }
}

json checks_json(const AxiomReport& r) {
    json arr = json::array();
    for (const auto& c : r.checks) arr.push_back({{"name", c.name}, {"residual", c.residual}, {"passed", c.passed}});
    return arr;
}

Outcome cmd_check(const Options& o) {
    const FiniteTriple t = load_triple(o);
    const AxiomReport r = verify_axioms(t, o.tol);
    json rep = header("check", o);
    rep["ko"] = t.ko().n;
    rep["dim_h"] = t.dim_h;
    rep["checks"] = checks_json(r);
    rep["passed"] = r.passed();
    return {rep, r.passed()};
}

json components_json(const std::vector<std::vector<int>>& comps) {
    json out = json::array();
    for (const auto& c : comps) {
        json cls = json::array();
        for (int i : c) cls.push_back(i + 1);
        out.push_back(cls);
    }
    return out;
}

Outcome cmd_gauge_group(const Options& o) {
    const FiniteTriple t = load_triple(o);
    const GaugeStructure g = gauge_structure(t, o.tol);
    const CentralSubalgebra aj = aj_basis(t, o.tol);
    double aj_residual = 0.0;
    for (double r : aj.residuals) aj_residual = std::max(aj_residual, r);
    const bool ok = g.tau_rank == g.gauge_lie_dim && aj_residual <= o.tol;
    json rep = header("gauge-group", o);
    rep["components"] = components_json(g.components);
    rep["dim_u_af"] = g.dim_u_af;
    rep["dim_aj"] = g.dim_aj;
    rep["gauge_lie_dim"] = g.gauge_lie_dim;
    rep["tau_rank"] = g.tau_rank;
    rep["aj_residual"] = aj_residual;
    rep["passed"] = ok;
    return {rep, ok};
}

Outcome cmd_dirac_moduli(const Options& o) {
    const TripleSpec spec = read_triple_file(o.triple_path);
    const FiniteTriple t = load_triple(o);
    const bool even = t.even() && !o.no_grading_constraint;
    const ModuliBasis m = solve_moduli(t, even);
    double worst = 0.0;
    json basis = json::array();
    for (std::size_t k = 0; k < m.basis.size(); ++k) {
        basis.push_back(to_json(m.basis[k]));
        worst = std::max(worst, m.residuals[k]);
    }
    bool ok = worst <= o.tol;
    json rep = header("dirac-moduli", o);
    rep["dim_h"] = m.dim_h;
    rep["real_dim"] = m.real_dim;
    rep["grading_constraint"] = even;
    rep["gap_ratio"] = std::isfinite(m.gap_ratio) ? json(m.gap_ratio) : json(nullptr);
    rep["gap_warning"] = std::isfinite(m.gap_ratio) && m.gap_ratio < 1e4;
    rep["max_residual"] = worst;
    rep["basis"] = basis;
    if (spec.dirac) {
        const double proj = max_abs(project_onto_moduli(m, *spec.dirac) - *spec.dirac);
        rep["dirac_projection_residual"] = proj;
        ok = ok && proj <= o.tol;
    }
    rep["passed"] = ok;
    return {rep, ok};
}

Outcome cmd_fluctuate(const Options& o) {
    const FiniteTriple t = load_triple(o);
    const OneFormTerms terms = parse_one_form_terms(load_json_file(o.second_path), o.second_path, t.data.dims);
    const OneForm a = one_form(t, terms);
    json rep = header("fluctuate", o);
    rep["one_form"] = to_json(a.matrix);
    rep["hermiticity_residual"] = a.hermiticity_residual;
    bool ok = a.self_adjoint(o.tol);
    if (ok) {
        const Matrix d_a = fluctuate(t, a, o.tol);
        const Matrix phi = phi_field(t, terms, o.tol);
        rep["fluctuated_dirac"] = to_json(d_a);
        rep["phi"] = to_json(phi);
        Rng rng(o.seed);
        const GaugeTransformedForm g = gauge_transform_fluctuation(t, a, random_unitary_element(t.data.dims, rng), o.tol);
        rep["covariance_residual"] = g.covariance_residual;
        ok = g.covariance_residual <= o.tol;
    }
    rep["passed"] = ok;
    return {rep, ok};
}

void write_csv(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError(path, "", "cannot write CSV output");
    f << text;
}

Outcome cmd_lagrangian(const Options& o) {
    const FiniteTriple t = load_triple(o);
    const FieldConfig cfg = read_field_config_file(o.second_path);
    try {
        validate(cfg, &t, o.tol);
        validate(o.moments);
    } catch (const std::invalid_argument& e) {
        throw ParseError(o.second_path, "", e.what());
    }
    const auto grav = density_gravity(cfg, o.moments, cfg.dim_h);
    const auto gauge = density_gauge(cfg, o.moments);
    const auto higgs = density_higgs_terms(cfg, o.moments);
    const ActionBreakdown total = total_action_breakdown(cfg, o.moments);

    if (!o.csv_path.empty()) {
        std::ostringstream csv;
        csv << std::setprecision(17);
        csv << "site";
        for (int mu = 0; mu < cfg.lattice.dimension(); ++mu) csv << ",x" << mu;
        csv << ",gravity,gauge,higgs_mass,higgs_quartic,higgs_boundary,higgs_curvature,higgs_kinetic,total\n";
        for (int x = 0; x < cfg.lattice.num_sites(); ++x) {
            const auto xs = static_cast<std::size_t>(x);
            csv << x;
            for (int c : cfg.lattice.coords(x)) csv << ',' << c;
            const auto& h = higgs[xs];
            csv << ',' << grav[xs] << ',' << gauge[xs] << ',' << h.mass << ',' << h.quartic << ',' << h.boundary << ','
                << h.curvature << ',' << h.kinetic << ',' << grav[xs] + gauge[xs] + h.total() << '\n';
        }
        write_csv(o.csv_path, csv.str());
    }

    json rep = header("lagrangian", o);
    rep["moments"] = {{"f0", o.moments.f0}, {"f2", o.moments.f2}, {"f4", o.moments.f4}, {"lambda", o.moments.lambda}};
    rep["fibre_rank"] = cfg.dim_h;
    rep["sites"] = cfg.lattice.num_sites();
    rep["total_action"] = total.total;
    rep["breakdown"] = {{"gravity", total.gravity},
                        {"gauge", total.gauge},
                        {"higgs", total.higgs},
                        {"boundary", total.boundary}};
    rep["passed"] = true;
    return {rep, true};
}

FieldConfig spectrum_fields(const Options& o, const FiniteTriple& t) {
    if (!o.second_path.empty()) {
        FieldConfig cfg = read_field_config_file(o.second_path);
        if (!o.lattice.empty() && parse_lattice_flag(o.lattice) != cfg.lattice.dims) {
            throw ParseError("--lattice", "", "does not match the lattice of " + o.second_path);
        }
        try {
            validate(cfg, &t, o.tol);
        } catch (const std::invalid_argument& e) {
            throw ParseError(o.second_path, "", e.what());
        }
        return cfg;
    }
    if (o.lattice.empty()) throw ParseError("spectrum", "", "either a field file or --lattice is required");
    LatticeSpec lat{parse_lattice_flag(o.lattice), o.spacing};
    try {
        validate(lat);
    } catch (const InvalidData& e) {
        throw ParseError("--lattice", "", e.what());
    }
    FieldConfig cfg = FieldConfig::zero(lat, t.dim_h);
    if (lat.dimension() != 1) {
        for (auto& phi : cfg.phi) phi = t.dirac;
    }
    return cfg;
}

Outcome cmd_spectrum(const Options& o) {
    const FiniteTriple t = load_triple(o);
    const FieldConfig cfg = spectrum_fields(o, t);
    CliffordData cl;
    try {
        cl = clifford(cfg.lattice.dimension(), o.gamma_basis);
    } catch (const InvalidData& e) {
        throw ParseError("--gamma-basis", "", e.what());
    }
    if (!t.even()) throw ParseError(o.triple_path, "/ko", "the product operator needs an even finite triple");
    ProductOperator p;
    try {
        p = build_product(cl, cfg, t);
    } catch (const DimensionError& e) {
        throw ParseError(o.second_path.empty() ? o.triple_path : o.second_path, "", e.what());
    }
    const RealVector ev = spectrum(p);
    validate(o.moments);
    const double trace = spectral_action_trace(ev, [](double x) { return std::exp(-x * x); }, o.moments.lambda);

    json rep = header("spectrum", o);
    rep["lattice"] = {{"dims", cfg.lattice.dims}, {"spacing", cfg.lattice.spacing}};
    rep["gamma_basis"] = cl.basis;
    rep["dimension"] = p.dimension();
    rep["cutoff_function"] = "exp(-x^2)";
    rep["lambda"] = o.moments.lambda;
    rep["spectral_action_trace"] = trace;
    const double herm = max_abs(p.dirac - p.dirac.adjoint());
    rep["hermiticity_residual"] = herm;
    bool ok = herm <= o.tol;
    if (p.gamma) {
        const double pairing = (ev + ev.reverse()).cwiseAbs().maxCoeff();
        rep["pairing_residual"] = pairing;
    }
    if (cl.dimension == 4) {
        const ProductKOReport ko = verify_product_ko(p, o.tol);
        rep["product_ko"] = {{"eps", ko.eps},
                             {"eps_prime", ko.eps_prime},
                             {"eps_double_prime", ko.eps_double_prime},
                             {"j2_residual", ko.j2_residual},
                             {"jd_residual", ko.jd_residual},
                             {"jgamma_residual", ko.jg_residual},
                             {"gamma_d_residual", ko.gamma_d_residual},
                             {"matched", ko.matched_ko ? json(*ko.matched_ko) : json(nullptr)},
                             {"expected", ko.expected_ko},
                             {"passed", ko.passed()}};
        ok = ok && ko.passed();
        if (o.fermionic_samples > 0) {
            Rng rng(o.seed);
            double worst = 0.0;
            for (int k = 0; k < o.fermionic_samples; ++k) {
                Vector xi = even_part(p, random_vector(p.dimension(), rng));
                Vector xp = even_part(p, random_vector(p.dimension(), rng));
                xi.normalize();
                xp.normalize();
                worst = std::max(worst, std::abs(fermionic_form(p, xi, xp, o.tol) + fermionic_form(p, xp, xi, o.tol)));
            }
            rep["fermionic_samples"] = o.fermionic_samples;
            rep["fermionic_antisymmetry_residual"] = worst;
            if (ko.eps == -1) ok = ok && worst <= o.tol;
        }
    }
    json evs = json::array();
    for (Eigen::Index k = 0; k < ev.size(); ++k) evs.push_back(ev(k));
    rep["eigenvalues"] = evs;
    if (!o.csv_path.empty()) {
        std::ostringstream csv;
        csv << std::setprecision(17) << "index,eigenvalue\n";
        for (Eigen::Index k = 0; k < ev.size(); ++k) csv << k << ',' << ev(k) << '\n';
        write_csv(o.csv_path, csv.str());
    }
    rep["passed"] = ok;
    return {rep, ok};
}

json cech_json(const CechReport& r) {
    json arr = json::array();
    for (const auto& c : r.checks) {
        arr.push_back({{"name", c.name},
                       {"residual", c.residual},
                       {"worst", c.worst},
                       {"samples", c.samples},
                       {"passed", c.passed}});
    }
    return arr;
}

PatchField read_patch_field(const std::string& path, int group_dim) {
    const json doc = load_json_file(path);
    const Reader r{path};
    PatchField out;
    const json& fields = r.field(doc, "", "fields");
    if (!fields.is_array()) r.fail("/fields", "expected an array");
    for (std::size_t k = 0; k < fields.size(); ++k) {
        const std::string p = "/fields/" + std::to_string(k);
        const int patch = r.integer(r.field(fields[k], p, "patch"), p + "/patch");
        const std::string point = r.string(r.field(fields[k], p, "point"), p + "/point");
        Matrix g = r.matrix(r.field(fields[k], p, "g"), p + "/g");
        if (g.rows() != group_dim || g.cols() != group_dim) r.fail(p + "/g", "wrong matrix size");
        out[patch - 1][point] = std::move(g);
    }
    return out;
}

Outcome cmd_cech(const Options& o) {
    const CechAtlas atlas = read_atlas_file(o.triple_path);
    try {
        validate(atlas, o.tol);
    } catch (const InvalidData& e) {
        throw ParseError(o.triple_path, "", e.what());
    }
    json rep = header("cech", o);
    json checks = json::array();
    bool ok = true;
    const auto add = [&](const CechReport& r) {
        for (auto& c : cech_json(r)) checks.push_back(c);
        ok = ok && r.passed();
    };
    if (!atlas.triple_overlaps.empty()) add(verify_cocycle(atlas, o.tol));
    if (!atlas.connections.empty()) add(verify_connection_compat(atlas, o.tol));
    if (!o.lift_target.empty()) {
        if (o.second_path.empty()) throw ParseError("--lift-target", "", "a triple file is required for lift checks");
        const TripleSpec spec = read_triple_file(o.second_path);
        const FiniteTriple t = build_triple(spec.data, spec.dirac);
        const CechAtlas target = read_atlas_file(o.lift_target);
        add(verify_lift(atlas, target, t, o.tol));
    }
    if (!o.equivalent.empty()) {
        if (o.transform.empty()) throw ParseError("--equivalent", "", "--transform is required");
        const CechAtlas other = read_atlas_file(o.equivalent);
        add(atlases_equivalent(atlas, other, read_patch_field(o.transform, atlas.group_dim), o.tol));
    }
    rep["patches"] = atlas.num_patches;
    rep["checks"] = checks;
    rep["passed"] = ok;
    return {rep, ok};
}

void print_text(const json& rep, std::ostream& out) {
    const std::string cmd = rep["command"];
    out << cmd << " (tolerance " << fmt(rep["tolerance"].get<double>()) << ")\n";
    for (const auto& [key, value] : rep.items()) {
        if (key == "schema_version" || key == "command" || key == "tolerance" || key == "passed") continue;
        if (key == "checks") {
            for (const auto& c : value) {
                out << "  " << std::left << std::setw(20) << c["name"].get<std::string>() << ' '
                    << fmt(c["residual"].get<double>()) << "  " << verdict(c["passed"].get<bool>());
                if (c.contains("worst") && !c["worst"].get<std::string>().empty()) out << "  at " << c["worst"].get<std::string>();
                out << '\n';
            }
            continue;
        }
        if (value.is_array() && value.dump().size() > 100) {
            out << "  " << key << ": " << value.size() << " items (see --format json)\n";
            continue;
        }
        out << "  " << key << ": " << value.dump() << '\n';
    }
    out << "result: " << verdict(rep["passed"].get<bool>()) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Finite spectral triples, almost-commutative gauge theories and their lattice products", "finspec"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--tol", o.tol, "Absolute residual tolerance")->envname("FINSPEC_TOL")->check(CLI::PositiveNumber);
    app.add_option("--format", o.format, "Output format")
        ->envname("FINSPEC_FORMAT")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", o.seed, "Seed for randomised checks")->envname("FINSPEC_SEED");

    auto* check = app.add_subcommand("check", "Verify the axioms of a finite real spectral triple");
    check->add_option("triple", o.triple_path, "Triple file")->required()->check(CLI::ExistingFile);

    auto* gauge = app.add_subcommand("gauge-group", "Connected components, (A_F)_J and gauge Lie algebra dimension");
    gauge->add_option("triple", o.triple_path, "Triple file")->required()->check(CLI::ExistingFile);

    auto* moduli = app.add_subcommand("dirac-moduli", "Real basis of the admissible Dirac operators");
    moduli->add_option("triple", o.triple_path, "Triple file")->required()->check(CLI::ExistingFile);
    moduli->add_flag("--no-grading-constraint", o.no_grading_constraint,
                     "Do not impose anticommutation with the grading");

    auto* fluct = app.add_subcommand("fluctuate", "Inner fluctuation D_A and scalar field Phi");
    fluct->add_option("triple", o.triple_path, "Triple file with a dirac matrix")->required()->check(CLI::ExistingFile);
    fluct->add_option("terms", o.second_path, "One-form coefficient file")->required()->check(CLI::ExistingFile);

    const auto add_moments = [&](CLI::App* sub) {
        sub->add_option("--f0", o.moments.f0, "Moment f(0)")->envname("FINSPEC_F0");
        sub->add_option("--f2", o.moments.f2, "Moment f_2")->envname("FINSPEC_F2");
        sub->add_option("--f4", o.moments.f4, "Moment f_4")->envname("FINSPEC_F4");
        sub->add_option("--lambda", o.moments.lambda, "Cutoff Lambda")->envname("FINSPEC_LAMBDA");
    };
    auto* lag = app.add_subcommand("lagrangian", "Spectral-action Lagrangian densities and total action");
    lag->add_option("triple", o.triple_path, "Triple file")->required()->check(CLI::ExistingFile);
    lag->add_option("fields", o.second_path, "Field configuration file")->required()->check(CLI::ExistingFile);
    add_moments(lag);
    lag->add_option("--csv", o.csv_path, "Write per-site densities to this CSV file");

    auto* spec = app.add_subcommand("spectrum", "Spectrum of the lattice product Dirac operator");
    spec->add_option("triple", o.triple_path, "Triple file")->required()->check(CLI::ExistingFile);
    spec->add_option("fields", o.second_path, "Field configuration file (default: B = 0, Phi = D_F)")
        ->check(CLI::ExistingFile);
    spec->add_option("--lattice", o.lattice, "Sites per axis, e.g. 3x3x3x3")->envname("FINSPEC_LATTICE");
    spec->add_option("--spacing", o.spacing, "Lattice spacing")->envname("FINSPEC_SPACING")->check(CLI::PositiveNumber);
    spec->add_option("--gamma-basis", o.gamma_basis, "Gamma matrix basis (chiral or dirac)")
        ->envname("FINSPEC_GAMMA_BASIS");
    spec->add_option("--lambda", o.moments.lambda, "Cutoff Lambda for the trace")->envname("FINSPEC_LAMBDA");
    spec->add_option("--fermionic-samples", o.fermionic_samples, "Random even pairs for the antisymmetry check")
        ->check(CLI::NonNegativeNumber);
    spec->add_option("--csv", o.csv_path, "Write sorted eigenvalues to this CSV file");

    auto* cech = app.add_subcommand("cech", "Cocycle, connection, lift and equivalence checks on an atlas");
    cech->add_option("atlas", o.triple_path, "Atlas file")->required()->check(CLI::ExistingFile);
    cech->add_option("--triple", o.second_path, "Triple file for lift checks")->check(CLI::ExistingFile);
    cech->add_option("--lift-target", o.lift_target, "Atlas over the gauge group to lift to")->check(CLI::ExistingFile);
    cech->add_option("--equivalent", o.equivalent, "Second atlas for an equivalence check")->check(CLI::ExistingFile);
    cech->add_option("--transform", o.transform, "Per-patch group elements relating the two atlases")
        ->check(CLI::ExistingFile);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsageError;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    Outcome result;
    try {
        if (cmd == "check") result = cmd_check(o);
        else if (cmd == "gauge-group") result = cmd_gauge_group(o);
        else if (cmd == "dirac-moduli") result = cmd_dirac_moduli(o);
        else if (cmd == "fluctuate") result = cmd_fluctuate(o);
        else if (cmd == "lagrangian") result = cmd_lagrangian(o);
        else if (cmd == "spectrum") result = cmd_spectrum(o);
        else result = cmd_cech(o);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kVerificationFailed;
    }

    if (o.format == "json") {
        out << result.report.dump(2) << '\n';
    } else {
        print_text(result.report, out);
    }
    return result.passed ? kSuccess : kVerificationFailed;
}

}  // namespace finspec::cli
