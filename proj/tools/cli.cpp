#include "cli.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "loewy/errors.hpp"
#include "loewy/io.hpp"
#include "loewy/sl3.hpp"

namespace loewy::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string type = "B2";
    int level = 5;
    int p = 0;
    std::string label;
    std::string other;
    std::string weight;
    std::string format = "text";
    std::string module = "antispherical";
    std::string rigidity_module = "weyl";
    int wall = -1;
    int count = 12;
    int height = -1;
    bool radical = false;
    std::string dir;
};

struct Undetermined : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Context {
    std::unique_ptr<KLEngine> kl;
    std::unique_ptr<LoewySolver> solver;

    explicit Context(const Options& o) {
        RootDatum rd = RootDatum::build(o.type);
        AlcoveGeometry geo(rd, o.level);
        LabelMap labels = io::load_label_map(io::fixture_dir(), o.type, o.level, geo).labels;
        kl = std::make_unique<KLEngine>(geo);
        solver = std::make_unique<LoewySolver>(*kl, std::move(labels));
    }
    const AlcoveGeometry& geo() const { return kl->geometry(); }
    const RootDatum& rd() const { return geo().root_datum(); }
};

Weight parse_weight(const std::string& s, int rank) {
    std::vector<int> c;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            c.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw DomainError("bad weight '" + s + "'");
        }
    }
    if (static_cast<int>(c.size()) != rank)
        throw DomainError("weight '" + s + "' needs " + std::to_string(rank) + " coordinates");
    return Weight(c);
}

bool is_steinberg(const Context& c, const Options& o) {
    if (o.weight.empty()) return false;
    return parse_weight(o.weight, c.rd().rank()) == (c.geo().level() - 1) * c.rd().rho();
}

Alcove module_alcove(const Context& c, const Options& o, const std::string& label) {
    if (!label.empty()) return c.solver->resolve(label);
    if (o.weight.empty()) throw DomainError("give --label or --weight");
    Weight w = parse_weight(o.weight, c.rd().rank());
    if (!w.is_dominant()) throw DomainError("weight " + w.str() + " is not dominant");
    if (!c.geo().is_regular(w)) throw DomainError("weight " + w.str() + " is singular; use --label with --wall");
    return c.geo().alcove_of(w);
}

Alcove module_alcove(const Context& c, const Options& o) { return module_alcove(c, o, o.label); }

void emit(std::ostream& out, const Options& o, const LayerDiagram& d) {
    if (o.format == "json") out << io::to_json(d) << "\n";
    else if (o.format == "latex") out << render_latex(d);
    else out << render_text(d);
}

void emit(std::ostream& out, const Options& o, const RigidityReport& r) {
    if (o.format == "json") out << io::to_json(r) << "\n";
    else out << render_text(r);
}

void emit_series(std::ostream& out, const Options& o, const SeriesResult& r) {
    if (!r.determined()) {
        if (o.format == "json") {
            out << json{{"undetermined", true}, {"reason", r.reason}, {"trace", r.trace}}.dump(2) << "\n";
        } else {
            out << "UNDETERMINED: " << r.reason << "\n";
            for (auto& t : r.trace) out << "  " << t << "\n";
        }
        throw Undetermined(r.reason);
    }
    emit(out, o, *r.diagram);
}

LayerDiagram steinberg(const std::string& kind) {
    LayerDiagram d;
    d.kind = kind_from_name(kind);
    d.module = "St";
    d.layers = {{{"St", 1}}};
    return d;
}

// alcove enum|classify|reflect

void alcove_enum(const Options& o, std::ostream& out) {
    Context c(o);
    const auto& g = c.geo();
    auto list = o.height >= 0 ? g.enumerate_dominant_up_to(o.height) : g.enumerate_dominant(o.count);
    json arr = json::array();
    for (auto& a : list) {
        arr.push_back({{"alcove", c.solver->name(a)},
                       {"floors", a.floors},
                       {"height", g.height(a)},
                       {"a_plusplus", g.in_A_plusplus(a)},
                       {"point", g.interior_point(a).str()}});
    }
    if (o.format == "json") {
        out << arr.dump(2) << "\n";
        return;
    }
    for (auto& e : arr)
        out << e["alcove"].get<std::string>() << "  floors " << e["floors"].dump() << "  height " << e["height"]
            << (e["a_plusplus"].get<bool>() ? "  A++" : "") << "  point " << e["point"].get<std::string>() << "\n";
}

void alcove_classify(const Options& o, std::ostream& out) {
    Context c(o);
    if (o.weight.empty()) throw DomainError("give --weight");
    Weight w = parse_weight(o.weight, c.rd().rank());
    FacetClass fc = c.geo().classify_weight(w);
    Alcove up = fc.kind == FacetKind::regular ? c.geo().alcove_of(w) : c.geo().upper_alcove_of(w);
    json j{{"weight", w.str()},
           {"kind", facet_kind_name(fc.kind)},
           {"hyperplanes", fc.hyperplanes},
           {"wall_types", fc.wall_types},
           {"upper_alcove", c.solver->name(up)}};
    if (o.format == "json") {
        out << j.dump(2) << "\n";
        return;
    }
    out << w.str() << ": " << facet_kind_name(fc.kind) << " on " << fc.hyperplanes << " hyperplane(s)";
    if (!fc.wall_types.empty()) {
        out << ", walls";
        for (int s : fc.wall_types) out << " s" << s;
    }
    out << "; upper alcove " << c.solver->name(up) << "\n";
}

void alcove_reflect(const Options& o, std::ostream& out) {
    Context c(o);
    if (o.wall < 0) throw DomainError("give --wall");
    Alcove a = module_alcove(c, o);
    Alcove b = c.geo().reflect(a, o.wall);
    bool dom = c.geo().is_dominant(b);
    if (o.format == "json") {
        out << json{{"from", c.solver->name(a)}, {"generator", o.wall}, {"to", c.solver->name(b)}, {"dominant", dom}}.dump(2)
            << "\n";
        return;
    }
    out << c.solver->name(a) << " . s" << o.wall << " = " << c.solver->name(b) << (dom ? "" : " (not dominant)")
        << (c.geo().goes_up(a, o.wall) ? ", up" : ", down") << "\n";
}

// kl poly|mu|mults

void kl_poly(const Options& o, std::ostream& out) {
    Context c(o);
    Alcove a = module_alcove(c, o);
    if (o.other.empty()) throw DomainError("give --other for the second alcove");
    Alcove b = c.solver->resolve(o.other);
    LaurentPoly poly;
    if (o.module == "antispherical") poly = c.kl->tilting_poly(b, a);
    else if (o.module == "spherical") poly = c.kl->kl_poly(b, a);
    else if (o.module == "graded") poly = c.kl->graded_decomposition(b, a);
    else throw DomainError("unknown --module '" + o.module + "'");
    if (o.format == "json") out << io::kl_dump(c.solver->name(b), c.solver->name(a), poly) << "\n";
    else out << o.module << " (" << c.solver->name(b) << ", " << c.solver->name(a) << ") = " << poly.str() << "\n";
}

void kl_mu(const Options& o, std::ostream& out) {
    Context c(o);
    Alcove a = module_alcove(c, o);
    if (o.other.empty()) throw DomainError("give --other for the second alcove");
    Alcove b = c.solver->resolve(o.other);
    int m = c.kl->mu(b, a);
    if (o.format == "json") out << json{{"pair", {c.solver->name(b), c.solver->name(a)}}, {"mu", m}}.dump() << "\n";
    else out << "mu(" << c.solver->name(b) << ", " << c.solver->name(a) << ") = " << m << "\n";
}

void kl_mults(const Options& o, std::ostream& out) {
    Context c(o);
    Alcove a = module_alcove(c, o);
    json weyl = json::object(), tilt = json::object();
    for (auto& [b, m] : c.solver->weyl_factors(a)) weyl[c.solver->name(b)] = m;
    for (auto& [b, m] : c.kl->tilting_delta_mults(a)) tilt[c.solver->name(b)] = m;
    if (o.format == "json") {
        out << json{{"alcove", c.solver->name(a)}, {"weyl_composition", weyl}, {"tilting_delta", tilt}}.dump(2) << "\n";
        return;
    }
    out << "[Delta(" << c.solver->name(a) << ") : L(B)]\n";
    for (auto& [k, v] : weyl.items()) out << "  " << k << ": " << v << "\n";
    out << "(T(" << c.solver->name(a) << ") : Delta(B))\n";
    for (auto& [k, v] : tilt.items()) out << "  " << k << ": " << v << "\n";
}

// weyl layers|socle

void weyl_layers(const Options& o, std::ostream& out) {
    Context c(o);
    if (is_steinberg(c, o)) return emit(out, o, steinberg("parity"));
    Alcove a = module_alcove(c, o);
    if (o.wall >= 0) {
        LayerDiagram d = c.solver->translate_layers(c.solver->weyl_parity_layers(a), o.wall);
        return emit(out, o, d);
    }
    emit(out, o, c.solver->weyl_parity_layers(a));
}

void weyl_socle(const Options& o, std::ostream& out) {
    Context c(o);
    if (is_steinberg(c, o)) return emit(out, o, steinberg(o.radical ? "radical" : "socle"));
    Alcove a = module_alcove(c, o);
    if (o.wall >= 0) {
        auto [rad, soc] = c.solver->singular_weyl_series(a, o.wall);
        return emit_series(out, o, o.radical ? rad : soc);
    }
    emit_series(out, o, o.radical ? c.solver->weyl_radical_series(a) : c.solver->weyl_socle_series(a));
}

// tilting deltafilt|layers

void tilting_deltafilt(const Options& o, std::ostream& out) {
    Context c(o);
    Alcove a = module_alcove(c, o);
    auto mults = c.kl->tilting_delta_mults(a);
    // Group Delta-factors by height, lowest on top, so that Delta(A) is the bottom box.
    std::map<int, std::vector<std::string>> by_height;
    for (auto& [b, m] : mults)
        for (int i = 0; i < m; ++i) by_height[c.geo().height(b)].push_back(c.solver->name(b));
    FiltrationDiagram f;
    f.tag = 'D';
    f.module = "T(" + c.solver->name(a) + ")";
    for (auto& [h, g] : by_height) {
        std::sort(g.begin(), g.end(), label_before);
        f.groups.push_back(g);
    }
    if (o.format == "json") out << io::to_json(f) << "\n";
    else out << render_text(f);
}

void tilting_layers(const Options& o, std::ostream& out) {
    Context c(o);
    if (is_steinberg(c, o)) return emit(out, o, steinberg("socle"));
    emit(out, o, c.solver->projective_tilting_layers(module_alcove(c, o)));
}

// rigidity, translate

void rigidity(const Options& o, std::ostream& out) {
    Context c(o);
    if (is_steinberg(c, o)) return emit(out, o, RigidityReport{true, 1, std::nullopt});
    Alcove a = module_alcove(c, o);
    if (o.rigidity_module == "tilting") {
        if (o.wall >= 0) throw DomainError("singular tilting modules are handled through the fixture validator");
        LayerDiagram soc = c.solver->projective_tilting_layers(a);
        // Tilting modules are self-dual, so the radical series is the socle series reversed.
        LayerDiagram rad = soc.reversed();
        rad.kind = DiagramKind::radical;
        return emit(out, o, rigidity_check(rad, soc));
    }
    SeriesResult soc, rad;
    if (o.wall >= 0) {
        std::tie(rad, soc) = c.solver->singular_weyl_series(a, o.wall);
    } else {
        soc = c.solver->weyl_socle_series(a);
        rad = c.solver->weyl_radical_series(a);
    }
    if (!soc.determined()) return emit_series(out, o, soc);
    if (!rad.determined()) return emit_series(out, o, rad);
    emit(out, o, rigidity_check(*rad.diagram, *soc.diagram));
}

void translate(const Options& o, std::ostream& out) {
    Context c(o);
    if (o.wall < 0) throw DomainError("give --wall");
    Alcove a = module_alcove(c, o);
    LayerDiagram d = c.solver->weyl_parity_layers(a);
    if (o.radical) {
        SeriesResult r = c.solver->weyl_radical_series(a);
        if (!r.determined()) return emit_series(out, o, r);
        d = *r.diagram;
    }
    emit(out, o, c.solver->translate_layers(d, o.wall));
}

// sl3 table|certify

std::unique_ptr<SL3Modular> modular(const Options& o) {
    int p = o.p ? o.p : o.level;
    make_modular_params(p, {}, {});  // rejects p before any geometry is built
    RootDatum rd = RootDatum::build("A2");
    AlcoveGeometry geo(rd, p);
    io::LabelMapFile lm = io::load_label_map(io::fixture_dir(), "A2", p, geo, true);
    return std::make_unique<SL3Modular>(make_modular_params(p, lm.labels, lm.ignored));
}

void sl3_table(const Options& o, std::ostream& out) { emit(out, o, modular(o)->table()); }

void sl3_certify(const Options& o, std::ostream& out) {
    auto m = modular(o);
    RigidityReport r = m->nonrigidity_certificate();
    auto [lhs, rhs] = m->dimension_check();
    if (lhs != rhs)
        throw std::logic_error("character count mismatch: " + std::to_string(lhs) + " != " + std::to_string(rhs));
    emit(out, o, r);
}

// fixtures verify

int fixtures_verify(const Options& o, std::ostream& out) {
    std::filesystem::path dir = o.dir.empty() ? io::fixture_dir() : std::filesystem::path(o.dir);
    auto results = io::verify_corpus(dir);
    int failed = 0;
    json arr = json::array();
    for (auto& r : results) {
        failed += !r.passed;
        arr.push_back({{"id", r.id}, {"passed", r.passed}, {"checks", r.checks_run}, {"messages", r.messages}});
    }
    if (o.format == "json") {
        out << json{{"fixtures", arr}, {"failed", failed}}.dump(2) << "\n";
    } else {
        for (auto& r : results) {
            out << (r.passed ? "pass  " : "FAIL  ") << r.id << "  (" << r.checks_run << " checks)\n";
            for (auto& m : r.messages) out << "      " << m << "\n";
        }
        out << results.size() - failed << "/" << results.size() << " fixtures pass\n";
    }
    return failed == 0 ? ok : domain_error;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Loewy structures of Weyl and tilting modules", "loewy"};
    app.fallthrough();
    app.require_subcommand(1);
    Options o;
    app.add_option("--type", o.type, "root system")->check(CLI::IsMember({"A2", "B2", "G2"}));
    app.add_option("--l", o.level, "quantum level");
    app.add_option("--p", o.p, "characteristic for sl3");
    app.add_option("--label", o.label, "alcove label, primed label or [floors]");
    app.add_option("--weight", o.weight, "highest weight a,b");
    app.add_option("--format", o.format)->check(CLI::IsMember({"text", "json", "latex"}));

    std::function<int()> action;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, auto fn) {
        CLI::App* s = parent->add_subcommand(name, help);
        s->callback([&action, &o, &out, fn] { action = [&o, &out, fn] { return fn(o, out); }; });
        return s;
    };
    auto wrap = [](auto f) {
        return [f](const Options& o, std::ostream& out) {
            f(o, out);
            return static_cast<int>(ok);
        };
    };

    auto* alcove = app.add_subcommand("alcove", "alcove geometry");
    alcove->require_subcommand(1);
    leaf(alcove, "enum", "dominant alcoves in linkage order", wrap(alcove_enum))
        ->add_option("--count", o.count, "number of alcoves");
    alcove->get_subcommand("enum")->add_option("--height", o.height, "all alcoves up to this height");
    leaf(alcove, "classify", "facet type of a weight", wrap(alcove_classify));
    leaf(alcove, "reflect", "right action of an affine generator", wrap(alcove_reflect))
        ->add_option("--wall", o.wall, "generator index (0 = affine)");

    auto* kl = app.add_subcommand("kl", "Kazhdan-Lusztig data");
    kl->require_subcommand(1);
    auto* poly = leaf(kl, "poly", "polynomial for the pair (other, label)", wrap(kl_poly));
    poly->add_option("--other", o.other, "lower alcove")->required();
    poly->add_option("--module", o.module)->check(CLI::IsMember({"antispherical", "spherical", "graded"}));
    leaf(kl, "mu", "mu-coefficient", wrap(kl_mu))->add_option("--other", o.other, "lower alcove")->required();
    leaf(kl, "mults", "Weyl composition and tilting Delta-multiplicities", wrap(kl_mults));

    auto* weyl = app.add_subcommand("weyl", "Weyl modules");
    weyl->require_subcommand(1);
    leaf(weyl, "layers", "parity layers", wrap(weyl_layers))->add_option("--wall", o.wall, "translate onto this wall");
    auto* soc = leaf(weyl, "socle", "socle series", wrap(weyl_socle));
    soc->add_option("--wall", o.wall, "singular image on this wall");
    soc->add_flag("--radical", o.radical, "radical series instead");

    auto* tilting = app.add_subcommand("tilting", "tilting modules");
    tilting->require_subcommand(1);
    leaf(tilting, "deltafilt", "Delta-factors grouped by height", wrap(tilting_deltafilt));
    leaf(tilting, "layers", "socle series by the shift-sum", wrap(tilting_layers));

    auto* rig = leaf(&app, "rigidity", "compare radical and socle series", wrap(rigidity));
    rig->add_option("--module", o.rigidity_module, "weyl or tilting")->check(CLI::IsMember({"weyl", "tilting"}));
    rig->add_option("--wall", o.wall, "singular image on this wall");
    auto* tr = leaf(&app, "translate", "translate parity layers onto a wall", wrap(translate));
    tr->add_option("--wall", o.wall, "wall index")->required();
    tr->add_flag("--radical", o.radical, "translate the radical series");

    auto* sl3 = app.add_subcommand("sl3", "SL3 in characteristic p");
    sl3->require_subcommand(1);
    leaf(sl3, "table", "socle layers of T(p(p-1)/2 rho)", wrap(sl3_table));
    leaf(sl3, "certify", "non-rigidity certificate", wrap(sl3_certify));

    auto* fx = app.add_subcommand("fixtures", "fixture corpus");
    fx->require_subcommand(1);
    leaf(fx, "verify", "recompute and validate every fixture", fixtures_verify)
        ->add_option("--dir", o.dir, "corpus directory");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return domain_error;
    }
    try {
        return action ? action() : static_cast<int>(domain_error);
    } catch (const Undetermined&) {
        return undetermined;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return domain_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return domain_error;
    }
}

}  // namespace loewy::cli
