#include "loewy/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "loewy/errors.hpp"

#ifndef LOEWY_FIXTURE_DIR
#define LOEWY_FIXTURE_DIR "fixtures"
#endif

namespace loewy::io {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed JSON: ") + e.what());
    }
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw DomainError(std::string("bad field '") + key + "': " + e.what());
    }
}

// Labels may be written as numbers or strings.
std::string label_text(const json& j) {
    if (j.is_number_integer()) return std::to_string(j.get<long>());
    if (j.is_string()) return j.get<std::string>();
    throw DomainError("label must be an integer or a string");
}

json label_json(const std::string& s) {
    bool numeric = !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
    return numeric ? json(std::stol(s)) : json(s);
}

json layer_json(const Layer& l) {
    json out = json::array();
    for (auto& lab : expand_layer(l)) {
        if (!out.empty() && label_text(out.back()["label"]) == lab) continue;
        out.push_back({{"label", label_json(lab)}, {"mult", l.at(lab)}});
    }
    return out;
}

Layer layer_from(const json& j) {
    if (!j.is_array()) throw DomainError("a layer must be an array");
    Layer l;
    for (auto& e : j) {
        int m = e.contains("mult") ? field<int>(e, "mult") : 1;
        if (m <= 0) throw DomainError("multiplicities must be positive");
        l[label_text(e.at("label"))] += m;
    }
    return l;
}

json layers_json(const std::vector<Layer>& ls) {
    json out = json::array();
    for (auto& l : ls) out.push_back(layer_json(l));
    return out;
}

std::vector<Layer> layers_from(const json& j) {
    if (!j.is_array()) throw DomainError("'layers' must be an array");
    std::vector<Layer> out;
    for (auto& l : j) out.push_back(layer_from(l));
    return out;
}

json diagram_obj(const LayerDiagram& d) {
    json j{{"kind", kind_name(d.kind)}, {"alcove", d.module}, {"layers", layers_json(d.layers)}};
    if (!d.blocks.empty()) {
        json bs = json::array();
        for (auto& [i, v] : d.blocks)
            for (auto& b : v) bs.push_back({{"layer", i}, {"name", b.name}, {"layers", layers_json(b.layers)}});
        j["blocks"] = bs;
    }
    return j;
}

LayerDiagram diagram_from(const json& j) {
    LayerDiagram d;
    d.kind = kind_from_name(field<std::string>(j, "kind"));
    d.module = j.contains("alcove") ? field<std::string>(j, "alcove") : "";
    d.layers = layers_from(j.at("layers"));
    if (j.contains("blocks"))
        for (auto& b : j.at("blocks")) {
            int i = field<int>(b, "layer");
            if (i < 0 || i >= d.loewy_length()) throw DomainError("block outside the diagram");
            d.blocks[i].push_back(Block{field<std::string>(b, "name"), layers_from(b.at("layers"))});
        }
    return d;
}

json filtration_obj(const FiltrationDiagram& f) {
    json groups = json::array();
    for (auto& g : f.groups) {
        json row = json::array();
        for (auto& b : g) row.push_back(label_json(b));
        groups.push_back(row);
    }
    return {{"tag", f.tag == 'D' ? "Delta" : "nabla"}, {"module", f.module}, {"groups", groups}};
}

FiltrationDiagram filtration_from(const json& j) {
    FiltrationDiagram f;
    std::string tag = field<std::string>(j, "tag");
    if (tag != "Delta" && tag != "nabla") throw DomainError("filtration tag must be Delta or nabla");
    f.tag = tag == "Delta" ? 'D' : 'N';
    f.module = j.contains("module") ? field<std::string>(j, "module") : "";
    for (auto& g : j.at("groups")) {
        std::vector<std::string> row;
        for (auto& b : g) row.push_back(label_text(b));
        if (row.empty()) throw DomainError("empty filtration group");
        f.groups.push_back(row);
    }
    return f;
}

json layer_map_json(const std::map<int, Layer>& m) {
    json out = json::object();
    for (auto& [k, l] : m) out[std::to_string(k)] = layer_json(l);
    return out;
}

std::map<int, Layer> layer_map_from(const json& j) {
    std::map<int, Layer> out;
    for (auto& [k, v] : j.items()) out[std::stoi(k)] = layer_from(v);
    return out;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw DomainError("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string to_json(const LayerDiagram& d) { return diagram_obj(d).dump(2); }
LayerDiagram diagram_from_json(const std::string& text) { return diagram_from(parse(text)); }

std::string to_json(const FiltrationDiagram& f) { return filtration_obj(f).dump(2); }
FiltrationDiagram filtration_from_json(const std::string& text) { return filtration_from(parse(text)); }

std::string to_json(const RigidityReport& r) {
    json j{{"rigid", r.is_rigid}, {"loewy_length", r.loewy_length}};
    if (r.witness)
        j["witness"] = {{"factor", r.witness->factor},
                        {"radical_layer", r.witness->radical_layer},
                        {"socle_layer", r.witness->socle_layer},
                        {"detail", r.witness->detail}};
    return j.dump(2);
}

std::string to_json(const ValidationReport& r) {
    json v = json::array();
    for (auto& x : r.violations) v.push_back({{"check", x.check}, {"location", x.location}, {"message", x.message}});
    return json{{"ok", r.ok()}, {"checks_run", r.checks_run}, {"violations", v}}.dump(2);
}

std::string to_json(const LabelMapFile& m) {
    json labels = json::array();
    std::vector<std::string> keys;
    for (auto& [k, a] : m.labels.entries()) keys.push_back(k);
    auto ascending = [](const std::string& a, const std::string& b) { return label_before(b, a); };
    std::sort(keys.begin(), keys.end(), ascending);
    for (auto& k : keys) {
        json floors = json::object();
        const Alcove& a = m.labels.entries().at(k);
        for (size_t i = 0; i < a.floors.size(); ++i) floors[std::to_string(i)] = a.floors[i];
        labels.push_back({{"label", label_json(k)}, {"floors", floors}});
    }
    std::vector<std::string> skipped(m.ignored.begin(), m.ignored.end());
    std::sort(skipped.begin(), skipped.end(), ascending);
    json ignored = json::array();
    for (auto& s : skipped) ignored.push_back(label_json(s));
    return json{{"type", m.root_type}, {"level", m.level}, {"labels", labels}, {"ignored", ignored}}.dump(2);
}

LabelMapFile label_map_from_json(const std::string& text, const AlcoveGeometry& geo) {
    json j = parse(text);
    LabelMapFile m;
    m.root_type = field<std::string>(j, "type");
    m.level = field<int>(j, "level");
    if (m.root_type != geo.root_datum().type_name())
        throw DomainError("label map is for " + m.root_type + ", not " + geo.root_datum().type_name());
    int n = geo.root_datum().num_positive_roots();
    for (auto& e : j.at("labels")) {
        std::vector<int> floors(n, 0);
        const json& f = e.at("floors");
        if (static_cast<int>(f.size()) != n) throw DomainError("floor vector has the wrong length");
        for (auto& [k, v] : f.items()) {
            int i = std::stoi(k);
            if (i < 0 || i >= n) throw DomainError("root index " + k + " out of range");
            floors[i] = v.get<int>();
        }
        m.labels.insert(label_text(e.at("label")), geo.from_floors(floors));
    }
    if (j.contains("ignored"))
        for (auto& s : j.at("ignored")) m.ignored.insert(label_text(s));
    return m;
}

std::string kl_dump(const std::string& b, const std::string& a, const LaurentPoly& poly) {
    json terms = json::object();
    for (auto& [e, c] : poly.terms()) terms[std::to_string(e)] = c;
    return json{{"pair", {label_json(b), label_json(a)}}, {"poly", terms}}.dump();
}

std::string to_json(const PartialTilting& p, const LoewySolver& solver) {
    json j{{"alcove", label_json(solver.name(p.alcove))},
           {"wall", p.wall},
           {"loewy_length", p.loewy_length},
           {"delta_filtration", filtration_obj(p.delta_filtration)},
           {"nabla_filtration", filtration_obj(p.nabla_filtration)},
           {"socle_layers", layer_map_json(p.socle_layers)},
           {"socle_layers_at_least", layer_map_json(p.socle_layers_at_least)}};
    if (!p.witness_factor.empty()) {
        json counts = json::object();
        for (auto& [k, c] : p.witness_socle_power_counts) counts[std::to_string(k)] = c;
        j["witness"] = {{"factor", label_json(p.witness_factor)},
                        {"radical_power", p.witness_radical_power},
                        {"socle_power", p.witness_socle_power},
                        {"socle_power_counts", counts}};
    }
    return j.dump(2);
}

PartialTilting partial_from_json(const std::string& text, const LoewySolver& solver) {
    json j = parse(text);
    PartialTilting p;
    p.alcove = solver.resolve(label_text(j.at("alcove")));
    p.wall = j.value("wall", -1);
    p.loewy_length = field<int>(j, "loewy_length");
    p.delta_filtration = filtration_from(j.at("delta_filtration"));
    p.nabla_filtration = filtration_from(j.at("nabla_filtration"));
    if (j.contains("socle_layers")) p.socle_layers = layer_map_from(j.at("socle_layers"));
    if (j.contains("socle_layers_at_least")) p.socle_layers_at_least = layer_map_from(j.at("socle_layers_at_least"));
    if (j.contains("witness")) {
        const json& w = j.at("witness");
        p.witness_factor = label_text(w.at("factor"));
        p.witness_radical_power = field<int>(w, "radical_power");
        p.witness_socle_power = field<int>(w, "socle_power");
        if (w.contains("socle_power_counts"))
            for (auto& [k, v] : w.at("socle_power_counts").items()) p.witness_socle_power_counts[std::stoi(k)] = v.get<int>();
    }
    return p;
}

fs::path fixture_dir() {
    if (const char* env = std::getenv("LOEWY_FIXTURES"); env && *env) return env;
    if (fs::is_directory(LOEWY_FIXTURE_DIR)) return LOEWY_FIXTURE_DIR;
    return LOEWY_INSTALLED_FIXTURE_DIR;
}

std::vector<Fixture> load_corpus(const fs::path& dir) {
    fs::path corpus = dir / "corpus";
    if (!fs::is_directory(corpus)) throw DomainError("no fixture corpus at " + corpus.string());
    std::vector<fs::path> files;
    for (auto& e : fs::directory_iterator(corpus))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());

    std::vector<Fixture> out;
    for (auto& path : files) {
        json j = parse(read_file(path));
        for (auto& e : j.at("fixtures")) {
            Fixture f;
            f.file = path.filename().string();
            f.id = field<std::string>(e, "id");
            f.source = field<std::string>(e, "source");
            f.root_type = field<std::string>(e, "type");
            f.level = field<int>(e, "level");
            std::string module = field<std::string>(e, "module");
            if (module == "weyl") f.module = ModuleKind::weyl;
            else if (module == "tilting") f.module = ModuleKind::tilting;
            else throw DomainError(f.id + ": unknown module kind '" + module + "'");
            f.modular = e.value("modular", false);
            f.label = e.contains("label") ? label_text(e.at("label")) : "";
            f.wall = e.value("wall", -1);
            f.computable = e.value("computable", false);
            std::string pt = field<std::string>(e, "payload_type");
            if (pt == "diagram") f.payload_type = PayloadType::diagram;
            else if (pt == "filtration") f.payload_type = PayloadType::filtration;
            else if (pt == "partial") f.payload_type = PayloadType::partial;
            else throw DomainError(f.id + ": unknown payload type '" + pt + "'");
            f.payload = e.at("payload").dump();
            out.push_back(std::move(f));
        }
    }
    return out;
}

LabelMapFile load_label_map(const fs::path& dir, const std::string& root_type, int level, const AlcoveGeometry& geo,
                            bool modular) {
    fs::path labels = dir / "labels";
    fs::path exact = labels / (root_type + (modular ? "_p" : "_l") + std::to_string(level) + ".json");
    if (fs::exists(exact)) return label_map_from_json(read_file(exact), geo);
    if (modular) throw DomainError("no label map for " + root_type + " at p = " + std::to_string(level));
    // Quantum label floors do not depend on the level; reuse any map of the type.
    if (fs::is_directory(labels)) {
        std::vector<fs::path> cands;
        for (auto& e : fs::directory_iterator(labels))
            if (e.path().filename().string().rfind(root_type + "_l", 0) == 0) cands.push_back(e.path());
        std::sort(cands.begin(), cands.end());
        if (!cands.empty()) {
            LabelMapFile m = label_map_from_json(read_file(cands.front()), geo);
            m.level = level;
            return m;
        }
    }
    LabelMapFile m;
    m.root_type = root_type;
    m.level = level;
    return m;
}

namespace {

void absorb(FixtureResult& r, const ValidationReport& rep) {
    r.checks_run += rep.checks_run;
    for (auto& v : rep.violations) r.messages.push_back(v.check + " at " + v.location + ": " + v.message);
}

void compare(FixtureResult& r, const LayerDiagram& want, const std::optional<LayerDiagram>& got, const std::string& why) {
    ++r.checks_run;
    if (!got) {
        r.messages.push_back("recompute: UNDETERMINED (" + why + ")");
        return;
    }
    if (got->layers != want.layers || got->blocks != want.blocks)
        r.messages.push_back("recompute: computed diagram differs from the fixture\n" + render_text(*got));
}

FixtureResult verify_modular(const Fixture& f, const fs::path& dir) {
    FixtureResult r;
    r.id = f.id;
    RootDatum rd = RootDatum::build(f.root_type);
    AlcoveGeometry geo(rd, f.level);
    LabelMapFile lm = load_label_map(dir, f.root_type, f.level, geo, true);
    SL3Modular m(make_modular_params(f.level, lm.labels, lm.ignored));
    LayerDiagram want = diagram_from_json(f.payload);
    LayerDiagram got = m.table();
    compare(r, want, got, "");
    ++r.checks_run;
    if (!want.palindromic()) r.messages.push_back("table is not palindromic");
    ++r.checks_run;
    for (auto& [lab, k] : want.total())
        if (lm.ignored.count(lab) || !lm.labels.alcove(lab))
            r.messages.push_back("label " + lab + " has no alcove at p = " + std::to_string(f.level));
    ++r.checks_run;
    auto [lhs, rhs] = m.dimension_check();
    if (lhs != rhs)
        r.messages.push_back("dimension check " + std::to_string(lhs) + " != " + std::to_string(rhs));
    return r;
}

}  // namespace

FixtureResult verify_fixture(const Fixture& f, const fs::path& dir) {
    try {
        if (f.modular) {
            FixtureResult r = verify_modular(f, dir);
            r.passed = r.messages.empty();
            return r;
        }
        FixtureResult r;
        r.id = f.id;
        RootDatum rd = RootDatum::build(f.root_type);
        AlcoveGeometry geo(rd, f.level);
        KLEngine kl(geo);
        LoewySolver solver(kl, load_label_map(dir, f.root_type, f.level, geo).labels);

        if (f.payload_type == PayloadType::partial) {
            absorb(r, solver.validate_partial(partial_from_json(f.payload, solver)));
            r.passed = r.messages.empty();
            return r;
        }
        Alcove a = solver.resolve(f.label);
        ValidationContext ctx{a, f.module, f.wall};
        if (f.payload_type == PayloadType::filtration) {
            absorb(r, solver.validate_filtration(filtration_from_json(f.payload), ctx));
            r.passed = r.messages.empty();
            return r;
        }

        LayerDiagram d = diagram_from_json(f.payload);
        absorb(r, solver.validate_diagram(d, ctx));
        if (f.computable) {
            if (f.module == ModuleKind::tilting) {
                compare(r, d, solver.projective_tilting_layers(a), "");
            } else if (f.wall >= 0) {
                auto [rad, soc] = solver.singular_weyl_series(a, f.wall);
                const SeriesResult& s = d.kind == DiagramKind::radical ? rad : soc;
                compare(r, d, s.diagram, s.reason);
            } else if (d.kind == DiagramKind::parity) {
                compare(r, d, solver.weyl_parity_layers(a), "");
            } else {
                SeriesResult s = d.kind == DiagramKind::radical ? solver.weyl_radical_series(a)
                                                                 : solver.weyl_socle_series(a);
                compare(r, d, s.diagram, s.reason);
            }
        }
        r.passed = r.messages.empty();
        return r;
    } catch (const std::exception& e) {
        return FixtureResult{f.id, false, 0, {std::string("error: ") + e.what()}};
    }
}

std::vector<FixtureResult> verify_corpus(const fs::path& dir) {
    std::vector<FixtureResult> out;
    for (auto& f : load_corpus(dir)) out.push_back(verify_fixture(f, dir));
    return out;
}

}  // namespace loewy::io
