#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>

#include "loewy/io.hpp"

namespace loewy::testing {

inline std::filesystem::path fixtures() { return LOEWY_TEST_FIXTURES; }

inline const std::vector<io::Fixture>& corpus() {
    static const std::vector<io::Fixture> c = io::load_corpus(fixtures());
    return c;
}

inline const io::Fixture& fixture(const std::string& id) {
    for (auto& f : corpus())
        if (f.id == id) return f;
    throw std::out_of_range("no fixture " + id);
}

inline LayerDiagram diagram(const std::string& id) { return io::diagram_from_json(fixture(id).payload); }
inline FiltrationDiagram filtration(const std::string& id) { return io::filtration_from_json(fixture(id).payload); }

// Quantum setting with the numbered alcoves loaded from the corpus.
struct Quantum {
    std::unique_ptr<KLEngine> kl;
    std::unique_ptr<LoewySolver> solver;

    explicit Quantum(const std::string& type = "B2", int l = 5) {
        AlcoveGeometry geo(RootDatum::build(type), l);
        LabelMap labels = io::load_label_map(fixtures(), type, l, geo).labels;
        kl = std::make_unique<KLEngine>(geo);
        solver = std::make_unique<LoewySolver>(*kl, std::move(labels));
    }
    const AlcoveGeometry& geo() const { return kl->geometry(); }
    Alcove operator()(const std::string& label) const { return solver->resolve(label); }
    Alcove operator()(int label) const { return solver->resolve(std::to_string(label)); }
    std::string name(const Alcove& a) const { return solver->name(a); }
};

inline std::unique_ptr<SL3Modular> modular(int p) {
    AlcoveGeometry geo(RootDatum::build("A2"), p);
    io::LabelMapFile lm = io::load_label_map(fixtures(), "A2", p, geo, true);
    return std::make_unique<SL3Modular>(make_modular_params(p, lm.labels, lm.ignored));
}

inline Layer as_layer(const std::map<Alcove, std::int64_t>& m, const LoewySolver& s) {
    Layer out;
    for (auto& [a, k] : m)
        if (k) out[s.name(a)] += static_cast<int>(k);
    return out;
}

}  // namespace loewy::testing
