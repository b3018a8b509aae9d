#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "loewy/sl3.hpp"
#include "loewy/solver.hpp"

namespace loewy::io {

// JSON text for every serializable value. Parsers throw DomainError on
// malformed input.
std::string to_json(const LayerDiagram& d);
LayerDiagram diagram_from_json(const std::string& text);

std::string to_json(const FiltrationDiagram& f);
FiltrationDiagram filtration_from_json(const std::string& text);

std::string to_json(const RigidityReport& r);
std::string to_json(const ValidationReport& r);

// {type, level, labels: [{label, floors: {root_index: n}}], ignored: [...]}
struct LabelMapFile {
    std::string root_type;
    int level = 0;
    LabelMap labels;
    std::set<std::string> ignored;
};
std::string to_json(const LabelMapFile& m);
LabelMapFile label_map_from_json(const std::string& text, const AlcoveGeometry& geo);

// {pair: [B, A], poly: {exponent: coeff}}
std::string kl_dump(const std::string& b, const std::string& a, const LaurentPoly& poly);

// Partial tilting data is stored by label and resolved against a solver.
std::string to_json(const PartialTilting& p, const LoewySolver& solver);
PartialTilting partial_from_json(const std::string& text, const LoewySolver& solver);

enum class PayloadType { diagram, filtration, partial };

struct Fixture {
    std::string id;
    std::string source;
    std::string root_type;
    int level = 0;
    ModuleKind module = ModuleKind::weyl;
    bool modular = false;   // SL3 in characteristic p rather than the quantum group
    std::string label;      // regular label of the module
    int wall = -1;
    bool computable = false;
    PayloadType payload_type = PayloadType::diagram;
    std::string payload;    // JSON text of the payload
    std::string file;
};

// LOEWY_FIXTURES overrides the source tree, which overrides the installed copy.
std::filesystem::path fixture_dir();
std::vector<Fixture> load_corpus(const std::filesystem::path& dir);
// Quantum maps live in <type>_l<level>.json and may be reused across levels;
// modular maps live in <type>_p<p>.json.
LabelMapFile load_label_map(const std::filesystem::path& dir, const std::string& root_type, int level,
                            const AlcoveGeometry& geo, bool modular = false);

struct FixtureResult {
    std::string id;
    bool passed = false;
    int checks_run = 0;
    std::vector<std::string> messages;
};

// Recompute what can be recomputed and validate everything.
FixtureResult verify_fixture(const Fixture& f, const std::filesystem::path& dir);
std::vector<FixtureResult> verify_corpus(const std::filesystem::path& dir);

}  // namespace loewy::io
