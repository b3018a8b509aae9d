#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "loewy/diagram.hpp"
#include "loewy/kl.hpp"

namespace loewy {

// Layers over alcoves, head-first, with multiplicities.
using AlcoveLayers = std::vector<std::map<Alcove, int>>;
// Grothendieck group element in the basis of Weyl characters.
using DeltaCharacter = std::map<Alcove, std::int64_t>;

// Outcome of a rule-based series computation. No diagram means UNDETERMINED.
struct SeriesResult {
    std::optional<LayerDiagram> diagram;
    std::vector<std::string> trace;
    std::string reason;
    bool determined() const { return diagram.has_value(); }
};

struct Violation {
    std::string check;
    std::string location;
    std::string message;
};

struct ValidationReport {
    int checks_run = 0;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

enum class ModuleKind { weyl, tilting };

struct ValidationContext {
    Alcove alcove;           // regular alcove indexing the module
    ModuleKind module = ModuleKind::weyl;
    int wall = -1;           // generator whose wall carries the singular weight, or -1
};

// Partial socle data for tilting modules whose full series is out of reach.
struct PartialTilting {
    Alcove alcove;
    int wall = -1;
    int loewy_length = 0;
    FiltrationDiagram delta_filtration;
    FiltrationDiagram nabla_filtration;
    // Head-first index counted from the bottom: 0 = socle, 1 = soc_2, ...
    std::map<int, Layer> socle_layers;
    std::map<int, Layer> socle_layers_at_least;
    // Witness that rad^k differs from the matching socle term.
    std::string witness_factor;
    int witness_radical_power = 0;   // k in rad^k
    int witness_socle_power = 0;     // j in soc^j compared against
    std::map<int, int> witness_socle_power_counts;  // j -> lower bound on [soc^j : factor]
};

class LoewySolver {
public:
    LoewySolver(const KLEngine& kl, LabelMap labels);

    const KLEngine& kl() const { return kl_; }
    const AlcoveGeometry& geometry() const { return kl_.geometry(); }
    const LabelMap& labels() const { return labels_; }

    std::string name(const Alcove& a) const { return labels_.name(a); }
    // Label, primed label or floor key back to its regular alcove.
    Alcove resolve(const std::string& label) const;
    LayerDiagram to_diagram(const AlcoveLayers& layers, DiagramKind kind, const std::string& module,
                            bool primed = false) const;

    AlcoveLayers parity(const Alcove& a) const;
    LayerDiagram weyl_parity_layers(const Alcove& a) const;
    std::map<Alcove, std::int64_t> weyl_factors(const Alcove& a) const;

    std::set<Alcove> socle_candidates(const Alcove& a) const;
    bool simple_head_table(const Alcove& a) const;

    SeriesResult weyl_socle_series(const Alcove& a) const;
    SeriesResult weyl_radical_series(const Alcove& a) const;

    // [soc_j nabla(A) : L(A_nu^-)] from the stabilizer of the special point nu.
    int special_point_socle_mult(const Alcove& a, const Weight& nu, int j) const;

    // A point in the interior of the s-wall of the bottom alcove.
    Weight wall_point(int s) const;
    // nu_B lies in the upper closure of B.
    bool survives_translation(const Alcove& b, int s) const;
    AlcoveLayers translate_layers(const AlcoveLayers& d, int s) const;
    LayerDiagram translate_layers(const LayerDiagram& d, int s) const;
    // Radical and socle series of Delta(A') for A' the s-wall image of A.
    std::pair<SeriesResult, SeriesResult> singular_weyl_series(const Alcove& a, int s) const;
    // Ext^1 between simples on the s-wall, when it can be read off exactly.
    std::optional<int> singular_ext(const Alcove& x, const Alcove& y, int s) const;

    bool is_projective_tilting(const Alcove& a) const;
    std::map<Alcove, std::int64_t> tilting_factors(const Alcove& a) const;
    // Throws DomainError when the shift-sum cannot be certified for A.
    LayerDiagram projective_tilting_layers(const Alcove& a) const;
    AlcoveLayers tilting_shift_sum(const Alcove& a) const;

    ValidationReport validate_diagram(const LayerDiagram& d, const ValidationContext& ctx) const;
    ValidationReport validate_filtration(const FiltrationDiagram& f, const ValidationContext& ctx) const;
    ValidationReport validate_partial(const PartialTilting& p) const;

    DeltaCharacter wall_cross_character(const DeltaCharacter& ch, int s) const;
    DeltaCharacter simple_character(const Alcove& a) const;

private:
    const KLEngine& kl_;
    LabelMap labels_;
    mutable std::mutex memo_mutex_;
    mutable std::map<Alcove, SeriesResult> socle_memo_, radical_memo_;

    SeriesResult compute_socle(const Alcove& a) const;
    SeriesResult compute_radical(const Alcove& a) const;
    std::optional<std::set<Alcove>> certified_out(const Alcove& a, int j) const;
    std::map<Alcove, std::int64_t> singular_tilting_factors(const Alcove& a, int s) const;
};

}  // namespace loewy
