#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace loewy {

// Multiset of simple factors, keyed by alcove label.
using Layer = std::map<std::string, int>;

enum class DiagramKind { radical, socle, parity, filtration };

std::string kind_name(DiagramKind k);
DiagramKind kind_from_name(const std::string& s);

// A non-semisimple piece sitting inside one layer, drawn as its own column.
struct Block {
    std::string name;
    std::vector<Layer> layers;  // head-first
    friend bool operator==(const Block&, const Block&) = default;
};

// Head-first layers: index 0 is the head (or top of the filtration).
struct LayerDiagram {
    DiagramKind kind = DiagramKind::parity;
    std::string module;
    std::vector<Layer> layers;
    std::map<int, std::vector<Block>> blocks;

    int loewy_length() const { return static_cast<int>(layers.size()); }
    // All factors, including those inside blocks.
    Layer total() const;
    LayerDiagram reversed() const;
    bool palindromic() const;
    friend bool operator==(const LayerDiagram&, const LayerDiagram&) = default;
};

// Boxes of a Delta- or nabla-filtration, top first. Boxes in one group are
// unordered (drawn side by side with a dotted separator).
struct FiltrationDiagram {
    char tag = 'D';  // 'D' for Delta, 'N' for nabla
    std::string module;
    std::vector<std::vector<std::string>> groups;

    Layer total() const;
    friend bool operator==(const FiltrationDiagram&, const FiltrationDiagram&) = default;
};

struct RigidityWitness {
    std::string factor;
    int radical_layer = -1;  // head-first index in the radical series
    int socle_layer = -1;    // head-first index in the socle series
    std::string detail;
};

struct RigidityReport {
    bool is_rigid = true;
    int loewy_length = 0;
    std::optional<RigidityWitness> witness;
};

// Both diagrams head-first. Throws DomainError if the factor multisets differ.
RigidityReport rigidity_check(const LayerDiagram& radical, const LayerDiagram& socle);

// Label order used by renderers: numeric part descending, primes after plain.
bool label_before(const std::string& a, const std::string& b);
std::vector<std::string> expand_layer(const Layer& layer);

std::string render_text(const LayerDiagram& d);
std::string render_text(const FiltrationDiagram& f);
std::string render_latex(const LayerDiagram& d);
std::string render_text(const RigidityReport& r);

}  // namespace loewy
