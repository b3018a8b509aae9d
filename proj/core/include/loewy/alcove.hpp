#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loewy/rootdata.hpp"

namespace loewy {

// Affine map x -> m x + t on rho-shifted weight coordinates.
struct AffineElt {
    IntMatrix m;
    std::vector<int> t;

    static AffineElt identity(int rank);
    Weight apply(const Weight& x) const;
    AffineElt compose(const AffineElt& rhs) const;  // (*this) o rhs
    friend bool operator==(const AffineElt&, const AffineElt&) = default;
};

// Alcove keyed by its floor vector over the positive roots. The affine element
// carrying the bottom alcove onto it is kept alongside.
struct Alcove {
    std::vector<int> floors;
    AffineElt w;

    friend bool operator==(const Alcove& a, const Alcove& b) { return a.floors == b.floors; }
    friend auto operator<=>(const Alcove& a, const Alcove& b) { return a.floors <=> b.floors; }
    std::string key() const;
};

enum class FacetKind { regular, wall, special_point, other_singular };

struct FacetClass {
    FacetKind kind = FacetKind::regular;
    // Wall types (0 = s0, i = s_i) of the bottom alcove's walls through the
    // point after moving it into the closure of the bottom alcove.
    std::vector<int> wall_types;
    int hyperplanes = 0;
};

std::string facet_kind_name(FacetKind k);

class AlcoveGeometry {
public:
    AlcoveGeometry(RootDatum rd, int l);

    // Level validity: l odd, coprime to the non-zero Cartan entries, l >= h.
    static void validate_level(const RootDatum& rd, int l);

    const RootDatum& root_datum() const { return rd_; }
    int level() const { return l_; }
    int num_generators() const { return rd_.rank() + 1; }
    std::string generator_name(int s) const { return "s" + std::to_string(s); }
    const AffineElt& generator(int s) const { return gens_.at(s); }

    std::vector<int> floors_of_shifted(const Weight& x) const;
    bool is_regular(const Weight& lambda) const;
    FacetClass classify_weight(const Weight& lambda) const;

    Alcove bottom() const;
    Alcove a_plus() const;
    Alcove a_minus() const;
    Alcove alcove_of(const Weight& lambda) const;
    Alcove from_floors(const std::vector<int>& floors) const;
    // The alcove whose upper closure contains lambda.
    Alcove upper_alcove_of(const Weight& lambda) const;

    Weight interior_point(const Alcove& a) const;  // an integral weight inside a
    Alcove reflect(const Alcove& a, int s) const;
    int distance(const Alcove& a, const Alcove& b) const;
    int height(const Alcove& a) const { return distance(bottom(), a); }
    bool is_dominant(const Alcove& a) const;
    bool in_A_plusplus(const Alcove& a) const;
    // As > A, i.e. reflecting in the s-wall moves away from the bottom alcove.
    bool goes_up(const Alcove& a, int s) const;
    bool upper_closure_contains(const Alcove& a, const Weight& lambda) const;
    bool closure_contains(const Alcove& a, const Weight& lambda) const;
    Alcove translate(const Alcove& a, const Weight& by) const;

    std::pair<Weight, Weight> decompose_weight(const Weight& lambda) const;
    Weight tilde(const Weight& lambda) const;
    Weight orbit_representative(const Weight& nu, const Alcove& a) const;
    // The point of the dot-orbit of a regular weight inside the bottom alcove.
    Weight bottom_representative(const Weight& lambda) const;
    bool in_closure_of_bottom(const Weight& nu) const;

    std::vector<Alcove> enumerate_dominant(int count) const;
    std::vector<Alcove> enumerate_dominant_up_to(int max_height) const;

    bool is_special_point(const Weight& nu) const;
    // Reflections through a special point in the walls of its upper alcove.
    std::vector<AffineElt> special_point_stabilizer(const Weight& nu) const;
    // The |W| alcoves around a special point, with their length in the stabilizer.
    std::vector<std::pair<Alcove, int>> special_point_star(const Weight& nu) const;

private:
    RootDatum rd_;
    int l_;
    std::vector<AffineElt> gens_;

    Alcove make(const AffineElt& w) const;
};

// Numbered alcoves <-> alcoves.
class LabelMap {
public:
    void insert(const std::string& label, const Alcove& a);
    std::optional<Alcove> alcove(const std::string& label) const;
    std::optional<std::string> label(const Alcove& a) const;
    std::string name(const Alcove& a) const;  // label or floor key
    const std::map<std::string, Alcove>& entries() const { return by_label_; }
    size_t size() const { return by_label_.size(); }

private:
    std::map<std::string, Alcove> by_label_;
    std::map<std::vector<int>, std::string> by_floors_;
};

}  // namespace loewy
