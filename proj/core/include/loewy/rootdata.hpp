#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace loewy {

using IntMatrix = std::vector<std::vector<int>>;

// Integral weight in fundamental-weight coordinates.
struct Weight {
    std::vector<int> c;

    Weight() = default;
    explicit Weight(std::vector<int> coords) : c(std::move(coords)) {}
    static Weight zero(int rank) { return Weight(std::vector<int>(rank, 0)); }

    int rank() const { return static_cast<int>(c.size()); }
    int operator[](int i) const { return c[i]; }
    int& operator[](int i) { return c[i]; }

    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(int k, Weight a);
    friend Weight operator-(Weight a);
    friend auto operator<=>(const Weight&, const Weight&) = default;
    friend bool operator==(const Weight&, const Weight&) = default;

    bool is_dominant() const;
    std::string str() const;
};

struct Root {
    Weight weight;                  // fundamental-weight coordinates
    std::vector<int> coeffs;        // on simple roots
    std::vector<int> coroot_coeffs; // coroot on simple coroots
    int height = 0;
};

// Reduced word over simple reflections, applied right to left.
struct WeylElement {
    std::vector<int> word;
    int length() const { return static_cast<int>(word.size()); }
    int sign() const { return word.size() % 2 == 0 ? 1 : -1; }
    friend bool operator==(const WeylElement&, const WeylElement&) = default;
};

class Character {
public:
    using Mult = std::int64_t;
    void add(const Weight& mu, Mult m);
    Mult mult(const Weight& mu) const;
    Mult dim() const;
    const std::map<Weight, Mult>& support() const { return mult_; }
    Character& operator+=(const Character& o);
    Character& operator-=(const Character& o);
    Character scaled(Mult k) const;
    Character shifted(const Weight& by) const;
    friend Character operator*(const Character& a, const Character& b);
    friend bool operator==(const Character&, const Character&) = default;

private:
    std::map<Weight, Mult> mult_;
};

class RootDatum {
public:
    static RootDatum build(const std::string& type_name);
    static RootDatum from_cartan(const IntMatrix& cartan, const std::string& name = "custom");

    const std::string& type_name() const { return name_; }
    int rank() const { return rank_; }
    const IntMatrix& cartan() const { return cartan_; }
    const std::vector<int>& symmetrizer() const { return d_; }
    const std::vector<Weight>& simple_roots() const { return simple_; }
    const std::vector<Root>& positive_roots() const { return pos_; }
    int num_positive_roots() const { return static_cast<int>(pos_.size()); }
    int coxeter_number() const { return h_; }
    const Weight& rho() const { return rho_; }
    const WeylElement& w0() const { return group_[w0_index_]; }

    // Index of the positive root whose coroot is highest.
    int highest_coroot_index() const { return highest_coroot_; }

    int pairing(const Weight& lambda, int root_index) const;
    int pairing_simple(const Weight& lambda, int i) const { return lambda[i]; }

    Weight reflect_simple(int i, const Weight& lambda) const;
    Weight reflect(int root_index, const Weight& lambda) const;

    const std::vector<WeylElement>& weyl_group() const { return group_; }
    Weight apply(const WeylElement& w, const Weight& lambda) const;
    Weight dot(const WeylElement& w, const Weight& lambda) const;
    WeylElement multiply(const WeylElement& a, const WeylElement& b) const;
    WeylElement inverse(const WeylElement& w) const;
    WeylElement normal_form(const WeylElement& w) const;

    // Dominant W-conjugate of x together with the sign of the conjugating element.
    // Returns nullopt when x lies on a reflecting hyperplane.
    std::optional<std::pair<Weight, int>> regular_dominant_conjugate(const Weight& x) const;
    Weight dominant_conjugate(const Weight& x) const;

    // W-invariant form, scaled to be integral.
    std::int64_t form(const Weight& a, const Weight& b) const;

    // mu <= lambda in the dominance order: lambda - mu is a sum of positive roots.
    bool dominance_leq(const Weight& mu, const Weight& lambda) const;
    // Coordinates of a weight on simple roots, scaled by det(cartan).
    std::vector<std::int64_t> root_coords_scaled(const Weight& lambda) const;
    std::int64_t cartan_det() const { return det_; }

    std::int64_t weyl_dim(const Weight& lambda) const;
    Character weyl_character(const Weight& lambda) const;
    Character orbit_sum(const Weight& dominant) const;
    std::vector<std::pair<Weight, std::int64_t>> tensor_decompose(const Weight& lambda,
                                                                  const Weight& mu) const;
    // Expand a W-invariant character into Weyl characters (highest-weight peeling).
    std::vector<std::pair<Weight, std::int64_t>> weyl_decompose(const Character& ch) const;

private:
    std::string name_;
    int rank_ = 0;
    IntMatrix cartan_;
    std::vector<int> d_;
    std::vector<Weight> simple_;
    std::vector<Root> pos_;
    Weight rho_;
    int h_ = 0;
    int highest_coroot_ = 0;
    std::vector<WeylElement> group_;
    std::map<Weight, int> group_index_;  // image of rho -> element
    int w0_index_ = 0;
    IntMatrix form_;
    std::int64_t det_ = 1;
    IntMatrix adj_;  // adjugate of cartan

    void init();
};

}  // namespace loewy
