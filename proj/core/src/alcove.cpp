#include "loewy/alcove.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

#include "loewy/errors.hpp"

namespace loewy {

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int mod(int a, int b) {
    int r = a % b;
    return r < 0 ? r + b : r;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    const size_t n = a.size();
    IntMatrix c(n, std::vector<int>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            if (a[i][k] != 0)
                for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

IntMatrix mat_identity(size_t n) {
    IntMatrix m(n, std::vector<int>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

AffineElt inverse(const AffineElt& g) {
    // The linear part has finite order.
    const size_t n = g.m.size();
    IntMatrix id = mat_identity(n), prev = id, cur = g.m;
    while (cur != id) {
        prev = cur;
        cur = mat_mul(cur, g.m);
    }
    AffineElt r;
    r.m = (g.m == id) ? id : prev;
    r.t.assign(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r.t[i] -= r.m[i][j] * g.t[j];
    return r;
}

}  // namespace

AffineElt AffineElt::identity(int rank) {
    return AffineElt{mat_identity(rank), std::vector<int>(rank, 0)};
}

Weight AffineElt::apply(const Weight& x) const {
    Weight y = Weight::zero(x.rank());
    for (int i = 0; i < x.rank(); ++i) {
        int s = t[i];
        for (int j = 0; j < x.rank(); ++j) s += m[i][j] * x[j];
        y[i] = s;
    }
    return y;
}

AffineElt AffineElt::compose(const AffineElt& rhs) const {
    AffineElt r;
    r.m = mat_mul(m, rhs.m);
    r.t = t;
    for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = 0; j < t.size(); ++j) r.t[i] += m[i][j] * rhs.t[j];
    return r;
}

std::string Alcove::key() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < floors.size(); ++i) os << (i ? "," : "") << floors[i];
    os << ']';
    return os.str();
}

std::string facet_kind_name(FacetKind k) {
    switch (k) {
        case FacetKind::regular: return "regular";
        case FacetKind::wall: return "wall";
        case FacetKind::special_point: return "special_point";
        case FacetKind::other_singular: return "other_singular";
    }
    return "?";
}

void AlcoveGeometry::validate_level(const RootDatum& rd, int l) {
    if (l <= 0) throw DomainError("level must be positive");
    if (l % 2 == 0) throw DomainError("level must be odd");
    for (auto& row : rd.cartan())
        for (int a : row)
            if (a != 0 && std::gcd(l, std::abs(a)) != 1)
                throw DomainError("level must be prime to the Cartan matrix entries");
    if (l < rd.coxeter_number()) throw DomainError("level must be at least the Coxeter number");
}

AlcoveGeometry::AlcoveGeometry(RootDatum rd, int l) : rd_(std::move(rd)), l_(l) {
    validate_level(rd_, l_);
    const int n = rd_.rank();
    gens_.clear();
    const Root& beta = rd_.positive_roots()[rd_.highest_coroot_index()];
    {
        AffineElt s0 = AffineElt::identity(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) s0.m[i][j] -= beta.weight[i] * beta.coroot_coeffs[j];
            s0.t[i] = l_ * beta.weight[i];
        }
        gens_.push_back(s0);
    }
    for (int k = 0; k < n; ++k) {
        AffineElt s = AffineElt::identity(n);
        for (int i = 0; i < n; ++i) s.m[i][k] -= rd_.simple_roots()[k][i];
        gens_.push_back(s);
    }
}

std::vector<int> AlcoveGeometry::floors_of_shifted(const Weight& x) const {
    std::vector<int> f(rd_.num_positive_roots());
    for (int k = 0; k < rd_.num_positive_roots(); ++k) f[k] = floor_div(rd_.pairing(x, k), l_);
    return f;
}

bool AlcoveGeometry::is_regular(const Weight& lambda) const {
    Weight x = lambda + rd_.rho();
    for (int k = 0; k < rd_.num_positive_roots(); ++k)
        if (mod(rd_.pairing(x, k), l_) == 0) return false;
    return true;
}

Alcove AlcoveGeometry::make(const AffineElt& w) const {
    return Alcove{floors_of_shifted(w.apply(rd_.rho())), w};
}

Alcove AlcoveGeometry::bottom() const { return make(AffineElt::identity(rd_.rank())); }

Alcove AlcoveGeometry::translate(const Alcove& a, const Weight& by) const {
    return alcove_of(interior_point(a) + by);
}

Alcove AlcoveGeometry::a_plus() const { return translate(bottom(), l_ * rd_.rho()); }

Alcove AlcoveGeometry::a_minus() const { return upper_alcove_of((l_ - 1) * rd_.rho()); }

Alcove AlcoveGeometry::from_floors(const std::vector<int>& target) const {
    if (static_cast<int>(target.size()) != rd_.num_positive_roots())
        throw DomainError("floor vector has wrong length");
    Alcove cur = bottom();
    auto gap = [&](const std::vector<int>& f) {
        int s = 0;
        for (size_t i = 0; i < f.size(); ++i) s += std::abs(f[i] - target[i]);
        return s;
    };
    int g = gap(cur.floors);
    while (g > 0) {
        bool moved = false;
        for (int s = 0; s < num_generators() && !moved; ++s) {
            Alcove nxt = reflect(cur, s);
            int ng = gap(nxt.floors);
            if (ng < g) {
                cur = nxt;
                g = ng;
                moved = true;
            }
        }
        if (!moved) throw DomainError("inconsistent floor vector");
    }
    return cur;
}

Alcove AlcoveGeometry::alcove_of(const Weight& lambda) const {
    if (!is_regular(lambda))
        throw DomainError("weight " + lambda.str() + " is singular (" +
                          facet_kind_name(classify_weight(lambda).kind) + ")");
    return from_floors(floors_of_shifted(lambda + rd_.rho()));
}

Alcove AlcoveGeometry::upper_alcove_of(const Weight& lambda) const {
    Weight x = lambda + rd_.rho();
    std::vector<int> f(rd_.num_positive_roots());
    for (int k = 0; k < rd_.num_positive_roots(); ++k) f[k] = floor_div(rd_.pairing(x, k) - 1, l_);
    return from_floors(f);
}

FacetClass AlcoveGeometry::classify_weight(const Weight& lambda) const {
    FacetClass fc;
    Weight x = lambda + rd_.rho();
    for (int k = 0; k < rd_.num_positive_roots(); ++k)
        if (mod(rd_.pairing(x, k), l_) == 0) ++fc.hyperplanes;
    if (fc.hyperplanes == 0) return fc;
    Alcove a = upper_alcove_of(lambda);
    Weight y = inverse(a.w).apply(x);
    const int beta = rd_.highest_coroot_index();
    if (rd_.pairing(y, beta) == l_) fc.wall_types.push_back(0);
    for (int i = 0; i < rd_.rank(); ++i)
        if (y[i] == 0) fc.wall_types.push_back(i + 1);
    if (fc.hyperplanes == rd_.num_positive_roots())
        fc.kind = FacetKind::special_point;
    else if (fc.hyperplanes == 1)
        fc.kind = FacetKind::wall;
    else
        fc.kind = FacetKind::other_singular;
    return fc;
}

Weight AlcoveGeometry::interior_point(const Alcove& a) const {
    return a.w.apply(rd_.rho()) - rd_.rho();
}

Alcove AlcoveGeometry::reflect(const Alcove& a, int s) const {
    if (s < 0 || s >= num_generators()) throw DomainError("no such affine generator");
    return make(a.w.compose(gens_[s]));
}

int AlcoveGeometry::distance(const Alcove& a, const Alcove& b) const {
    int d = 0;
    for (size_t i = 0; i < a.floors.size(); ++i) d += std::abs(a.floors[i] - b.floors[i]);
    return d;
}

bool AlcoveGeometry::is_dominant(const Alcove& a) const {
    return std::all_of(a.floors.begin(), a.floors.end(), [](int n) { return n >= 0; });
}

bool AlcoveGeometry::in_A_plusplus(const Alcove& a) const {
    for (int k = 0; k < rd_.num_positive_roots(); ++k)
        if (a.floors[k] < rd_.pairing(rd_.rho(), k)) return false;
    return true;
}

bool AlcoveGeometry::goes_up(const Alcove& a, int s) const {
    return height(reflect(a, s)) > height(a);
}

bool AlcoveGeometry::upper_closure_contains(const Alcove& a, const Weight& lambda) const {
    Weight x = lambda + rd_.rho();
    for (int k = 0; k < rd_.num_positive_roots(); ++k) {
        int p = rd_.pairing(x, k), n = a.floors[k];
        if (!(n * l_ < p && p <= (n + 1) * l_)) return false;
    }
    return true;
}

bool AlcoveGeometry::closure_contains(const Alcove& a, const Weight& lambda) const {
    Weight x = lambda + rd_.rho();
    for (int k = 0; k < rd_.num_positive_roots(); ++k) {
        int p = rd_.pairing(x, k), n = a.floors[k];
        if (!(n * l_ <= p && p <= (n + 1) * l_)) return false;
    }
    return true;
}

std::pair<Weight, Weight> AlcoveGeometry::decompose_weight(const Weight& lambda) const {
    Weight l0 = lambda, l1 = lambda;
    for (int i = 0; i < lambda.rank(); ++i) {
        l0[i] = mod(lambda[i], l_);
        l1[i] = floor_div(lambda[i], l_);
    }
    return {l0, l1};
}

Weight AlcoveGeometry::tilde(const Weight& lambda) const {
    if (!lambda.is_dominant()) throw DomainError("tilde: weight must be dominant");
    auto [l0, l1] = decompose_weight(lambda);
    return 2 * (l_ - 1) * rd_.rho() + rd_.apply(rd_.w0(), l0) + l_ * l1;
}

bool AlcoveGeometry::in_closure_of_bottom(const Weight& nu) const {
    return closure_contains(bottom(), nu);
}

Weight AlcoveGeometry::orbit_representative(const Weight& nu, const Alcove& a) const {
    if (!in_closure_of_bottom(nu)) throw DomainError("orbit_representative: weight not in the closed bottom alcove");
    return a.w.apply(nu + rd_.rho()) - rd_.rho();
}

Weight AlcoveGeometry::bottom_representative(const Weight& lambda) const {
    Alcove a = alcove_of(lambda);
    return inverse(a.w).apply(lambda + rd_.rho()) - rd_.rho();
}

std::vector<Alcove> AlcoveGeometry::enumerate_dominant_up_to(int max_height) const {
    std::set<Alcove> seen{bottom()};
    std::vector<Alcove> frontier{bottom()};
    for (int h = 0; h < max_height; ++h) {
        std::vector<Alcove> next;
        for (auto& a : frontier)
            for (int s = 0; s < num_generators(); ++s) {
                Alcove b = reflect(a, s);
                if (!is_dominant(b) || height(b) != h + 1 || seen.count(b)) continue;
                seen.insert(b);
                next.push_back(b);
            }
        frontier = std::move(next);
    }
    std::vector<Alcove> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [&](const Alcove& a, const Alcove& b) {
        int ha = height(a), hb = height(b);
        if (ha != hb) return ha < hb;
        return a.floors < b.floors;
    });
    return out;
}

std::vector<Alcove> AlcoveGeometry::enumerate_dominant(int count) const {
    if (count <= 0) return {};
    for (int h = 0;; ++h) {
        auto all = enumerate_dominant_up_to(h);
        if (static_cast<int>(all.size()) >= count) {
            all.resize(count);
            return all;
        }
    }
}

bool AlcoveGeometry::is_special_point(const Weight& nu) const {
    return classify_weight(nu).kind == FacetKind::special_point;
}

std::vector<AffineElt> AlcoveGeometry::special_point_stabilizer(const Weight& nu) const {
    if (!is_special_point(nu)) throw DomainError("weight " + nu.str() + " is not a special point");
    Alcove a = upper_alcove_of(nu);
    AffineElt winv = inverse(a.w);
    std::vector<AffineElt> out;
    for (int s : classify_weight(nu).wall_types) out.push_back(a.w.compose(gens_[s]).compose(winv));
    return out;
}

std::vector<std::pair<Alcove, int>> AlcoveGeometry::special_point_star(const Weight& nu) const {
    if (!is_special_point(nu)) throw DomainError("weight " + nu.str() + " is not a special point");
    Alcove low = upper_alcove_of(nu);
    Weight c = nu + rd_.rho();
    Weight y = low.w.apply(rd_.rho());
    std::vector<std::pair<Alcove, int>> out;
    for (auto& sigma : rd_.weyl_group()) {
        Weight z = rd_.apply(sigma, y - c) + c;
        Alcove b = from_floors(floors_of_shifted(z));
        out.emplace_back(b, distance(low, b));
    }
    return out;
}

void LabelMap::insert(const std::string& label, const Alcove& a) {
    if (by_label_.count(label) || by_floors_.count(a.floors))
        throw DomainError("duplicate label map entry for " + label);
    by_label_.emplace(label, a);
    by_floors_.emplace(a.floors, label);
}

std::optional<Alcove> LabelMap::alcove(const std::string& label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> LabelMap::label(const Alcove& a) const {
    auto it = by_floors_.find(a.floors);
    if (it == by_floors_.end()) return std::nullopt;
    return it->second;
}

std::string LabelMap::name(const Alcove& a) const {
    auto l = label(a);
    return l ? *l : a.key();
}

}  // namespace loewy
