#include "loewy/kl.hpp"

#include <functional>
#include <mutex>
#include <stdexcept>

#include "loewy/errors.hpp"

namespace loewy {

namespace {

struct HeightOrder {
    const AlcoveGeometry* geo;
    bool operator()(const Alcove& a, const Alcove& b) const {
        int ha = geo->height(a), hb = geo->height(b);
        if (ha != hb) return ha > hb;
        return a.floors < b.floors;
    }
};

int descent_of(const AlcoveGeometry& geo, const Alcove& a) {
    for (int s = 0; s < geo.num_generators(); ++s) {
        Alcove b = geo.reflect(a, s);
        if (geo.is_dominant(b) && geo.height(b) < geo.height(a)) return s;
    }
    return -1;
}

// Subtract v^0 parts top-down so that every off-diagonal entry lies in v Z[v].
AlcovePolys normalize(const AlcoveGeometry& geo, const Alcove& a, AlcovePolys q,
                      const std::function<const AlcovePolys&(const Alcove&)>& column) {
    std::map<Alcove, LaurentPoly, HeightOrder> ordered(HeightOrder{&geo});
    for (auto& [b, p] : q) ordered[b] = p;
    for (auto it = ordered.begin(); it != ordered.end(); ++it) {
        if (it->first == a) continue;
        LaurentPoly::Coeff c = it->second.coeff(0);
        if (c == 0) continue;
        for (auto& [b, p] : column(it->first)) ordered[b] -= p * c;
    }
    AlcovePolys out;
    for (auto& [b, p] : ordered) {
        if (p.is_zero()) continue;
        if (b == a) {
            if (!(p == LaurentPoly::constant(1))) throw std::logic_error("canonical basis: bad diagonal entry");
        } else if (p.min_exponent() < 1) {
            throw std::logic_error("canonical basis: off-diagonal entry not in vZ[v]");
        }
        out.emplace(b, p);
    }
    return out;
}

}  // namespace

AlcovePolys act_by_generator(const AlcoveGeometry& geo, HeckeModule m, const AlcovePolys& x, int s) {
    const LaurentPoly v = LaurentPoly::monomial(1), vinv = LaurentPoly::monomial(-1);
    AlcovePolys q;
    for (auto& [b, p] : x) {
        Alcove bs = geo.reflect(b, s);
        if (geo.is_dominant(bs)) {
            q[bs] += p;
            q[b] += p * (geo.height(bs) > geo.height(b) ? v : vinv);
        } else if (m == HeckeModule::spherical) {
            q[b] += p * (v + vinv);
        }
    }
    for (auto it = q.begin(); it != q.end();) it = it->second.is_zero() ? q.erase(it) : std::next(it);
    return q;
}

KLEngine::KLEngine(AlcoveGeometry geo) : geo_(std::move(geo)) {}

int KLEngine::chosen_descent(const Alcove& a) const { return descent_of(geo_, a); }

const AlcovePolys& KLEngine::canonical(HeckeModule m, const Alcove& a) const {
    if (!geo_.is_dominant(a)) throw DomainError("alcove " + a.key() + " is not dominant");
    auto& table = memo_[static_cast<int>(m)];
    {
        std::shared_lock lock(mutex_);
        auto it = table.find(a);
        if (it != table.end()) return it->second;
    }
    AlcovePolys col = compute(m, a);
    std::unique_lock lock(mutex_);
    return table.emplace(a, std::move(col)).first->second;
}

AlcovePolys KLEngine::compute(HeckeModule m, const Alcove& a) const {
    int s = descent_of(geo_, a);
    if (s < 0) return AlcovePolys{{a, LaurentPoly::constant(1)}};
    AlcovePolys q = act_by_generator(geo_, m, canonical(m, geo_.reflect(a, s)), s);
    return normalize(geo_, a, std::move(q), [&](const Alcove& b) -> const AlcovePolys& { return canonical(m, b); });
}

AlcovePolys naive_canonical(const AlcoveGeometry& geo, HeckeModule m, const Alcove& a) {
    int s = descent_of(geo, a);
    if (s < 0) return AlcovePolys{{a, LaurentPoly::constant(1)}};
    AlcovePolys q = act_by_generator(geo, m, naive_canonical(geo, m, geo.reflect(a, s)), s);
    AlcovePolys scratch;
    return normalize(geo, a, std::move(q), [&](const Alcove& b) -> const AlcovePolys& {
        scratch = naive_canonical(geo, m, b);
        return scratch;
    });
}

const AlcovePolys& KLEngine::inverse_column(const Alcove& a) const {
    {
        std::shared_lock lock(mutex_);
        auto it = inverse_memo_.find(a);
        if (it != inverse_memo_.end()) return it->second;
    }
    AlcovePolys col = compute_inverse(a);
    std::unique_lock lock(mutex_);
    return inverse_memo_.emplace(a, std::move(col)).first->second;
}

AlcovePolys KLEngine::compute_inverse(const Alcove& a) const {
    std::map<Alcove, LaurentPoly, HeightOrder> g(HeightOrder{&geo_});
    g[a] = LaurentPoly::constant(1);
    for (auto it = g.begin(); it != g.end(); ++it) {
        if (it->second.is_zero()) continue;
        const LaurentPoly gc = it->second;
        for (auto& [b, p] : canonical(HeckeModule::spherical, it->first)) {
            if (b == it->first) continue;
            g[b] -= p.negate_variable() * gc;
        }
    }
    AlcovePolys out;
    for (auto& [b, p] : g)
        if (!p.is_zero()) out.emplace(b, p);
    return out;
}

namespace {
LaurentPoly lookup(const AlcovePolys& col, const Alcove& b) {
    auto it = col.find(b);
    return it == col.end() ? LaurentPoly{} : it->second;
}
}  // namespace

LaurentPoly KLEngine::kl_poly(const Alcove& b, const Alcove& a) const {
    return lookup(canonical(HeckeModule::spherical, a), b);
}

LaurentPoly KLEngine::tilting_poly(const Alcove& b, const Alcove& a) const {
    return lookup(canonical(HeckeModule::antispherical, a), b);
}

LaurentPoly KLEngine::graded_decomposition(const Alcove& b, const Alcove& a) const {
    return lookup(inverse_column(a), b);
}

std::int64_t KLEngine::decomposition_mult(const Alcove& a, const Alcove& b) const {
    return graded_decomposition(b, a).eval_at_one();
}

bool KLEngine::linked_below(const Alcove& b, const Alcove& a) const {
    return canonical(HeckeModule::spherical, a).count(b) > 0;
}

int KLEngine::mu(const Alcove& b, const Alcove& a) const {
    if (b == a) return 0;
    return static_cast<int>(kl_poly(b, a).coeff(1));
}

int KLEngine::ext1_dim(const Alcove& b, const Alcove& a) const {
    if (b == a || geo_.distance(a, b) % 2 == 0) return 0;
    if (geo_.height(b) < geo_.height(a)) return mu(b, a);
    return mu(a, b);
}

std::vector<std::pair<Alcove, std::int64_t>> KLEngine::tilting_delta_mults(const Alcove& a) const {
    std::vector<std::pair<Alcove, std::int64_t>> out;
    for (auto& [b, p] : canonical(HeckeModule::antispherical, a)) out.emplace_back(b, p.eval_at_one());
    return out;
}

size_t KLEngine::memo_size() const {
    std::shared_lock lock(mutex_);
    return memo_[0].size() + memo_[1].size() + inverse_memo_.size();
}

}  // namespace loewy
