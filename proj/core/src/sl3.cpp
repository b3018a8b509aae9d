#include "loewy/sl3.hpp"

#include <algorithm>
#include <stdexcept>

#include "loewy/errors.hpp"

namespace loewy {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

ModularParams make_modular_params(int p, LabelMap labels, std::set<std::string> ignored) {
    if (!is_prime(p) || p % 2 == 0) throw DomainError("p = " + std::to_string(p) + " is not an odd prime");
    RootDatum rd = RootDatum::build("A2");
    ModularParams mp;
    mp.p = p;
    mp.lambda_star = (p * (p - 1) / 2) * rd.rho();
    mp.nu = ((p - 3) / 2) * rd.rho();
    mp.labels = std::move(labels);
    mp.ignored = std::move(ignored);
    return mp;
}

std::pair<Weight, Weight> donkin_factorize(const RootDatum& rd, const Weight& lambda, int p) {
    Weight rest = lambda - (p - 1) * rd.rho();
    if (!rest.is_dominant())
        throw DomainError(lambda.str() + " lies below (p-1)rho; no factorization T(mu~) (x) T(nu)^(1)");
    Weight r = rest, nu = rest;
    for (int i = 0; i < rd.rank(); ++i) {
        r[i] = rest[i] % p;
        nu[i] = rest[i] / p;
    }
    // mu~ = (p-1)rho + r = 2(p-1)rho + w0 mu, so mu = (p-1)rho + w0 r.
    Weight mu = (p - 1) * rd.rho() + rd.apply(rd.w0(), r);
    return {mu, nu};
}

SL3Modular::SL3Modular(ModularParams params) : params_(std::move(params)) {
    RootDatum rd = RootDatum::build("A2");
    geo_ = std::make_unique<AlcoveGeometry>(rd, params_.p);
    kl_ = std::make_unique<KLEngine>(*geo_);
    solver_ = std::make_unique<LoewySolver>(*kl_, LabelMap{});
}

WeightLayers SL3Modular::q_layers() const {
    const auto& rd = geo_->root_datum();
    Weight top = params_.p * rd.rho();
    Alcove a = geo_->alcove_of(top);
    if (!solver_->is_projective_tilting(a)) throw std::logic_error("T(p rho) is not projective");
    LayerDiagram check = solver_->projective_tilting_layers(a);
    (void)check;
    WeightLayers out;
    Weight zero = Weight::zero(rd.rank());
    for (auto& layer : solver_->tilting_shift_sum(a)) {
        std::map<Weight, int> w;
        for (auto& [b, m] : layer) w[geo_->orbit_representative(zero, b)] += m;
        out.push_back(w);
    }
    return out;
}

LayerDiagram SL3Modular::q_diagram() const {
    LayerDiagram d;
    d.kind = DiagramKind::socle;
    d.module = "Q(" + (((params_.p - 2)) * geo_->root_datum().rho()).str() + ")";
    for (auto& l : q_layers()) {
        Layer out;
        for (auto& [w, m] : l) out[w.str()] += m;
        d.layers.push_back(out);
    }
    return d;
}

std::string SL3Modular::label_of(const Weight& w) const {
    Alcove a = geo_->alcove_of(w);
    auto lab = params_.labels.label(a);
    if (!lab) throw std::logic_error("weight " + w.str() + " lies in no numbered alcove");
    if (params_.ignored.count(*lab)) throw std::logic_error("weight " + w.str() + " lies in ignored alcove " + *lab);
    return *lab;
}

LayerDiagram SL3Modular::twist_tensor_layers(const WeightLayers& q, const Weight& nu) const {
    const auto& rd = geo_->root_datum();
    const int p = params_.p;
    const int hi = rd.highest_coroot_index();
    auto in_closure = [&](const Weight& eta) { return rd.pairing(eta + rd.rho(), hi) <= p; };
    auto s0_dot = [&](const Weight& eta) {
        Weight x = eta + rd.rho();
        int k = rd.pairing(x, hi) - p;
        return x - k * rd.positive_roots()[hi].weight - rd.rho();
    };

    LayerDiagram d;
    d.kind = DiagramKind::socle;
    d.module = "T(" + params_.lambda_star.str() + ")";
    for (int i = 0; i < static_cast<int>(q.size()); ++i) {
        // Twisted multiplicity space of each restricted weight, in Weyl characters.
        std::map<Weight, std::map<Weight, std::int64_t>> isotypic;
        for (auto& [b, m] : q[i]) {
            auto [b0, b1] = geo_->decompose_weight(b);
            for (auto& [eta, c] : rd.tensor_decompose(b1, nu)) isotypic[b0][eta] += c * m;
        }
        Layer layer;
        std::vector<Block> blocks;
        for (auto& [b0, ch] : isotypic) {
            // Peel tilting characters from the top.
            while (!ch.empty()) {
                auto top_it = std::max_element(ch.begin(), ch.end(), [&](const auto& x, const auto& y) {
                    return rd.pairing(x.first + rd.rho(), hi) < rd.pairing(y.first + rd.rho(), hi);
                });
                Weight eta = top_it->first;
                std::int64_t c = top_it->second;
                if (c < 0) throw std::logic_error("negative Weyl multiplicity in twisted layer");
                ch.erase(top_it);
                if (c == 0) continue;
                if (in_closure(eta)) {
                    layer[label_of(b0 + p * eta)] += static_cast<int>(c);
                    continue;
                }
                Weight low = s0_dot(eta);
                if (!low.is_dominant() || !in_closure(low) || ch[low] < c)
                    throw std::logic_error("twisted character " + eta.str() + " is not a two-step tilting character");
                ch[low] -= c;
                if (ch[low] == 0) ch.erase(low);
                std::string lo = label_of(b0 + p * low), mid = label_of(b0 + p * eta);
                for (std::int64_t k = 0; k < c; ++k) blocks.push_back(Block{"T", {{{lo, 1}}, {{mid, 1}}, {{lo, 1}}}});
            }
        }
        d.layers.push_back(layer);
        if (!blocks.empty()) d.blocks[i] = blocks;
    }
    return d;
}

RigidityReport SL3Modular::nonrigidity_certificate() const {
    LayerDiagram t = table();
    RigidityReport r;
    r.loewy_length = t.loewy_length();
    int middle = t.loewy_length() / 2;
    std::string star = label_of(params_.lambda_star);
    for (auto& [i, bs] : t.blocks)
        if (i != middle) throw std::logic_error("non-semisimple twisted part outside the middle layer");
    auto it = t.blocks.find(middle);
    if (it == t.blocks.end()) return r;
    for (auto& b : it->second) {
        if (b.layers.size() != 3 || b.layers[1].count(star) == 0) continue;
        r.is_rigid = false;
        // The outer layers twist to semisimple pieces, so soc^j and rad^j are
        // the twisted Q-layers for j <= 3. Inside the uniserial block the
        // middle factor sits one layer below the head and one above the socle.
        RigidityWitness w;
        w.factor = star;
        w.radical_layer = middle + 1;
        w.socle_layer = middle - 1;
        w.detail = "L(" + star + ") lies in rad^" + std::to_string(middle + 1) + " but not in soc^" +
                   std::to_string(middle + 1) + ": the middle layer carries the uniserial block " + b.name +
                   " with head and socle L(" + b.layers[0].begin()->first + ")";
        r.witness = w;
        return r;
    }
    return r;
}

std::int64_t SL3Modular::quantum_simple_dim(const Weight& b0) const {
    const auto& rd = geo_->root_datum();
    Weight base = geo_->bottom_representative(b0);
    std::int64_t dim = 0;
    for (auto& [a, c] : solver_->simple_character(geo_->alcove_of(b0)))
        dim += c * rd.weyl_dim(geo_->orbit_representative(base, a));
    return dim;
}

std::pair<std::int64_t, std::int64_t> SL3Modular::dimension_check() const {
    const auto& rd = geo_->root_datum();
    const int p = params_.p;
    Weight zero = Weight::zero(rd.rank());
    Alcove top = geo_->alcove_of(p * rd.rho());
    std::int64_t q_dim = 0;
    for (auto& [b, m] : kl_->tilting_delta_mults(top)) q_dim += m * rd.weyl_dim(geo_->orbit_representative(zero, b));

    // Semisimple factors L(w0) (x) L(w1)^(1) with w1 in the closed bottom
    // alcove; blocks T(eta)^(1) contribute ch(eta) + ch(s0.eta).
    auto split = [&](const std::string& lab) {
        return geo_->decompose_weight(geo_->orbit_representative(zero, *params_.labels.alcove(lab)));
    };
    std::int64_t lhs = 0;
    LayerDiagram t = table();
    for (auto& layer : t.layers)
        for (auto& [lab, m] : layer) {
            auto [w0, w1] = split(lab);
            lhs += m * quantum_simple_dim(w0) * rd.weyl_dim(w1);
        }
    for (auto& [i, bs] : t.blocks)
        for (auto& b : bs) {
            auto [l0, l1] = split(b.layers[0].begin()->first);
            auto [m0, m1] = split(b.layers[1].begin()->first);
            if (l0 != m0) throw std::logic_error("block mixes restricted weights");
            lhs += quantum_simple_dim(m0) * (rd.weyl_dim(m1) + rd.weyl_dim(l1));
        }
    return {lhs, q_dim * rd.weyl_dim(params_.nu)};
}

}  // namespace loewy
