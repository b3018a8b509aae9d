#include "loewy/solver.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "loewy/errors.hpp"

namespace loewy {

namespace {

// One step of a socle or radical computation: a verdict per remaining factor.
struct Verdict {
    std::vector<std::string> in, out;
};

using ExtFn = std::function<std::optional<int>(const Alcove&, const Alcove&)>;
using OutFn = std::function<std::optional<std::string>(const Alcove&, int)>;
using NameFn = std::function<std::string(const Alcove&)>;

// Inputs shared by both engines. `layer` is a head-first index into a
// filtration with semisimple layers (parity or translated Loewy layers).
struct EngineSetup {
    Alcove head;
    std::map<Alcove, int> layer;
    int length = 0;
    ExtFn ext;
    OutFn extra_out;
    NameFn name;
};

struct EngineResult {
    std::optional<std::vector<std::set<Alcove>>> layers;  // in the engine's own order
    std::vector<std::string> trace;
    std::string reason;
};

bool all_ext_zero(const ExtFn& ext, const Alcove& b, const std::vector<Alcove>& others) {
    for (auto& c : others) {
        auto e = ext(b, c);
        if (!e || *e != 0) return false;
    }
    return true;
}

std::string step_name(const char* tag, int j) { return std::string(tag) + "_" + std::to_string(j); }

// Socle layers bottom-first, j = 1, 2, ...
EngineResult run_socle(const EngineSetup& sp) {
    EngineResult r;
    std::set<Alcove> remaining;
    for (auto& [b, k] : sp.layer) remaining.insert(b);
    std::vector<std::set<Alcove>> out;
    for (int j = 1; !remaining.empty(); ++j) {
        std::set<Alcove> placed;
        for (auto& b : remaining) {
            Verdict v;
            int kb = sp.layer.at(b);
            if (kb >= sp.length - j) v.in.push_back("lies in the bottom " + std::to_string(j) + " filtration layers");
            if (b == sp.head && remaining.size() > 1) v.out.push_back("head of a module with other factors left");
            std::vector<Alcove> deeper;
            for (auto& c : remaining)
                if (sp.layer.at(c) > kb) deeper.push_back(c);
            if (b != sp.head && all_ext_zero(sp.ext, b, deeper)) v.in.push_back("no extension with deeper factors");
            if (j >= 2) {
                std::vector<Alcove> below(out.back().begin(), out.back().end());
                if (all_ext_zero(sp.ext, b, below)) v.out.push_back("extends nothing in the previous layer");
            }
            if (sp.extra_out)
                if (auto why = sp.extra_out(b, j)) v.out.push_back(*why);
            std::string where = step_name("soc", j) + ": L(" + sp.name(b) + ")";
            if (!v.in.empty() && !v.out.empty())
                throw std::logic_error(where + " both forced in (" + v.in.front() + ") and out (" + v.out.front() + ")");
            if (!v.in.empty()) {
                placed.insert(b);
                r.trace.push_back(where + " in: " + v.in.front());
            } else if (!v.out.empty()) {
                r.trace.push_back(where + " out: " + v.out.front());
            } else {
                r.reason = where + " cannot be placed by any rule";
                return r;
            }
        }
        if (placed.empty()) {
            r.reason = step_name("soc", j) + " is empty";
            return r;
        }
        for (auto& b : placed) remaining.erase(b);
        out.push_back(placed);
    }
    r.layers = out;
    return r;
}

// Radical layers head-first, k = 0, 1, ...
EngineResult run_radical(const EngineSetup& sp) {
    EngineResult r;
    std::set<Alcove> remaining;
    for (auto& [b, k] : sp.layer)
        if (b != sp.head) remaining.insert(b);
    std::vector<std::set<Alcove>> out{{sp.head}};
    r.trace.push_back("rad_0: L(" + sp.name(sp.head) + ") is the head");
    for (int k = 1; !remaining.empty(); ++k) {
        std::set<Alcove> placed;
        for (auto& b : remaining) {
            Verdict v;
            int kb = sp.layer.at(b);
            if (kb <= k) v.in.push_back("lies in the top " + std::to_string(k + 1) + " filtration layers");
            std::vector<Alcove> above;
            for (auto& c : remaining)
                if (sp.layer.at(c) < kb) above.push_back(c);
            if (all_ext_zero(sp.ext, b, above)) v.in.push_back("no extension with higher factors");
            std::vector<Alcove> prev(out.back().begin(), out.back().end());
            if (all_ext_zero(sp.ext, b, prev)) v.out.push_back("extends nothing in the previous layer");
            if (sp.extra_out)
                if (auto why = sp.extra_out(b, k)) v.out.push_back(*why);
            std::string where = step_name("rad", k) + ": L(" + sp.name(b) + ")";
            if (!v.in.empty() && !v.out.empty())
                throw std::logic_error(where + " both forced in (" + v.in.front() + ") and out (" + v.out.front() + ")");
            if (!v.in.empty()) {
                placed.insert(b);
                r.trace.push_back(where + " in: " + v.in.front());
            } else if (!v.out.empty()) {
                r.trace.push_back(where + " out: " + v.out.front());
            } else {
                r.reason = where + " cannot be placed by any rule";
                return r;
            }
        }
        if (placed.empty()) {
            r.reason = step_name("rad", k) + " is empty";
            return r;
        }
        for (auto& b : placed) remaining.erase(b);
        out.push_back(placed);
    }
    r.layers = out;
    return r;
}

AlcoveLayers from_sets(const std::vector<std::set<Alcove>>& sets) {
    AlcoveLayers out;
    for (auto& s : sets) {
        std::map<Alcove, int> l;
        for (auto& b : s) l[b] = 1;
        out.push_back(l);
    }
    return out;
}

bool multiplicity_free(const AlcoveLayers& d) {
    std::set<Alcove> seen;
    for (auto& l : d)
        for (auto& [b, m] : l)
            if (m != 1 || !seen.insert(b).second) return false;
    return true;
}

std::string strip_primes(const std::string& s) {
    size_t n = s.size();
    while (n > 0 && s[n - 1] == '\'') --n;
    return s.substr(0, n);
}

}  // namespace

LoewySolver::LoewySolver(const KLEngine& kl, LabelMap labels) : kl_(kl), labels_(std::move(labels)) {}

Alcove LoewySolver::resolve(const std::string& label) const {
    std::string base = strip_primes(label);
    if (auto a = labels_.alcove(base)) return *a;
    if (!base.empty() && base.front() == '[' && base.back() == ']') {
        std::vector<int> floors;
        std::stringstream ss(base.substr(1, base.size() - 2));
        std::string tok;
        while (std::getline(ss, tok, ',')) floors.push_back(std::stoi(tok));
        return geometry().from_floors(floors);
    }
    throw DomainError("unknown alcove label '" + label + "'");
}

LayerDiagram LoewySolver::to_diagram(const AlcoveLayers& layers, DiagramKind kind, const std::string& module,
                                     bool primed) const {
    LayerDiagram d;
    d.kind = kind;
    d.module = module;
    for (auto& l : layers) {
        Layer out;
        for (auto& [b, m] : l) out[name(b) + (primed ? "'" : "")] += m;
        d.layers.push_back(out);
    }
    return d;
}

AlcoveLayers LoewySolver::parity(const Alcove& a) const {
    if (!geometry().is_dominant(a)) throw DomainError("alcove " + a.key() + " is not dominant");
    AlcoveLayers out;
    for (auto& [b, p] : kl_.inverse_column(a)) {
        for (auto& [e, c] : p.terms()) {
            if (e < 0 || c < 0) throw std::logic_error("graded multiplicity out of range at " + b.key());
            if (static_cast<int>(out.size()) <= e) out.resize(e + 1);
            out[e][b] += static_cast<int>(c);
        }
    }
    for (auto& l : out)
        if (l.empty()) throw std::logic_error("empty interior parity layer for " + a.key());
    return out;
}

LayerDiagram LoewySolver::weyl_parity_layers(const Alcove& a) const {
    return to_diagram(parity(a), DiagramKind::parity, "Delta(" + name(a) + ")");
}

std::map<Alcove, std::int64_t> LoewySolver::weyl_factors(const Alcove& a) const {
    std::map<Alcove, std::int64_t> f;
    for (auto& [b, p] : kl_.inverse_column(a)) f[b] = p.eval_at_one();
    return f;
}

std::set<Alcove> LoewySolver::socle_candidates(const Alcove& a) const {
    const auto& g = geometry();
    std::vector<int> descents;
    for (int s = 0; s < g.num_generators(); ++s) {
        Alcove as = g.reflect(a, s);
        if (g.is_dominant(as) && !g.goes_up(a, s)) descents.push_back(s);
    }
    std::set<Alcove> out;
    for (auto& [b, m] : weyl_factors(a)) {
        bool ok = true;
        for (int s : descents) {
            Alcove bs = g.reflect(b, s);
            if (!g.is_dominant(bs) || !g.goes_up(b, s)) ok = false;
        }
        if (ok) out.insert(b);
    }
    return out;
}

bool LoewySolver::simple_head_table(const Alcove& a) const {
    const std::string& t = geometry().root_datum().type_name();
    if (t == "A2") return true;
    if (t == "B2") {
        static const std::vector<std::vector<int>> non_simple{{1, 0, 2, 2}, {1, 0, 3, 2}};
        return std::find(non_simple.begin(), non_simple.end(), a.floors) == non_simple.end();
    }
    throw DomainError("no simple-head table for type " + t);
}

std::optional<std::set<Alcove>> LoewySolver::certified_out(const Alcove& a, int j) const {
    // Exclusions established by hand for the B2 Weyl module with non-simple
    // socle at floors [1,0,3,2]: a wall-crossing of L at [0,1,2,1] rules it out
    // of the socle, and the s2-wall translation rules [0,0,1,0] out of soc_2.
    if (geometry().root_datum().type_name() != "B2" || a.floors != std::vector<int>{1, 0, 3, 2})
        return std::nullopt;
    const auto& g = geometry();
    if (j == 1) return std::set<Alcove>{g.from_floors({0, 1, 2, 1})};
    if (j == 2) return std::set<Alcove>{g.from_floors({0, 0, 1, 0})};
    return std::nullopt;
}

SeriesResult LoewySolver::weyl_socle_series(const Alcove& a) const {
    {
        std::lock_guard lk(memo_mutex_);
        if (auto it = socle_memo_.find(a); it != socle_memo_.end()) return it->second;
    }
    SeriesResult r = compute_socle(a);
    std::lock_guard lk(memo_mutex_);
    return socle_memo_.emplace(a, std::move(r)).first->second;
}

SeriesResult LoewySolver::weyl_radical_series(const Alcove& a) const {
    {
        std::lock_guard lk(memo_mutex_);
        if (auto it = radical_memo_.find(a); it != radical_memo_.end()) return it->second;
    }
    SeriesResult r = compute_radical(a);
    std::lock_guard lk(memo_mutex_);
    return radical_memo_.emplace(a, std::move(r)).first->second;
}

namespace {

// The simple-socle route: parity filtration plus simple head and socle.
std::optional<std::string> rigid_by_parity(const LoewySolver& s, const Alcove& a, const AlcoveLayers& p,
                                           std::vector<std::string>& trace) {
    bool simple;
    try {
        simple = s.simple_head_table(a);
    } catch (const DomainError& e) {
        return std::string(e.what());
    }
    if (!simple) return std::string("socle is not simple");
    const auto& bottom = p.back();
    if (bottom.size() != 1 || bottom.begin()->second != 1)
        throw std::logic_error("simple-socle table contradicts the parity layers of " + a.key());
    int r = static_cast<int>(p.size());
    if (r <= 4) {
        trace.push_back("simple head and socle, parity length " + std::to_string(r) + " <= 4: rigid");
        return std::nullopt;
    }
    if (r == 5) {
        const Alcove& soc = bottom.begin()->first;
        for (auto& [b, m] : p[3])
            if (s.kl().ext1_dim(b, a) != 0) return "extension between L(" + s.name(b) + ") and the head";
        for (auto& [b, m] : p[1])
            if (s.kl().ext1_dim(b, soc) != 0) return "extension between L(" + s.name(b) + ") and the socle";
        trace.push_back("simple head and socle, length 5, mu-checks vanish: rigid");
        return std::nullopt;
    }
    return std::string("parity length exceeds 5");
}

}  // namespace

SeriesResult LoewySolver::compute_socle(const Alcove& a) const {
    SeriesResult r;
    AlcoveLayers p = parity(a);
    std::string module = "Delta(" + name(a) + ")";
    auto simple_fail = rigid_by_parity(*this, a, p, r.trace);
    if (!simple_fail) {
        r.diagram = to_diagram(p, DiagramKind::socle, module);
        return r;
    }
    bool simple = *simple_fail != "socle is not simple";
    if (simple || !multiplicity_free(p)) {
        r.reason = *simple_fail;
        return r;
    }
    const auto& g = geometry();
    EngineSetup sp;
    sp.head = a;
    sp.length = static_cast<int>(p.size());
    for (int k = 0; k < sp.length; ++k)
        for (auto& [b, m] : p[k]) sp.layer[b] = k;
    sp.ext = [this](const Alcove& x, const Alcove& y) -> std::optional<int> { return kl_.ext1_dim(x, y); };
    sp.name = [this](const Alcove& x) { return name(x); };

    std::set<Alcove> candidates = socle_candidates(a);
    // Lowest socle layer each descent neighbour As may occupy.
    std::map<Alcove, int> floor_layer;
    for (int s = 0; s < g.num_generators(); ++s) {
        Alcove as = g.reflect(a, s);
        if (!g.is_dominant(as) || g.goes_up(a, s) || !sp.layer.count(as)) continue;
        SeriesResult rad = weyl_radical_series(as);
        if (!rad.determined()) continue;
        int top = -1;
        const auto& layers = rad.diagram->layers;
        for (int k = 0; k < static_cast<int>(layers.size()); ++k)
            for (auto& [lab, m] : layers[k]) {
                Alcove b = resolve(lab);
                Alcove bs = g.reflect(b, s);
                if (g.is_dominant(bs) && g.goes_up(b, s)) top = std::max(top, k);
            }
        if (top >= 0) floor_layer[as] = std::max(floor_layer[as], top + 1);
    }
    sp.extra_out = [&, this](const Alcove& b, int j) -> std::optional<std::string> {
        if (j == 1 && !candidates.count(b)) return std::string("fails the wall filter");
        if (j == 1 && kl_.tilting_poly(b, a).eval_at_one() == 0) return std::string("not a Delta-factor of T(A)");
        if (auto it = floor_layer.find(b); it != floor_layer.end() && j < it->second)
            return "translation puts it no lower than soc_" + std::to_string(it->second);
        if (auto c = certified_out(a, j); c && c->count(b)) return std::string("certified exclusion");
        return std::nullopt;
    };
    EngineResult er = run_socle(sp);
    r.trace.insert(r.trace.end(), er.trace.begin(), er.trace.end());
    if (!er.layers) {
        r.reason = er.reason;
        return r;
    }
    AlcoveLayers head_first = from_sets(*er.layers);
    std::reverse(head_first.begin(), head_first.end());
    r.diagram = to_diagram(head_first, DiagramKind::socle, module);
    return r;
}

SeriesResult LoewySolver::compute_radical(const Alcove& a) const {
    SeriesResult r;
    AlcoveLayers p = parity(a);
    std::string module = "Delta(" + name(a) + ")";
    auto simple_fail = rigid_by_parity(*this, a, p, r.trace);
    if (!simple_fail) {
        r.diagram = to_diagram(p, DiagramKind::radical, module);
        return r;
    }
    bool simple = *simple_fail != "socle is not simple";
    if (simple || !multiplicity_free(p)) {
        r.reason = *simple_fail;
        return r;
    }
    EngineSetup sp;
    sp.head = a;
    sp.length = static_cast<int>(p.size());
    for (int k = 0; k < sp.length; ++k)
        for (auto& [b, m] : p[k]) sp.layer[b] = k;
    sp.ext = [this](const Alcove& x, const Alcove& y) -> std::optional<int> { return kl_.ext1_dim(x, y); };
    sp.name = [this](const Alcove& x) { return name(x); };
    EngineResult er = run_radical(sp);
    r.trace.insert(r.trace.end(), er.trace.begin(), er.trace.end());
    if (!er.layers) {
        r.reason = er.reason;
        return r;
    }
    r.diagram = to_diagram(from_sets(*er.layers), DiagramKind::radical, module);
    return r;
}

int LoewySolver::special_point_socle_mult(const Alcove& a, const Weight& nu, int j) const {
    const auto& g = geometry();
    const auto& rd = g.root_datum();
    int l = g.level();
    if (!g.is_special_point(nu)) throw DomainError(nu.str() + " is not a special point");
    Weight shifted = nu - (l - 1) * rd.rho();
    for (int i = 0; i < rd.rank(); ++i)
        if (shifted[i] % l != 0) throw DomainError(nu.str() + " is not of the form (l-1)rho + l mu");
    Weight mu = shifted;
    for (int i = 0; i < rd.rank(); ++i) mu[i] /= l;
    if (!(mu - rd.rho()).is_dominant()) throw DomainError("mu = " + mu.str() + " is not in rho + X+");
    for (auto& [b, len] : g.special_point_star(nu))
        if (b == a) return len == j - 1 ? 1 : 0;
    return 0;
}

Weight LoewySolver::wall_point(int s) const {
    const auto& g = geometry();
    const auto& rd = g.root_datum();
    int l = g.level(), n = rd.rank();
    int hi = rd.highest_coroot_index();
    std::vector<int> x(n, 0);
    while (true) {
        Weight w(x);
        bool ok = true;
        for (int k = 0; k < rd.num_positive_roots() && ok; ++k) {
            int p = rd.pairing(w, k);
            bool on_wall = (s == 0 && k == hi && p == l) || (s > 0 && k == s - 1 && p == 0);
            if (on_wall) continue;
            if ((s == 0 && k == hi) || (s > 0 && k == s - 1)) ok = false;
            else if (p <= 0 || p >= l) ok = false;
        }
        if (ok) return w - rd.rho();
        int i = 0;
        while (i < n && ++x[i] > l) x[i++] = 0;
        if (i == n) break;
    }
    throw std::logic_error("no interior point on wall " + std::to_string(s));
}

bool LoewySolver::survives_translation(const Alcove& b, int s) const {
    const auto& g = geometry();
    Weight nu = g.orbit_representative(wall_point(s), b);
    return g.upper_closure_contains(b, nu);
}

AlcoveLayers LoewySolver::translate_layers(const AlcoveLayers& d, int s) const {
    AlcoveLayers out;
    for (auto& l : d) {
        std::map<Alcove, int> t;
        for (auto& [b, m] : l)
            if (survives_translation(b, s)) t[b] += m;
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

LayerDiagram LoewySolver::translate_layers(const LayerDiagram& d, int s) const {
    LayerDiagram out;
    out.kind = DiagramKind::filtration;
    out.module = d.module.empty() ? "" : d.module + " translated to wall s" + std::to_string(s);
    for (auto& l : d.layers) {
        Layer t;
        for (auto& [lab, m] : l)
            if (survives_translation(resolve(lab), s)) t[strip_primes(lab) + "'"] += m;
        if (!t.empty()) out.layers.push_back(t);
    }
    return out;
}

std::optional<int> LoewySolver::singular_ext(const Alcove& x, const Alcove& y, int s) const {
    if (x == y) return 0;
    auto factors = [&](const Alcove& a) {
        std::set<Alcove> f;
        for (auto& [b, m] : weyl_factors(a))
            if (survives_translation(b, s)) f.insert(b);
        return f;
    };
    Alcove hi = x, lo = y;
    if (!factors(x).count(y)) {
        if (!factors(y).count(x)) return 0;
        std::swap(hi, lo);
    }
    AlcoveLayers t = translate_layers(parity(hi), s);
    if (t.size() > 2) return std::nullopt;
    if (t.size() < 2) return 0;
    auto it = t[1].find(lo);
    return it == t[1].end() ? 0 : it->second;
}

std::pair<SeriesResult, SeriesResult> LoewySolver::singular_weyl_series(const Alcove& a, int s) const {
    SeriesResult rad, soc;
    const auto& g = geometry();
    std::string module = "Delta(" + name(a) + "')";
    if (!survives_translation(a, s)) {
        rad.reason = soc.reason = "L(" + name(a) + ") vanishes on the s" + std::to_string(s) + "-wall";
        return {rad, soc};
    }
    SeriesResult base = weyl_socle_series(a);
    if (!base.determined()) {
        rad.reason = soc.reason = "socle series of Delta(" + name(a) + ") undetermined";
        return {rad, soc};
    }
    AlcoveLayers src;
    for (auto& l : base.diagram->layers) {
        std::map<Alcove, int> m;
        for (auto& [lab, k] : l) m[resolve(lab)] += k;
        src.push_back(m);
    }
    AlcoveLayers f = translate_layers(src, s);
    if (!multiplicity_free(f)) {
        rad.reason = soc.reason = "translated filtration has repeated factors";
        return {rad, soc};
    }
    EngineSetup sp;
    sp.head = a;
    sp.length = static_cast<int>(f.size());
    for (int k = 0; k < sp.length; ++k)
        for (auto& [b, m] : f[k]) sp.layer[b] = k;
    sp.ext = [this, s](const Alcove& x, const Alcove& y) { return singular_ext(x, y, s); };
    sp.name = [this](const Alcove& x) { return name(x) + "'"; };

    // A simple submodule on the wall must come from a socle factor of one of
    // the two regular Weyl modules that translate onto Delta(A').
    std::set<Alcove> lifted_socle;
    bool lift_known = true;
    for (const Alcove& c : {a, g.reflect(a, s)}) {
        if (!g.is_dominant(c)) continue;
        SeriesResult sc = weyl_socle_series(c);
        if (!sc.determined()) {
            lift_known = false;
            continue;
        }
        for (auto& [lab, m] : sc.diagram->layers.back()) lifted_socle.insert(resolve(lab));
    }
    sp.extra_out = [&, this](const Alcove& b, int j) -> std::optional<std::string> {
        if (j != 1 || !lift_known) return std::nullopt;
        Alcove bs = g.reflect(b, s);
        if (lifted_socle.count(b) || lifted_socle.count(bs)) return std::nullopt;
        return std::string("no socle factor of the regular Weyl modules above it");
    };
    EngineResult se = run_socle(sp);
    soc.trace = se.trace;
    if (se.layers) {
        AlcoveLayers hf = from_sets(*se.layers);
        std::reverse(hf.begin(), hf.end());
        soc.diagram = to_diagram(hf, DiagramKind::socle, module, true);
    } else {
        soc.reason = se.reason;
    }

    // Length squeeze: with Loewy length equal to the filtration length, the
    // bottom filtration factor generates the last radical layer.
    EngineSetup rp = sp;
    rp.extra_out = nullptr;
    if (soc.determined() && soc.diagram->loewy_length() == sp.length && f.back().size() == 1) {
        Alcove last = f.back().begin()->first;
        int ll = sp.length;
        rp.extra_out = [last, ll](const Alcove& b, int k) -> std::optional<std::string> {
            if (b == last && k < ll - 1) return std::string("forced into the last radical layer by length");
            return std::nullopt;
        };
    }
    EngineResult re = run_radical(rp);
    rad.trace = re.trace;
    if (re.layers)
        rad.diagram = to_diagram(from_sets(*re.layers), DiagramKind::radical, module, true);
    else
        rad.reason = re.reason;
    return {rad, soc};
}

bool LoewySolver::is_projective_tilting(const Alcove& a) const {
    const auto& g = geometry();
    const auto& rd = g.root_datum();
    int l = g.level(), n = rd.rank();
    std::vector<int> x(n, 0);
    while (true) {
        Weight lam(x);
        if (g.is_regular(lam) && g.alcove_of(g.tilde(lam)) == a) return true;
        int i = 0;
        while (i < n && ++x[i] > l - 1) x[i++] = 0;
        if (i == n) return false;
    }
}

std::map<Alcove, std::int64_t> LoewySolver::tilting_factors(const Alcove& a) const {
    std::map<Alcove, std::int64_t> out;
    for (auto& [b, p] : kl_.canonical(HeckeModule::antispherical, a)) {
        std::int64_t c = p.eval_at_one();
        for (auto& [f, m] : weyl_factors(b)) out[f] += c * m;
    }
    return out;
}

AlcoveLayers LoewySolver::tilting_shift_sum(const Alcove& a) const {
    const auto& col = kl_.canonical(HeckeModule::antispherical, a);
    int top = 0;
    for (auto& [b, p] : col) top = std::max(top, p.max_exponent());
    AlcoveLayers bottom_first;
    for (auto& [b, p] : col) {
        AlcoveLayers pb = parity(b);
        for (auto& [e, c] : p.terms()) {
            int shift = top - e;
            for (int k = 0; k < static_cast<int>(pb.size()); ++k) {
                int idx = shift + k;
                if (static_cast<int>(bottom_first.size()) <= idx) bottom_first.resize(idx + 1);
                for (auto& [f, m] : pb[k]) bottom_first[idx][f] += static_cast<int>(c) * m;
            }
        }
    }
    std::reverse(bottom_first.begin(), bottom_first.end());
    return bottom_first;
}

LayerDiagram LoewySolver::projective_tilting_layers(const Alcove& a) const {
    AlcoveLayers t = tilting_shift_sum(a);
    LayerDiagram d = to_diagram(t, DiagramKind::socle, "T(" + name(a) + ")");
    bool simple_socle = t.back().size() == 1 && t.back().begin()->second == 1;
    int n = geometry().root_datum().num_positive_roots();
    if (is_projective_tilting(a)) {
        if (d.loewy_length() != 2 * n + 1 || !d.palindromic() || !simple_socle)
            throw std::logic_error("shift-sum for projective T(" + name(a) + ") is malformed");
        return d;
    }
    int weyl_len = static_cast<int>(parity(a).size());
    bool simple_factors = true;
    for (auto& [b, p] : kl_.canonical(HeckeModule::antispherical, a)) {
        try {
            if (!simple_head_table(b)) simple_factors = false;
        } catch (const DomainError&) {
            simple_factors = false;
        }
    }
    if (simple_factors && d.palindromic() && simple_socle && d.loewy_length() == 2 * weyl_len - 1) return d;
    throw DomainError("T(" + name(a) + ") is not projective and its shift-sum is not self-certifying");
}

namespace {

void expect_equal(ValidationReport& rep, const Layer& got, const Layer& want, const std::string& check) {
    ++rep.checks_run;
    std::set<std::string> keys;
    for (auto& [k, m] : got) keys.insert(k);
    for (auto& [k, m] : want) keys.insert(k);
    for (auto& k : keys) {
        int g = got.count(k) ? got.at(k) : 0;
        int w = want.count(k) ? want.at(k) : 0;
        if (g != w)
            rep.violations.push_back({check, "L(" + k + ")",
                                      "multiplicity " + std::to_string(g) + ", expected " + std::to_string(w)});
    }
}

}  // namespace

std::map<Alcove, std::int64_t> LoewySolver::singular_tilting_factors(const Alcove& a, int s) const {
    const auto& g = geometry();
    Alcove up = g.reflect(a, s);
    std::map<Alcove, std::int64_t> out;
    for (auto& [b, m] : tilting_factors(up))
        if (survives_translation(b, s)) out[b] += m;
    for (auto& [b, m] : out) {
        if (m % 2 != 0) throw std::logic_error("translated tilting character is not doubled");
        m /= 2;
    }
    return out;
}

ValidationReport LoewySolver::validate_diagram(const LayerDiagram& d, const ValidationContext& ctx) const {
    ValidationReport rep;
    const auto& g = geometry();
    const Alcove& a = ctx.alcove;
    bool singular = ctx.wall >= 0;
    bool tilting = ctx.module == ModuleKind::tilting;
    std::string suffix = singular ? "'" : "";
    auto named = [&](const std::map<Alcove, std::int64_t>& f) {
        Layer l;
        for (auto& [b, m] : f)
            if (m != 0) l[name(b) + suffix] += static_cast<int>(m);
        return l;
    };

    ++rep.checks_run;
    for (int i = 0; i < d.loewy_length(); ++i)
        if (d.layers[i].empty()) rep.violations.push_back({"layers", "layer " + std::to_string(i), "empty layer"});

    // (1) sum rule
    std::map<Alcove, std::int64_t> want;
    if (!singular) {
        want = tilting ? tilting_factors(a) : weyl_factors(a);
    } else if (tilting) {
        want = singular_tilting_factors(a, ctx.wall);
    } else {
        for (auto& [b, m] : weyl_factors(a))
            if (survives_translation(b, ctx.wall)) want[b] += m;
    }
    expect_equal(rep, d.total(), named(want), "sum rule");

    auto ext = [&](const std::string& x, const std::string& y) -> std::optional<int> {
        Alcove bx = resolve(x), by = resolve(y);
        if (singular) return singular_ext(bx, by, ctx.wall);
        return kl_.ext1_dim(bx, by);
    };

    // (2) parity
    if (!singular && (d.kind == DiagramKind::parity || tilting)) {
        ++rep.checks_run;
        for (int i = 0; i < d.loewy_length(); ++i)
            for (int j = i; j < d.loewy_length(); ++j)
                for (auto& [x, mx] : d.layers[i])
                    for (auto& [y, my] : d.layers[j]) {
                        int dist = g.distance(resolve(x), resolve(y));
                        if ((dist + i - j) % 2 != 0)
                            rep.violations.push_back({"parity", "layers " + std::to_string(i) + "," + std::to_string(j),
                                                      "L(" + x + ") and L(" + y + ") break the parity condition"});
                    }
    }

    // (3) extension adjacency
    if (d.kind == DiagramKind::radical || d.kind == DiagramKind::socle) {
        ++rep.checks_run;
        int n = d.loewy_length();
        for (int i = 0; i + 1 < n; ++i) {
            int from = d.kind == DiagramKind::radical ? i + 1 : i;
            int to = d.kind == DiagramKind::radical ? i : i + 1;
            for (auto& [x, mx] : d.layers[from]) {
                bool linked = false, unknown = false;
                for (auto& [y, my] : d.layers[to]) {
                    auto e = ext(x, y);
                    if (!e) unknown = true;
                    else if (*e > 0) linked = true;
                }
                if (!linked && !unknown)
                    rep.violations.push_back({"ext adjacency", "layer " + std::to_string(from),
                                              "L(" + x + ") extends nothing in layer " + std::to_string(to)});
            }
        }
    }

    // (4) self-duality of tilting modules
    if (tilting) {
        ++rep.checks_run;
        if (!d.palindromic()) rep.violations.push_back({"self-duality", d.module, "layers are not palindromic"});
    }

    // (5) length bounds
    ++rep.checks_run;
    int n = g.root_datum().num_positive_roots();
    if (d.loewy_length() > 2 * n + 1)
        rep.violations.push_back({"length bound", d.module, "more than 2N+1 layers"});
    if (tilting) {
        int weyl_len;
        if (singular) {
            auto [rad, soc] = singular_weyl_series(a, ctx.wall);
            weyl_len = soc.determined() ? soc.diagram->loewy_length() : 1;
        } else {
            SeriesResult soc = weyl_socle_series(a);
            weyl_len = soc.determined() ? soc.diagram->loewy_length() : static_cast<int>(parity(a).size());
        }
        if (d.loewy_length() < 2 * weyl_len - 1)
            rep.violations.push_back({"length bound", d.module, "shorter than 2 ll(Delta) - 1"});
    }
    return rep;
}

ValidationReport LoewySolver::validate_filtration(const FiltrationDiagram& f, const ValidationContext& ctx) const {
    ValidationReport rep;
    const auto& g = geometry();
    const Alcove& a = ctx.alcove;
    std::string suffix = ctx.wall >= 0 ? "'" : "";
    Layer want;
    if (ctx.wall < 0) {
        for (auto& [b, m] : kl_.tilting_delta_mults(a)) want[name(b)] += static_cast<int>(m);
    } else {
        Alcove up = g.reflect(a, ctx.wall);
        std::map<Alcove, std::int64_t> acc;
        for (auto& [b, m] : kl_.tilting_delta_mults(up)) {
            if (survives_translation(b, ctx.wall)) {
                acc[b] += m;
            } else {
                Alcove bs = g.reflect(b, ctx.wall);
                if (g.is_dominant(bs)) acc[bs] += m;
            }
        }
        for (auto& [b, m] : acc) {
            if (m % 2 != 0) throw std::logic_error("translated Delta-filtration is not doubled");
            want[name(b) + suffix] += static_cast<int>(m / 2);
        }
    }
    expect_equal(rep, f.total(), want, f.tag == 'D' ? "Delta-filtration sum" : "nabla-filtration sum");
    ++rep.checks_run;
    std::string self = name(a) + suffix;
    if (f.groups.empty()) {
        rep.violations.push_back({"filtration ends", f.module, "empty filtration"});
    } else if (f.tag == 'D') {
        if (f.groups.back() != std::vector<std::string>{self})
            rep.violations.push_back({"filtration ends", f.module, "bottom box is not Delta(" + self + ")"});
    } else if (f.groups.front() != std::vector<std::string>{self}) {
        rep.violations.push_back({"filtration ends", f.module, "top box is not nabla(" + self + ")"});
    }
    return rep;
}

ValidationReport LoewySolver::validate_partial(const PartialTilting& p) const {
    ValidationContext ctx{p.alcove, ModuleKind::tilting, p.wall};
    ValidationReport rep = validate_filtration(p.delta_filtration, ctx);
    ValidationReport nab = validate_filtration(p.nabla_filtration, ctx);
    rep.checks_run += nab.checks_run;
    rep.violations.insert(rep.violations.end(), nab.violations.begin(), nab.violations.end());

    bool singular = p.wall >= 0;
    std::string suffix = singular ? "'" : "";
    std::map<Alcove, std::int64_t> factors =
        singular ? singular_tilting_factors(p.alcove, p.wall) : tilting_factors(p.alcove);
    Layer total;
    for (auto& [b, m] : factors) total[name(b) + suffix] += static_cast<int>(m);
    Layer delta_mults = p.delta_filtration.total();

    // Length bounds.
    ++rep.checks_run;
    int n = geometry().root_datum().num_positive_roots();
    int weyl_len;
    std::optional<LayerDiagram> weyl_soc, weyl_rad;
    if (singular) {
        auto [rad, soc] = singular_weyl_series(p.alcove, p.wall);
        if (soc.determined()) weyl_soc = soc.diagram;
        if (rad.determined()) weyl_rad = rad.diagram;
    } else {
        SeriesResult soc = weyl_socle_series(p.alcove);
        SeriesResult rad = weyl_radical_series(p.alcove);
        if (soc.determined()) weyl_soc = soc.diagram;
        if (rad.determined()) weyl_rad = rad.diagram;
    }
    weyl_len = weyl_soc ? weyl_soc->loewy_length() : static_cast<int>(parity(p.alcove).size());
    if (p.loewy_length > 2 * n + 1 || p.loewy_length < 2 * weyl_len - 1)
        rep.violations.push_back({"length bound", "T(" + name(p.alcove) + suffix + ")",
                                  "Loewy length " + std::to_string(p.loewy_length) + " outside [" +
                                      std::to_string(2 * weyl_len - 1) + ", " + std::to_string(2 * n + 1) + "]"});

    // Socle factors need a Delta-factor of the same index, and no layer may
    // claim more factors than the module has.
    ++rep.checks_run;
    Layer used;
    auto account = [&](const std::map<int, Layer>& m) {
        for (auto& [j, layer] : m)
            for (auto& [lab, k] : layer) {
                used[lab] += k;
                if (!total.count(lab))
                    rep.violations.push_back({"socle data", "soc_" + std::to_string(j + 1),
                                              "L(" + lab + ") is not a composition factor"});
            }
    };
    account(p.socle_layers);
    account(p.socle_layers_at_least);
    for (auto& [lab, k] : used)
        if (total.count(lab) && k > total.at(lab))
            rep.violations.push_back({"socle data", "L(" + lab + ")", "socle layers exceed the composition multiplicity"});
    if (auto it = p.socle_layers.find(0); it != p.socle_layers.end())
        for (auto& [lab, k] : it->second)
            if (!delta_mults.count(lab))
                rep.violations.push_back({"socle data", "soc", "L(" + lab + ") has no Delta-factor of its own index"});

    // Non-rigidity witness.
    ++rep.checks_run;
    const std::string& x = p.witness_factor;
    if (x.empty()) return rep;
    auto count_in = [&](const Layer& l) { return l.count(x) ? l.at(x) : 0; };
    auto soc_power_bound = [&](int j) {
        int c = 0;
        for (auto& src : {&p.socle_layers, &p.socle_layers_at_least})
            for (auto& [k, l] : *src)
                if (k < j) c += count_in(l);
        if (auto it = p.witness_socle_power_counts.find(j); it != p.witness_socle_power_counts.end())
            c = std::max(c, it->second);
        return c;
    };
    int k = p.witness_radical_power;
    int j = p.witness_socle_power;
    if (p.witness_socle_power_counts.empty()) {
        // rad^{ll-1} T lies in rad(soc^2 T); if soc^2 T = soc^2 Delta = rad Delta
        // then it lies in rad^2 Delta, which must be compared with soc T.
        bool ok = weyl_soc && weyl_rad && weyl_soc->loewy_length() == 3 && k == p.loewy_length - 1 && j == 1;
        if (ok) {
            const auto& ws = weyl_soc->layers;
            const auto& wr = weyl_rad->layers;
            ok = p.socle_layers.count(0) && p.socle_layers.count(1) && p.socle_layers.at(0) == ws[2] &&
                 p.socle_layers.at(1) == ws[1];
            Layer soc2 = ws[1], rad1 = wr[1];
            for (auto& [lab, m] : ws[2]) soc2[lab] += m;
            for (auto& [lab, m] : wr[2]) rad1[lab] += m;
            ok = ok && soc2 == rad1;
            const Layer& bottom = wr[2];
            const Layer& soc = p.socle_layers.at(0);
            bool strict = count_in(bottom) < count_in(soc);
            for (auto& [lab, m] : bottom)
                if (!soc.count(lab) || soc.at(lab) < m) strict = false;
            ok = ok && strict;
        }
        if (!ok) rep.violations.push_back({"witness", "L(" + x + ")", "rad^" + std::to_string(k) + " inside soc is not strict"});
        return rep;
    }
    int t = total.count(x) ? total.at(x) : 0;
    int rad_upper = t - soc_power_bound(k);
    int soc_lower = soc_power_bound(j);
    if (k + j != p.loewy_length || rad_upper >= soc_lower)
        rep.violations.push_back({"witness", "L(" + x + ")",
                                  "[rad^" + std::to_string(k) + "] <= " + std::to_string(rad_upper) + " does not separate from [soc^" +
                                      std::to_string(j) + "] >= " + std::to_string(soc_lower)});
    return rep;
}

DeltaCharacter LoewySolver::simple_character(const Alcove& a) const {
    DeltaCharacter out{{a, 1}};
    for (auto& [b, m] : weyl_factors(a)) {
        if (b == a || m == 0) continue;
        for (auto& [c, k] : simple_character(b)) out[c] -= m * k;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

DeltaCharacter LoewySolver::wall_cross_character(const DeltaCharacter& ch, int s) const {
    const auto& g = geometry();
    DeltaCharacter out;
    for (auto& [a, c] : ch) {
        Alcove as = g.reflect(a, s);
        // Outside the dominant chamber the Euler character of As is -ch(A).
        if (!g.is_dominant(as)) continue;
        out[a] += c;
        out[as] += c;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

}  // namespace loewy
