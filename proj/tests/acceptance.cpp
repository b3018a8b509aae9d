// One line per acceptance criterion; exits non-zero if any criterion fails.
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "support.hpp"

using namespace loewy;
using loewy::testing::diagram;
using loewy::testing::fixture;
using loewy::testing::Quantum;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream note;
    int checks = 0;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && pass) note << what;
        if (!ok) pass = false;
    }
};

const Quantum& b2() {
    static const Quantum q;
    return q;
}

Weight zero(int rank) { return Weight::zero(rank); }

std::vector<Alcove> projective_alcoves(const AlcoveGeometry& g) {
    std::vector<Alcove> out;
    for (auto& lam : oracles::dominant_box(g.root_datum().rank(), g.level() - 1))
        if (g.is_regular(lam)) out.push_back(g.alcove_of(g.tilde(lam)));
    return out;
}

bool rigid(const LayerDiagram& rad, const LayerDiagram& soc) { return rigidity_check(rad, soc).is_rigid; }

// Criterion 1.
void weyl_diagrams(Outcome& o) {
    for (int l : {5, 7}) {
        Quantum q("B2", l);
        for (int r = 1; r <= 12; ++r) {
            std::string id = "B2.l5.delta." + std::to_string(r), at = " (l=" + std::to_string(l) + ", " + id + ")";
            Alcove a = q(r);
            o.expect(q.solver->weyl_parity_layers(a).layers == diagram(id + ".parity").layers, "parity" + at);
            SeriesResult soc = q.solver->weyl_socle_series(a), rad = q.solver->weyl_radical_series(a);
            o.expect(soc.determined() && soc.diagram->layers == diagram(id + ".socle").layers, "socle" + at);
            o.expect(rad.determined() && rad.diagram->layers == diagram(id + ".radical").layers, "radical" + at);
        }
    }
    o.expect(diagram("B2.l5.delta.12.socle").layers != diagram("B2.l5.delta.12.radical").layers,
             "delta(12) series coincide");
}

// Criterion 2.
void tilting_diagrams(Outcome& o) {
    const Quantum& q = b2();
    for (int r : {7, 8})
        o.expect(q.solver->projective_tilting_layers(q(r)).layers ==
                     diagram("B2.l5.tilting." + std::to_string(r) + ".socle").layers,
                 "T(" + std::to_string(r) + ") shift-sum");
    ValidationReport t9 =
        q.solver->validate_diagram(diagram("B2.l5.tilting.9.socle"), ValidationContext{q(9), ModuleKind::tilting, -1});
    o.expect(t9.ok() && t9.checks_run > 0, "T(9) fixture");
    for (auto* id : {"B2.l5.tilting.12.partial", "B2.l5.tilting.9'.partial"}) {
        ValidationReport r = q.solver->validate_partial(io::partial_from_json(fixture(id).payload, *q.solver));
        o.expect(r.ok() && r.checks_run > 0, id);
    }
}

// Criterion 3.
void rigidity_verdicts(Outcome& o) {
    const Quantum& q = b2();
    for (int r = 1; r <= 12; ++r) {
        auto soc = q.solver->weyl_socle_series(q(r)), rad = q.solver->weyl_radical_series(q(r));
        o.expect(soc.determined() && rad.determined() && rigid(*rad.diagram, *soc.diagram) == (r != 12),
                 "delta(" + std::to_string(r) + ")");
    }
    // Tilting modules are self-dual: the radical series is the socle series reversed.
    for (int r = 1; r <= 9; ++r) {
        LayerDiagram soc = r <= 8 ? q.solver->projective_tilting_layers(q(r)) : diagram("B2.l5.tilting.9.socle");
        o.expect(rigid(soc.reversed(), soc), "T(" + std::to_string(r) + ")");
    }
    for (auto* id : {"B2.l5.tilting.12.partial", "B2.l5.tilting.9'.partial"}) {
        PartialTilting p = io::partial_from_json(fixture(id).payload, *q.solver);
        o.expect(!p.witness_factor.empty() && q.solver->validate_partial(p).ok(), std::string(id) + " witness");
    }
    auto [rad, soc] = q.solver->singular_weyl_series(q(9), 0);
    o.expect(rad.determined() && soc.determined() && !rigid(*rad.diagram, *soc.diagram), "delta(9')");
}

// Criterion 4.
void loewy_length_laws(Outcome& o) {
    const Quantum& q = b2();
    const auto& g = q.geo();
    int n = g.root_datum().num_positive_roots();
    for (auto& a : g.enumerate_dominant_up_to(12)) {
        auto soc = q.solver->weyl_socle_series(a);
        if (!soc.determined()) {
            o.expect(false, "undetermined " + q.name(a));
            continue;
        }
        int len = soc.diagram->loewy_length();
        o.expect(g.in_A_plusplus(a) ? len == n + 1 : len < n + 1, "length law at " + q.name(a));
        o.expect(len <= 2 * n + 1, "length bound at " + q.name(a));
    }
    for (auto& a : projective_alcoves(g)) {
        LayerDiagram t = q.solver->projective_tilting_layers(a);
        o.expect(t.loewy_length() == 2 * n + 1, "projective T(" + q.name(a) + ")");
    }
    for (int r = 1; r <= 8; ++r)
        o.expect(q.solver->projective_tilting_layers(q(r)).loewy_length() <= 2 * n + 1, "T bound");
}

// Criterion 5.
void special_point(Outcome& o) {
    const Quantum& q = b2();
    const auto& g = q.geo();
    const int l = g.level();
    Weight nu = (l - 1) * g.root_datum().rho() + l * g.root_datum().rho();
    auto star = g.special_point_star(nu);
    o.expect(static_cast<int>(star.size()) == static_cast<int>(g.root_datum().weyl_group().size()), "star size");
    std::string bottom;
    for (auto& [a, len] : star)
        if (len == 0) bottom = q.name(a);
    for (auto& [a, len] : star) {
        auto rad = q.solver->weyl_radical_series(a);
        if (!rad.determined()) {
            o.expect(false, "undetermined " + q.name(a));
            continue;
        }
        // soc_j of nabla(A) is the dual of the j-th radical layer of Delta(A).
        for (int j = 1; j <= rad.diagram->loewy_length(); ++j) {
            const Layer& layer = rad.diagram->layers[j - 1];
            int seen = layer.count(bottom) ? layer.at(bottom) : 0;
            o.expect(seen == q.solver->special_point_socle_mult(a, nu, j),
                     "A=" + q.name(a) + ", j=" + std::to_string(j));
        }
    }
}

// Criterion 6.
void a2_quantum(Outcome& o) {
    Quantum q("A2", 5);
    for (auto& a : q.geo().enumerate_dominant(20)) {
        auto soc = q.solver->weyl_socle_series(a), rad = q.solver->weyl_radical_series(a);
        o.expect(soc.determined() && rad.determined(), "undetermined " + q.name(a));
        if (!soc.determined() || !rad.determined()) continue;
        o.expect(rigid(*rad.diagram, *soc.diagram), "rigidity at " + q.name(a));
        ValidationContext ctx{a, ModuleKind::weyl, -1};
        o.expect(q.solver->validate_diagram(q.solver->weyl_parity_layers(a), ctx).ok(), "parity at " + q.name(a));
        o.expect(q.solver->validate_diagram(*soc.diagram, ctx).ok(), "sum rule at " + q.name(a));
    }
}

// Criterion 7.
void sl3_modular(Outcome& o) {
    for (int p : {3, 5, 7, 11}) {
        auto m = testing::modular(p);
        LayerDiagram t = m->table();
        LayerDiagram want = diagram("A2.p" + std::to_string(p) + ".tilting.lambda_star.socle");
        o.expect(t.layers == want.layers && t.blocks == want.blocks, "table at p=" + std::to_string(p));
        o.expect(!m->nonrigidity_certificate().is_rigid, "certificate at p=" + std::to_string(p));
    }
    auto m5 = testing::modular(5);
    for (auto& layer : m5->table().layers)
        o.expect(!layer.count("16") && !layer.count("19"), "dropped labels at p=5");
}

// Criterion 8.
void oracle_equivalences(Outcome& o) {
    {
        const auto& g = b2().geo();
        std::mt19937 rng(17);
        for (int i = 0; i < 500; ++i) {
            Alcove a = oracles::random_alcove(g, rng, 12), b = oracles::random_alcove(g, rng, 12);
            o.expect(g.distance(a, b) == oracles::gallery_distance(g, a, b), "distance " + a.key() + " " + b.key());
        }
    }
    {
        AlcoveGeometry g(RootDatum::build("B2"), 5);
        KLEngine kl(g);
        for (auto& a : g.enumerate_dominant(12))
            for (auto m : {HeckeModule::spherical, HeckeModule::antispherical})
                o.expect(kl.canonical(m, a) == naive_canonical(g, m, a), "KL at " + a.key());
    }
    for (const char* t : {"A2", "B2", "G2"}) {
        RootDatum rd = RootDatum::build(t);
        oracles::Kostant k{rd, {}};
        for (auto& lambda : oracles::dominant_box(rd.rank(), 6)) {
            Character ch = rd.weyl_character(lambda);
            for (auto& [mu, m] : ch.support())
                if (mu.is_dominant()) o.expect(m == k.multiplicity(lambda, mu), std::string(t) + " " + lambda.str());
        }
    }
    {
        AlcoveGeometry g(RootDatum::build("A1"), 3);
        KLEngine kl(g);
        auto alcoves = g.enumerate_dominant(11);
        for (auto& a : alcoves)
            for (auto& b : alcoves)
                if (g.height(b) <= g.height(a))
                    o.expect(kl.kl_poly(b, a) == LaurentPoly::monomial(g.distance(a, b)), "A1 at " + a.key());
    }
}

// Criterion 9.
void conservation(Outcome& o) {
    auto weyl = [&](const Quantum& q, const Alcove& a) {
        Layer want;
        for (auto& [b, p] : q.kl->inverse_column(a))
            if (std::int64_t m = q.kl->graded_decomposition(b, a).eval_at_one()) want[q.name(b)] += static_cast<int>(m);
        auto soc = q.solver->weyl_socle_series(a), rad = q.solver->weyl_radical_series(a);
        o.expect(q.solver->weyl_parity_layers(a).total() == want, "parity total at " + q.name(a));
        if (soc.determined()) o.expect(soc.diagram->total() == want, "socle total at " + q.name(a));
        if (rad.determined()) o.expect(rad.diagram->total() == want, "radical total at " + q.name(a));
    };
    const Quantum& q = b2();
    const auto& g = q.geo();
    const auto& rd = g.root_datum();
    for (auto& a : g.enumerate_dominant_up_to(12)) weyl(q, a);
    Quantum a2("A2", 5);
    for (auto& a : a2.geo().enumerate_dominant(20)) weyl(a2, a);

    // Dimension of T computed from its layers and simple dimensions, against
    // the Delta-multiplicities and Weyl dimensions.
    auto dim_delta = [&](const Alcove& b) { return rd.weyl_dim(g.orbit_representative(zero(rd.rank()), b)); };
    auto dim_simple = [&](const Alcove& b) {
        std::int64_t d = 0;
        for (auto& [c, k] : q.solver->simple_character(b)) d += k * dim_delta(c);
        return d;
    };
    std::vector<Alcove> tiltings = projective_alcoves(g);
    for (int r = 1; r <= 8; ++r) tiltings.push_back(q(r));
    for (auto& a : tiltings) {
        LayerDiagram t = q.solver->projective_tilting_layers(a);
        std::int64_t lhs = 0, rhs = 0;
        for (auto& [lab, m] : t.total()) lhs += m * dim_simple(q(lab));
        for (auto& [b, m] : q.kl->tilting_delta_mults(a)) rhs += m * dim_delta(b);
        o.expect(lhs == rhs && lhs > 0, "dim T(" + q.name(a) + ")");
    }
    for (int p : {3, 5, 7, 11}) {
        auto [lhs, rhs] = testing::modular(p)->dimension_check();
        o.expect(lhs == rhs, "SL3 dimensions at p=" + std::to_string(p));
    }
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* title;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "B2 Weyl diagrams for labels 1-12", weyl_diagrams},
        {2, "B2 tilting diagrams and partial data", tilting_diagrams},
        {3, "rigidity verdicts", rigidity_verdicts},
        {4, "Loewy-length laws up to height 12", loewy_length_laws},
        {5, "special-point socle pattern", special_point},
        {6, "A2 quantum: first 20 alcoves", a2_quantum},
        {7, "SL3 modular tables and certificates", sl3_modular},
        {8, "oracle equivalences", oracle_equivalences},
        {9, "conservation of multiplicities", conservation},
    };
    int failed = 0;
    for (auto& c : criteria) {
        Outcome o;
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << c.number << ": " << (o.pass ? "PASS" : "FAIL") << " (" << c.title << ", "
                  << o.checks << " checks";
        if (!o.pass) std::cout << "; first failure: " << o.note.str();
        std::cout << ")" << std::endl;
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
