#include <doctest.h>

#include <thread>

#include "loewy/errors.hpp"
#include "support.hpp"

using namespace loewy;
using loewy::testing::diagram;
using loewy::testing::filtration;
using loewy::testing::Quantum;

namespace {

bool has_violation(const ValidationReport& r, const std::string& check) {
    for (auto& v : r.violations)
        if (v.check == check) return true;
    return false;
}

ValidationContext weyl_ctx(const Alcove& a) { return {a, ModuleKind::weyl, -1}; }
ValidationContext tilting_ctx(const Alcove& a) { return {a, ModuleKind::tilting, -1}; }

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("B2 Weyl modules 1-12 match the worked diagrams") {
    Quantum q;
    for (int r = 1; r <= 12; ++r) {
        CAPTURE(r);
        std::string id = "B2.l5.delta." + std::to_string(r);
        Alcove a = q(r);
        CHECK(q.solver->weyl_parity_layers(a).layers == diagram(id + ".parity").layers);
        SeriesResult soc = q.solver->weyl_socle_series(a);
        SeriesResult rad = q.solver->weyl_radical_series(a);
        REQUIRE(soc.determined());
        REQUIRE(rad.determined());
        CHECK(soc.diagram->layers == diagram(id + ".socle").layers);
        CHECK(rad.diagram->layers == diagram(id + ".radical").layers);
        CHECK(rigidity_check(*rad.diagram, *soc.diagram).is_rigid == (r != 12));
    }
}

TEST_CASE("delta(12): radical and socle series differ in the bottom two layers") {
    Quantum q;
    auto rad = *q.solver->weyl_radical_series(q(12)).diagram;
    auto soc = *q.solver->weyl_socle_series(q(12)).diagram;
    RigidityReport r = rigidity_check(rad, soc);
    CHECK_FALSE(r.is_rigid);
    CHECK(r.loewy_length == 4);
    REQUIRE(r.witness);
    CHECK(r.witness->factor == "1");
    CHECK(rad.layers[2].count("1"));
    CHECK(soc.layers[3].count("1"));
}

TEST_CASE("invariants on the first 40 B2 alcoves") {
    Quantum q;
    for (auto& a : q.geo().enumerate_dominant(40)) {
        CAPTURE(q.name(a));
        LayerDiagram p = q.solver->weyl_parity_layers(a);
        ValidationReport rep = q.solver->validate_diagram(p, weyl_ctx(a));
        CHECK_MESSAGE(rep.ok(), rep.violations.front().message);
        SeriesResult soc = q.solver->weyl_socle_series(a);
        REQUIRE_MESSAGE(soc.determined(), soc.reason);
        CHECK(soc.diagram->total() == p.total());
        CHECK(q.solver->validate_diagram(*soc.diagram, weyl_ctx(a)).ok());
        // Head and socle positions.
        CHECK(soc.diagram->layers.front() == Layer{{q.name(a), 1}});
        Layer total = p.total();
        std::int64_t n = 0;
        for (auto& [b, m] : q.solver->weyl_factors(a)) {
            n += m;
            CHECK(total[q.name(b)] == m);
        }
        std::int64_t sum = 0;
        for (auto& [lab, m] : total) sum += m;
        CHECK(sum == n);
    }
}

TEST_CASE("parity diagrams have Loewy length N+1 exactly on the deep alcoves") {
    Quantum q;
    const int n = q.geo().root_datum().num_positive_roots();
    for (auto& a : q.geo().enumerate_dominant_up_to(12)) {
        CAPTURE(q.name(a));
        int len = q.solver->weyl_socle_series(a).diagram->loewy_length();
        if (q.geo().in_A_plusplus(a))
            CHECK(len == n + 1);
        else
            CHECK(len < n + 1);
        CHECK(len <= 2 * n + 1);
    }
}

TEST_CASE("labels 9 and 12 are the B2 alcoves with non-simple socle") {
    Quantum q;
    for (int r = 1; r <= 12; ++r) CHECK(q.solver->simple_head_table(q(r)) == (r != 9 && r != 12));
    Quantum a2("A2", 5);
    for (auto& a : a2.geo().enumerate_dominant(20)) CHECK(a2.solver->simple_head_table(a));
}

TEST_CASE("G2 has no simple-head table and every series is undetermined") {
    Quantum q("G2", 7);
    for (auto& a : q.geo().enumerate_dominant(6)) {
        CHECK_THROWS_AS(q.solver->simple_head_table(a), DomainError);
        SeriesResult r = q.solver->weyl_socle_series(a);
        CHECK_FALSE(r.determined());
        CHECK_FALSE(r.reason.empty());
    }
}

TEST_CASE("A2: first 20 alcoves are rigid") {
    Quantum q("A2", 5);
    for (auto& a : q.geo().enumerate_dominant(20)) {
        SeriesResult soc = q.solver->weyl_socle_series(a), rad = q.solver->weyl_radical_series(a);
        REQUIRE(soc.determined());
        REQUIRE(rad.determined());
        CHECK(rigidity_check(*rad.diagram, *soc.diagram).is_rigid);
        CHECK(q.solver->validate_diagram(q.solver->weyl_parity_layers(a), weyl_ctx(a)).ok());
    }
}

TEST_CASE("socle of delta(nu-orbit) at a special point") {
    Quantum q;
    const auto& g = q.geo();
    Weight nu = 9 * g.root_datum().rho();
    auto star = g.special_point_star(nu);
    REQUIRE(star.size() == 8);
    Alcove bottom;
    for (auto& [a, len] : star)
        if (len == 0) bottom = a;
    for (auto& [a, len] : star) {
        auto rad = q.solver->weyl_radical_series(a);
        REQUIRE(rad.determined());
        for (int j = 1; j <= rad.diagram->loewy_length(); ++j) {
            const Layer& layer = rad.diagram->layers[j - 1];
            auto it = layer.find(q.name(bottom));
            int seen = it == layer.end() ? 0 : it->second;
            CHECK(seen == q.solver->special_point_socle_mult(a, nu, j));
        }
    }
    CHECK_THROWS_AS(q.solver->special_point_socle_mult(star.front().first, g.root_datum().rho(), 1), DomainError);
}

TEST_CASE("negative validation cases") {
    Quantum q;
    Alcove a7 = q(7);
    LayerDiagram good = diagram("B2.l5.delta.7.socle");
    REQUIRE(q.solver->validate_diagram(good, weyl_ctx(a7)).ok());

    SUBCASE("missing factor") {
        LayerDiagram d = good;
        d.layers[1].erase("4");
        CHECK(has_violation(q.solver->validate_diagram(d, weyl_ctx(a7)), "sum rule"));
    }
    SUBCASE("wrong parity") {
        LayerDiagram d = diagram("B2.l5.delta.7.parity");
        std::swap(d.layers[1], d.layers[2]);
        CHECK(has_violation(q.solver->validate_diagram(d, weyl_ctx(a7)), "parity"));
    }
    SUBCASE("empty layer") {
        LayerDiagram d = good;
        d.layers.insert(d.layers.begin() + 1, Layer{});
        CHECK(has_violation(q.solver->validate_diagram(d, weyl_ctx(a7)), "layers"));
    }
    SUBCASE("factor extending nothing below it") {
        LayerDiagram d = good;
        d.layers[0]["4"] = 1;
        d.layers[1].erase("4");
        CHECK(has_violation(q.solver->validate_diagram(d, weyl_ctx(a7)), "ext adjacency"));
    }
    SUBCASE("tilting diagram that is not palindromic") {
        LayerDiagram t = diagram("B2.l5.tilting.7.socle");
        REQUIRE(q.solver->validate_diagram(t, tilting_ctx(a7)).ok());
        auto moved = t.layers[1].begin()->first;
        if (--t.layers[1][moved] == 0) t.layers[1].erase(moved);
        t.layers[2][moved] += 1;
        CHECK(has_violation(q.solver->validate_diagram(t, tilting_ctx(a7)), "self-duality"));
    }
    SUBCASE("too many layers") {
        LayerDiagram d = good;
        for (int i = 0; i < 7; ++i) d.layers.push_back(Layer{{"1", 1}});
        CHECK(has_violation(q.solver->validate_diagram(d, weyl_ctx(a7)), "length bound"));
    }
    SUBCASE("Delta-filtration with the wrong bottom") {
        FiltrationDiagram f = filtration("B2.l5.tilting.7.delta_filtration");
        REQUIRE(q.solver->validate_filtration(f, tilting_ctx(a7)).ok());
        std::swap(f.groups.front(), f.groups.back());
        CHECK(has_violation(q.solver->validate_filtration(f, tilting_ctx(a7)), "filtration ends"));
    }
    SUBCASE("Delta-filtration missing a box") {
        FiltrationDiagram f = filtration("B2.l5.tilting.7.delta_filtration");
        f.groups.erase(f.groups.begin());
        CHECK(has_violation(q.solver->validate_filtration(f, tilting_ctx(a7)), "Delta-filtration sum"));
    }
    SUBCASE("weakened non-rigidity witness") {
        PartialTilting p = io::partial_from_json(testing::fixture("B2.l5.tilting.12.partial").payload, *q.solver);
        REQUIRE(q.solver->validate_partial(p).ok());
        p.witness_socle_power_counts[p.witness_socle_power] = 0;
        p.socle_layers_at_least.clear();
        CHECK(has_violation(q.solver->validate_partial(p), "witness"));
    }
    SUBCASE("socle factor without its own Delta-factor") {
        PartialTilting p = io::partial_from_json(testing::fixture("B2.l5.tilting.12.partial").payload, *q.solver);
        p.socle_layers[0]["11"] = 1;
        CHECK(has_violation(q.solver->validate_partial(p), "socle data"));
    }
}

TEST_CASE("tilting modules T1-T8 from the shift-sum") {
    Quantum q;
    for (int r = 1; r <= 8; ++r) {
        CAPTURE(r);
        LayerDiagram t = q.solver->projective_tilting_layers(q(r));
        CHECK(t.layers == diagram("B2.l5.tilting." + std::to_string(r) + ".socle").layers);
        CHECK(t.palindromic());
        CHECK(q.solver->validate_diagram(t, tilting_ctx(q(r))).ok());
        Layer want = testing::as_layer(q.solver->tilting_factors(q(r)), *q.solver);
        CHECK(t.total() == want);
    }
    for (int r : {9, 10, 11, 12}) CHECK_THROWS_AS(q.solver->projective_tilting_layers(q(r)), DomainError);
}

TEST_CASE("projective tilting modules have 2N+1 layers") {
    Quantum q;
    const auto& g = q.geo();
    const auto& rd = g.root_datum();
    int n = rd.num_positive_roots();
    int found = 0;
    for (auto& lam : {Weight({0, 0}), Weight({1, 0}), Weight({0, 1}), Weight({2, 1})}) {
        if (!g.is_regular(lam)) continue;
        Alcove a = g.alcove_of(g.tilde(lam));
        REQUIRE(q.solver->is_projective_tilting(a));
        LayerDiagram t = q.solver->projective_tilting_layers(a);
        CHECK(t.loewy_length() == 2 * n + 1);
        CHECK(t.palindromic());
        CHECK(t.layers.front() == t.layers.back());
        CHECK(t.layers.back().size() == 1);
        ++found;
    }
    CHECK(found > 0);
    CHECK_FALSE(q.solver->is_projective_tilting(q(7)));
}

TEST_CASE("wall-crossing characters") {
    Quantum q;
    DeltaCharacter d7{{q(7), 1}};
    CHECK(q.solver->wall_cross_character(d7, 2) == DeltaCharacter{{q(7), 1}, {q(9), 1}});
    // Crossing out of the dominant chamber kills the character.
    CHECK(q.solver->wall_cross_character(DeltaCharacter{{q(1), 1}}, 1).empty());

    // theta_s T(12) = T(12 s) + T(9) on characters.
    auto tilting_ch = [&](const Alcove& a) {
        DeltaCharacter ch;
        for (auto& [b, m] : q.kl->tilting_delta_mults(a)) ch[b] += m;
        return ch;
    };
    Alcove up = q.geo().reflect(q(12), 2);
    DeltaCharacter lhs = q.solver->wall_cross_character(tilting_ch(q(12)), 2);
    DeltaCharacter rhs = tilting_ch(up);
    for (auto& [b, m] : tilting_ch(q(9))) rhs[b] += m;
    CHECK(lhs == rhs);
}

TEST_CASE("singular Weyl module delta(9') is not rigid") {
    Quantum q;
    auto [rad, soc] = q.solver->singular_weyl_series(q(9), 0);
    REQUIRE(rad.determined());
    REQUIRE(soc.determined());
    CHECK(rad.diagram->layers == diagram("B2.l5.delta.9'.radical").layers);
    CHECK(soc.diagram->layers == diagram("B2.l5.delta.9'.socle").layers);
    CHECK_FALSE(rigidity_check(*rad.diagram, *soc.diagram).is_rigid);
    CHECK(q.solver->validate_diagram(*soc.diagram, ValidationContext{q(9), ModuleKind::weyl, 0}).ok());

    // L(1) dies on the s0-wall.
    CHECK_FALSE(q.solver->survives_translation(q(2), 0));
    auto [r2, s2] = q.solver->singular_weyl_series(q(2), 0);
    CHECK_FALSE(r2.determined());
}

TEST_CASE("wall points lie on exactly one wall of the bottom alcove") {
    Quantum q;
    const auto& g = q.geo();
    for (int s = 0; s < g.num_generators(); ++s) {
        Weight w = q.solver->wall_point(s);
        FacetClass f = g.classify_weight(w);
        CHECK(f.kind == FacetKind::wall);
        CHECK(g.closure_contains(g.bottom(), w));
        CHECK(g.reflect(g.bottom(), s) != g.bottom());
    }
}

TEST_CASE("partial tilting data") {
    Quantum q;
    for (auto* id : {"B2.l5.tilting.12.partial", "B2.l5.tilting.9'.partial"}) {
        CAPTURE(id);
        PartialTilting p = io::partial_from_json(testing::fixture(id).payload, *q.solver);
        ValidationReport rep = q.solver->validate_partial(p);
        CHECK(rep.ok());
        CHECK(rep.checks_run >= 4);
    }
}

TEST_CASE("concurrent series computations agree") {
    Quantum q;
    auto alcoves = q.geo().enumerate_dominant(30);
    const size_t n = alcoves.size();
    std::vector<std::vector<LayerDiagram>> results(4, std::vector<LayerDiagram>(n));
    std::vector<std::thread> threads;
    for (size_t t = 0; t < 4; ++t)
        threads.emplace_back([&, t] {
            for (size_t i = 0; i < n; ++i) {
                size_t k = (i + 7 * t) % n;
                results[t][k] = *q.solver->weyl_socle_series(alcoves[k]).diagram;
            }
        });
    for (auto& th : threads) th.join();
    for (size_t t = 1; t < 4; ++t) CHECK(results[t] == results[0]);
}

}  // TEST_SUITE
