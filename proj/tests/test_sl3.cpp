#include <doctest.h>

#include "loewy/errors.hpp"
#include "support.hpp"

using namespace loewy;
using loewy::testing::modular;

TEST_SUITE("sl3") {

TEST_CASE("modular parameters") {
    for (int p : {3, 5, 7, 11}) {
        auto m = modular(p);
        RootDatum rd = RootDatum::build("A2");
        CHECK(m->params().lambda_star == (p * (p - 1) / 2) * rd.rho());
        CHECK(m->params().nu == ((p - 3) / 2) * rd.rho());
    }
    for (int p : {1, 2, 4, 9, 15}) CHECK_THROWS_AS(make_modular_params(p, LabelMap{}), DomainError);
    CHECK(modular(5)->params().ignored == std::set<std::string>{"16", "19"});
    CHECK(modular(7)->params().ignored.empty());
}

TEST_CASE("Donkin factorization of lambda_star") {
    RootDatum rd = RootDatum::build("A2");
    for (int p : {3, 5, 7, 11}) {
        CAPTURE(p);
        auto [mu, nu] = donkin_factorize(rd, (p * (p - 1) / 2) * rd.rho(), p);
        CHECK(mu == (p - 2) * rd.rho());
        CHECK(nu == ((p - 3) / 2) * rd.rho());
    }
    // (p-1)rho + (a,b) + p(c,d) with 0 <= a,b < p.
    auto [mu, nu] = donkin_factorize(rd, Weight({4 + 1 + 10, 4 + 3 + 5}), 5);
    CHECK(nu == Weight({2, 1}));
    CHECK(mu == Weight({4 - 3, 4 - 1}));
    CHECK_THROWS_AS(donkin_factorize(rd, Weight({3, 7}), 5), DomainError);
}

TEST_CASE("Q((p-2)rho) has 2N+1 palindromic layers with simple socle") {
    for (int p : {3, 5, 7, 11}) {
        CAPTURE(p);
        auto m = modular(p);
        WeightLayers q = m->q_layers();
        REQUIRE(q.size() == 7);
        for (size_t i = 0; i < q.size(); ++i) CHECK(q[i] == q[q.size() - 1 - i]);
        RootDatum rd = RootDatum::build("A2");
        CHECK(q.front() == std::map<Weight, int>{{(p - 2) * rd.rho(), 1}});
    }
}

TEST_CASE("tabulated socle series of T(lambda_star)") {
    for (int p : {3, 5, 7, 11}) {
        CAPTURE(p);
        auto m = modular(p);
        LayerDiagram t = m->table();
        LayerDiagram want = testing::diagram("A2.p" + std::to_string(p) + ".tilting.lambda_star.socle");
        CHECK(t.layers == want.layers);
        CHECK(t.blocks == want.blocks);
        CHECK(t.palindromic());
        REQUIRE(t.blocks.size() == 1);
        CHECK(t.blocks.begin()->first == 3);
    }
}

TEST_CASE("ignored labels never appear at p = 5") {
    LayerDiagram t = modular(5)->table();
    for (auto& l : t.layers) {
        CHECK_FALSE(l.count("16"));
        CHECK_FALSE(l.count("19"));
    }
}

TEST_CASE("dimensions of the table add up") {
    for (int p : {3, 5, 7, 11}) {
        CAPTURE(p);
        auto [lhs, rhs] = modular(p)->dimension_check();
        CHECK(lhs == rhs);
        CHECK(lhs > 0);
    }
}

TEST_CASE("T(lambda_star) is not rigid") {
    for (int p : {3, 5, 7, 11}) {
        CAPTURE(p);
        auto m = modular(p);
        RigidityReport r = m->nonrigidity_certificate();
        CHECK_FALSE(r.is_rigid);
        CHECK(r.loewy_length == 7);
        REQUIRE(r.witness);
        CHECK(r.witness->factor == "1");
        CHECK(r.witness->radical_layer == 4);
        CHECK(r.witness->socle_layer == 2);
    }
}

TEST_CASE("characteristic 3 tensor identities") {
    RootDatum rd = RootDatum::build("A2");
    // L(w1) (x) L(w2) = Delta(rho) + Delta(0), the character of T(rho).
    std::map<Weight, std::int64_t> m;
    for (auto& [w, k] : rd.tensor_decompose(Weight({1, 0}), Weight({0, 1}))) m[w] += k;
    CHECK(m == std::map<Weight, std::int64_t>{{Weight({1, 1}), 1}, {Weight({0, 0}), 1}});

    AlcoveGeometry g(rd, 3);
    KLEngine kl(g);
    auto mults = kl.tilting_delta_mults(g.alcove_of(Weight({1, 1})));
    std::map<Weight, std::int64_t> tilting;
    for (auto& [b, k] : mults) tilting[g.orbit_representative(Weight({0, 0}), b)] += k;
    CHECK(tilting == m);
    CHECK(rd.weyl_dim(Weight({1, 1})) + 1 == 3 * 3);
}

}  // TEST_SUITE
