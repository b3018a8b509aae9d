#include <doctest.h>

#include <algorithm>
#include <thread>

#include "loewy/kl.hpp"
#include "support.hpp"

using namespace loewy;
using loewy::testing::Quantum;

namespace {

LaurentPoly v(int e) { return LaurentPoly::monomial(e); }

}  // namespace

TEST_SUITE("kl") {

TEST_CASE("memoized and naive recursions agree on the first B2 alcoves") {
    AlcoveGeometry g(RootDatum::build("B2"), 5);
    KLEngine kl(g);
    for (auto& a : g.enumerate_dominant(12))
        for (auto m : {HeckeModule::spherical, HeckeModule::antispherical})
            REQUIRE_MESSAGE(kl.canonical(m, a) == naive_canonical(g, m, a), a.key());
}

TEST_CASE("affine A1: spherical polynomials are v^d, antispherical ones have two terms") {
    AlcoveGeometry g(RootDatum::build("A1"), 3);
    KLEngine kl(g);
    auto alcoves = g.enumerate_dominant(11);
    for (auto& a : alcoves) {
        for (auto& b : alcoves) {
            if (g.height(b) > g.height(a)) continue;
            int d = g.distance(a, b);
            CHECK(kl.kl_poly(b, a) == v(d));
            CHECK(kl.tilting_poly(b, a) == (d <= 1 ? v(d) : LaurentPoly{}));
        }
        CHECK(kl.tilting_delta_mults(a).size() == static_cast<size_t>(std::min(g.height(a) + 1, 2)));
    }
}

TEST_CASE("degree and parity bounds") {
    Quantum q;
    const auto& g = q.geo();
    auto alcoves = g.enumerate_dominant(40);
    for (auto& a : alcoves)
        for (auto& b : alcoves) {
            int d = g.distance(a, b);
            LaurentPoly m = q.kl->kl_poly(b, a), n = q.kl->tilting_poly(b, a);
            for (auto& [e, c] : m.terms()) {
                CHECK(e <= d);
                CHECK((d - e) % 2 == 0);
            }
            if (a == b) {
                CHECK(n == v(0));
                continue;
            }
            for (auto& [e, c] : n.terms()) {
                CHECK(e >= 1);
                CHECK(c > 0);
                CHECK((d - e) % 2 == 0);
            }
            if (!n.is_zero()) CHECK(q.kl->linked_below(b, a));
            CHECK(q.kl->graded_decomposition(b, a).eval_at_one() == q.kl->decomposition_mult(a, b));
            if (d % 2 == 0) CHECK(q.kl->ext1_dim(b, a) == 0);
        }
}

TEST_CASE("B2 composition factors and tilting multiplicities match the corpus") {
    Quantum q;
    for (int i = 1; i <= 12; ++i) {
        std::string id = "B2.l5.delta." + std::to_string(i) + ".parity";
        CHECK(loewy::testing::as_layer(q.solver->weyl_factors(q(i)), *q.solver) == loewy::testing::diagram(id).total());
    }
    for (int i : {2, 3, 4, 5, 6, 7, 9, 12}) {
        std::map<Alcove, std::int64_t> m;
        for (auto& [b, k] : q.kl->tilting_delta_mults(q(i))) m[b] = k;
        std::string id = "B2.l5.tilting." + std::to_string(i) + ".delta_filtration";
        CHECK(loewy::testing::as_layer(m, *q.solver) == loewy::testing::filtration(id).total());
    }
    CHECK(q.kl->mu(q(1), q(4)) == 0);
    CHECK(q.kl->mu(q(3), q(5)) == 1);
    CHECK(q.kl->ext1_dim(q(2), q(9)) == 0);
}

TEST_CASE("concurrent lookups see complete polynomials") {
    AlcoveGeometry g(RootDatum::build("B2"), 5);
    auto alcoves = g.enumerate_dominant(60);
    KLEngine serial(g), shared(g);
    std::vector<AlcovePolys> expected;
    for (auto& a : alcoves) expected.push_back(serial.canonical(HeckeModule::antispherical, a));
    std::vector<std::thread> pool;
    std::vector<int> bad(4, 0);
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            for (size_t k = 0; k < alcoves.size(); ++k) {
                size_t i = (k * 7 + t * 13) % alcoves.size();
                if (shared.canonical(HeckeModule::antispherical, alcoves[i]) != expected[i]) ++bad[t];
            }
        });
    for (auto& th : pool) th.join();
    CHECK(bad == std::vector<int>(4, 0));
    CHECK(shared.memo_size() >= alcoves.size());
}

}
