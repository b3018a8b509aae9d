#include <doctest.h>

#include "loewy/laurent.hpp"

using loewy::LaurentPoly;

namespace {

LaurentPoly v(int e, std::int64_t c = 1) { return LaurentPoly::monomial(e, c); }

}  // namespace

TEST_SUITE("laurent") {

TEST_CASE("arithmetic keeps no zero terms") {
    LaurentPoly a = v(1) + v(-1);
    LaurentPoly b = v(1) - v(-1);
    CHECK(a * b == v(2) - v(-2));
    CHECK((a - a).is_zero());
    CHECK((a - a).terms().empty());
    CHECK(a.coeff(0) == 0);
    CHECK(a.min_exponent() == -1);
    CHECK(a.max_exponent() == 1);
}

TEST_CASE("bar and sign twist") {
    LaurentPoly p = v(3, 2) + v(-1, -5) + v(0, 7);
    CHECK(p.bar() == v(-3, 2) + v(1, -5) + v(0, 7));
    CHECK(p.bar().bar() == p);
    CHECK(p.negate_variable() == v(3, -2) + v(-1, 5) + v(0, 7));
    CHECK(p.eval_at_one() == 4);
    CHECK((p * p.bar()).bar() == p * p.bar());
}

TEST_CASE("printing") {
    CHECK(LaurentPoly().str() == "0");
    CHECK(v(0, 3).eval_at_one() == 3);
    CHECK((v(2) - v(-2, 3) + v(0, 1)).str() == "v^2 + 1 - 3v^-2");
    CHECK((v(1, -1)).str() == "-v");
}

}
