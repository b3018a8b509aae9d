#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace loewy {

// Integer Laurent polynomial in v. Zero coefficients are never stored.
class LaurentPoly {
public:
    using Coeff = std::int64_t;

    LaurentPoly() = default;
    static LaurentPoly monomial(int exponent, Coeff c = 1);
    static LaurentPoly constant(Coeff c) { return monomial(0, c); }

    Coeff coeff(int exponent) const;
    void add_term(int exponent, Coeff c);

    bool is_zero() const { return terms_.empty(); }
    int min_exponent() const;
    int max_exponent() const;
    Coeff eval_at_one() const;

    // v -> -v
    LaurentPoly negate_variable() const;
    // v -> v^{-1}
    LaurentPoly bar() const;

    const std::map<int, Coeff>& terms() const { return terms_; }

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(Coeff c);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, Coeff c) { return a *= c; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

    std::string str() const;

private:
    std::map<int, Coeff> terms_;
};

}  // namespace loewy
