#include "loewy/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace loewy {

LaurentPoly LaurentPoly::monomial(int exponent, Coeff c) {
    LaurentPoly p;
    p.add_term(exponent, c);
    return p;
}

LaurentPoly::Coeff LaurentPoly::coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? 0 : it->second;
}

void LaurentPoly::add_term(int exponent, Coeff c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int LaurentPoly::min_exponent() const {
    if (terms_.empty()) throw std::logic_error("min_exponent of zero polynomial");
    return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
    if (terms_.empty()) throw std::logic_error("max_exponent of zero polynomial");
    return terms_.rbegin()->first;
}

LaurentPoly::Coeff LaurentPoly::eval_at_one() const {
    Coeff s = 0;
    for (auto& [e, c] : terms_) s += c;
    return s;
}

LaurentPoly LaurentPoly::negate_variable() const {
    LaurentPoly r;
    for (auto& [e, c] : terms_) r.terms_[e] = (e % 2 == 0) ? c : -c;
    return r;
}

LaurentPoly LaurentPoly::bar() const {
    LaurentPoly r;
    for (auto& [e, c] : terms_) r.terms_[-e] = c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(Coeff k) {
    if (k == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (auto& [e1, c1] : a.terms_)
        for (auto& [e2, c2] : b.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        auto [e, c] = *it;
        Coeff a = c < 0 ? -c : c;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << a;
            continue;
        }
        if (a != 1) os << a;
        os << 'v';
        if (e != 1) os << '^' << e;
    }
    return os.str();
}

}  // namespace loewy
