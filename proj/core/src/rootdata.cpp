#include "loewy/rootdata.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace loewy {

using Rat = boost::rational<std::int64_t>;

Weight& Weight::operator+=(const Weight& o) {
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
}

Weight& Weight::operator-=(const Weight& o) {
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
}

Weight operator*(int k, Weight a) {
    for (auto& x : a.c) x *= k;
    return a;
}

Weight operator-(Weight a) {
    for (auto& x : a.c) x = -x;
    return a;
}

bool Weight::is_dominant() const {
    return std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
}

std::string Weight::str() const {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ')';
    return os.str();
}

void Character::add(const Weight& mu, Mult m) {
    if (m == 0) return;
    auto [it, inserted] = mult_.try_emplace(mu, m);
    if (!inserted) {
        it->second += m;
        if (it->second == 0) mult_.erase(it);
    }
}

Character::Mult Character::mult(const Weight& mu) const {
    auto it = mult_.find(mu);
    return it == mult_.end() ? 0 : it->second;
}

Character::Mult Character::dim() const {
    Mult s = 0;
    for (auto& [w, m] : mult_) s += m;
    return s;
}

Character& Character::operator+=(const Character& o) {
    for (auto& [w, m] : o.mult_) add(w, m);
    return *this;
}

Character& Character::operator-=(const Character& o) {
    for (auto& [w, m] : o.mult_) add(w, -m);
    return *this;
}

Character Character::scaled(Mult k) const {
    Character r;
    for (auto& [w, m] : mult_) r.add(w, m * k);
    return r;
}

Character Character::shifted(const Weight& by) const {
    Character r;
    for (auto& [w, m] : mult_) r.add(w + by, m);
    return r;
}

Character operator*(const Character& a, const Character& b) {
    Character r;
    for (auto& [w1, m1] : a.mult_)
        for (auto& [w2, m2] : b.mult_) r.add(w1 + w2, m1 * m2);
    return r;
}

namespace {

// Fraction-free determinant.
std::int64_t determinant(std::vector<std::vector<std::int64_t>> m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    std::int64_t sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

IntMatrix type_cartan(const std::string& name) {
    if (name.size() < 2) throw std::invalid_argument("unknown root system type: " + name);
    const char family = name[0];
    int n = 0;
    try {
        n = std::stoi(name.substr(1));
    } catch (...) {
        throw std::invalid_argument("unknown root system type: " + name);
    }
    if (n < 1 || n > 8) throw std::invalid_argument("unsupported rank in type: " + name);
    IntMatrix a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    switch (family) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            return a;
        case 'B':
            if (n < 2) break;
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            if (n == 2) {
                // alpha_1 short, alpha_2 long
                a[0][1] = -2;
                a[1][0] = -1;
            } else {
                a[n - 2][n - 1] = -1;
                a[n - 1][n - 2] = -2;
            }
            return a;
        case 'C':
            if (n < 2) break;
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            if (n == 2) {
                a[0][1] = -1;
                a[1][0] = -2;
            } else {
                a[n - 2][n - 1] = -2;
                a[n - 1][n - 2] = -1;
            }
            return a;
        case 'D':
            if (n < 4) break;
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
            link(n - 3, n - 1);
            return a;
        case 'G':
            if (n != 2) break;
            // alpha_1 short, alpha_2 long
            a[0][1] = -3;
            a[1][0] = -1;
            return a;
        case 'F':
            if (n != 4) break;
            link(0, 1);
            link(2, 3);
            a[1][2] = -2;
            a[2][1] = -1;
            return a;
        default:
            break;
    }
    throw std::invalid_argument("unknown root system type: " + name);
}

}  // namespace

RootDatum RootDatum::build(const std::string& type_name) {
    return from_cartan(type_cartan(type_name), type_name);
}

RootDatum RootDatum::from_cartan(const IntMatrix& cartan, const std::string& name) {
    RootDatum r;
    r.name_ = name;
    r.rank_ = static_cast<int>(cartan.size());
    r.cartan_ = cartan;
    r.init();
    return r;
}

void RootDatum::init() {
    const int n = rank_;
    if (n == 0) throw std::invalid_argument("empty Cartan matrix");
    for (auto& row : cartan_)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("Cartan matrix not square");
    for (int i = 0; i < n; ++i) {
        if (cartan_[i][i] != 2) throw std::invalid_argument("Cartan diagonal must be 2");
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (cartan_[i][j] > 0) throw std::invalid_argument("positive off-diagonal Cartan entry");
            if ((cartan_[i][j] == 0) != (cartan_[j][i] == 0))
                throw std::invalid_argument("Cartan matrix zero pattern not symmetric");
        }
    }

    // Symmetrizer by propagation along the Dynkin graph.
    std::vector<Rat> d(n, Rat(0));
    for (int start = 0; start < n; ++start) {
        if (d[start] != Rat(0)) continue;
        d[start] = Rat(1);
        std::deque<int> q{start};
        while (!q.empty()) {
            int i = q.front();
            q.pop_front();
            for (int j = 0; j < n; ++j) {
                if (i == j || cartan_[i][j] == 0) continue;
                Rat dj = d[i] * Rat(cartan_[i][j], cartan_[j][i]);
                if (d[j] == Rat(0)) {
                    d[j] = dj;
                    q.push_back(j);
                } else if (d[j] != dj) {
                    throw std::invalid_argument("Cartan matrix is not symmetrizable");
                }
            }
        }
    }
    std::int64_t lcm = 1;
    for (auto& x : d) lcm = std::lcm(lcm, x.denominator());
    d_.assign(n, 0);
    std::int64_t g = 0;
    for (int i = 0; i < n; ++i) {
        d_[i] = static_cast<int>((d[i] * lcm).numerator());
        g = std::gcd(g, static_cast<std::int64_t>(d_[i]));
    }
    for (auto& x : d_) x = static_cast<int>(x / g);

    // Finite type: the symmetrized matrix must be positive definite.
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m[i][j] = static_cast<std::int64_t>(d_[i]) * cartan_[i][j];
        if (determinant(m) <= 0) throw std::invalid_argument("Cartan matrix is not of finite type");
    }

    // Adjugate and determinant of the Cartan matrix.
    std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = cartan_[i][j];
    det_ = determinant(a);
    adj_.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<std::vector<std::int64_t>> minor;
            for (int r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<std::int64_t> row;
                for (int c = 0; c < n; ++c)
                    if (c != i) row.push_back(a[r][c]);
                minor.push_back(row);
            }
            std::int64_t cof = determinant(minor);
            adj_[i][j] = static_cast<int>(((i + j) % 2 == 0) ? cof : -cof);
        }
    }

    // Form on weights: adj(A)^T * D, a positive multiple of (omega_i, omega_j).
    form_.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) form_[i][j] = adj_[j][i] * d_[j];

    simple_.clear();
    for (int j = 0; j < n; ++j) {
        Weight w = Weight::zero(n);
        for (int i = 0; i < n; ++i) w[i] = cartan_[i][j];
        simple_.push_back(w);
    }

    // Close the simple roots (with coroot data) under simple reflections.
    std::map<std::vector<int>, Root> roots;
    std::deque<std::vector<int>> q;
    for (int j = 0; j < n; ++j) {
        Root r;
        r.weight = simple_[j];
        r.coeffs.assign(n, 0);
        r.coeffs[j] = 1;
        r.coroot_coeffs.assign(n, 0);
        r.coroot_coeffs[j] = 1;
        roots[r.coeffs] = r;
        q.push_back(r.coeffs);
    }
    const size_t cap = 1000;
    while (!q.empty()) {
        Root cur = roots[q.front()];
        q.pop_front();
        for (int i = 0; i < n; ++i) {
            Root nr = cur;
            int k = cur.weight[i];
            nr.weight = cur.weight - k * simple_[i];
            nr.coeffs[i] -= k;
            int kc = 0;
            for (int m = 0; m < n; ++m) kc += cur.coroot_coeffs[m] * cartan_[m][i];
            nr.coroot_coeffs[i] -= kc;
            if (!roots.count(nr.coeffs)) {
                if (roots.size() > cap) throw std::invalid_argument("root system does not close");
                roots[nr.coeffs] = nr;
                q.push_back(nr.coeffs);
            }
        }
    }
    pos_.clear();
    for (auto& [k, r] : roots) {
        bool positive = std::all_of(k.begin(), k.end(), [](int x) { return x >= 0; });
        if (positive) {
            Root p = r;
            p.height = std::accumulate(k.begin(), k.end(), 0);
            pos_.push_back(p);
        }
    }
    std::stable_sort(pos_.begin(), pos_.end(), [](const Root& x, const Root& y) {
        if (x.height != y.height) return x.height < y.height;
        return x.coeffs > y.coeffs;
    });

    rho_ = Weight(std::vector<int>(n, 1));
    int max_height = 0;
    for (auto& r : pos_) max_height = std::max(max_height, r.height);
    h_ = max_height + 1;
    int best = -1;
    for (int k = 0; k < num_positive_roots(); ++k) {
        int ht = std::accumulate(pos_[k].coroot_coeffs.begin(), pos_[k].coroot_coeffs.end(), 0);
        if (ht > best) {
            best = ht;
            highest_coroot_ = k;
        }
    }

    // Weyl group by breadth-first search on the orbit of rho.
    group_.clear();
    group_index_.clear();
    group_.push_back(WeylElement{});
    group_index_[rho_] = 0;
    for (size_t idx = 0; idx < group_.size(); ++idx) {
        Weight x = apply(group_[idx], rho_);
        for (int i = 0; i < n; ++i) {
            Weight y = reflect_simple(i, x);
            if (group_index_.count(y)) continue;
            WeylElement w;
            w.word.push_back(i);
            w.word.insert(w.word.end(), group_[idx].word.begin(), group_[idx].word.end());
            group_index_[y] = static_cast<int>(group_.size());
            group_.push_back(w);
        }
    }
    w0_index_ = group_index_.at(-rho_);
}

int RootDatum::pairing(const Weight& lambda, int root_index) const {
    const auto& cc = pos_.at(root_index).coroot_coeffs;
    int s = 0;
    for (int i = 0; i < rank_; ++i) s += cc[i] * lambda[i];
    return s;
}

Weight RootDatum::reflect_simple(int i, const Weight& lambda) const {
    return lambda - lambda[i] * simple_[i];
}

Weight RootDatum::reflect(int root_index, const Weight& lambda) const {
    return lambda - pairing(lambda, root_index) * pos_[root_index].weight;
}

Weight RootDatum::apply(const WeylElement& w, const Weight& lambda) const {
    Weight x = lambda;
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) x = reflect_simple(*it, x);
    return x;
}

Weight RootDatum::dot(const WeylElement& w, const Weight& lambda) const {
    return apply(w, lambda + rho_) - rho_;
}

WeylElement RootDatum::normal_form(const WeylElement& w) const {
    return group_[group_index_.at(apply(w, rho_))];
}

WeylElement RootDatum::multiply(const WeylElement& a, const WeylElement& b) const {
    return group_[group_index_.at(apply(a, apply(b, rho_)))];
}

WeylElement RootDatum::inverse(const WeylElement& w) const {
    WeylElement r;
    r.word.assign(w.word.rbegin(), w.word.rend());
    return normal_form(r);
}

std::optional<std::pair<Weight, int>> RootDatum::regular_dominant_conjugate(const Weight& x) const {
    Weight y = x;
    int sign = 1;
    for (;;) {
        int i = 0;
        while (i < rank_ && y[i] >= 0) ++i;
        if (i == rank_) break;
        y = reflect_simple(i, y);
        sign = -sign;
    }
    for (int i = 0; i < rank_; ++i)
        if (y[i] == 0) return std::nullopt;
    return std::make_pair(y, sign);
}

Weight RootDatum::dominant_conjugate(const Weight& x) const {
    Weight y = x;
    for (;;) {
        int i = 0;
        while (i < rank_ && y[i] >= 0) ++i;
        if (i == rank_) return y;
        y = reflect_simple(i, y);
    }
}

std::int64_t RootDatum::form(const Weight& a, const Weight& b) const {
    std::int64_t s = 0;
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) s += static_cast<std::int64_t>(a[i]) * form_[i][j] * b[j];
    return s;
}

std::vector<std::int64_t> RootDatum::root_coords_scaled(const Weight& lambda) const {
    std::vector<std::int64_t> r(rank_, 0);
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) r[i] += static_cast<std::int64_t>(adj_[i][j]) * lambda[j];
    return r;
}

bool RootDatum::dominance_leq(const Weight& mu, const Weight& lambda) const {
    auto r = root_coords_scaled(lambda - mu);
    for (auto x : r)
        if (x < 0 || x % det_ != 0) return false;
    return true;
}

std::int64_t RootDatum::weyl_dim(const Weight& lambda) const {
    if (!lambda.is_dominant()) throw std::invalid_argument("weyl_dim: weight not dominant");
    Rat r(1);
    Weight x = lambda + rho_;
    for (int k = 0; k < num_positive_roots(); ++k) r *= Rat(pairing(x, k), pairing(rho_, k));
    if (r.denominator() != 1) throw std::logic_error("weyl_dim: non-integral result");
    return r.numerator();
}

Character RootDatum::orbit_sum(const Weight& dominant) const {
    std::set<Weight> orbit;
    for (auto& w : group_) orbit.insert(apply(w, dominant));
    Character ch;
    for (auto& x : orbit) ch.add(x, 1);
    return ch;
}

Character RootDatum::weyl_character(const Weight& lambda) const {
    if (!lambda.is_dominant()) throw std::invalid_argument("weyl_character: weight not dominant");

    // Dominant weights below lambda, by the depth of lambda - mu.
    auto top = root_coords_scaled(lambda);
    std::vector<int> bound(rank_);
    for (int i = 0; i < rank_; ++i) bound[i] = static_cast<int>(top[i] / det_);
    std::vector<std::pair<int, Weight>> dom;
    std::vector<int> c(rank_, 0);
    for (;;) {
        Weight mu = lambda;
        int depth = 0;
        for (int i = 0; i < rank_; ++i) {
            mu -= c[i] * simple_[i];
            depth += c[i];
        }
        if (mu.is_dominant()) dom.emplace_back(depth, mu);
        int i = 0;
        while (i < rank_ && c[i] == bound[i]) c[i++] = 0;
        if (i == rank_) break;
        ++c[i];
    }
    std::sort(dom.begin(), dom.end());

    // Freudenthal recursion.
    std::map<Weight, std::int64_t> m;
    const Weight lr = lambda + rho_;
    const std::int64_t top_norm = form(lr, lr);
    auto mult_of = [&](const Weight& x) -> std::int64_t {
        Weight y = dominant_conjugate(x);
        auto it = m.find(y);
        return it == m.end() ? 0 : it->second;
    };
    for (auto& [depth, mu] : dom) {
        if (depth == 0) {
            m[mu] = 1;
            continue;
        }
        std::int64_t num = 0;
        for (auto& root : pos_) {
            for (int k = 1;; ++k) {
                Weight x = mu + k * root.weight;
                std::int64_t mx = mult_of(x);
                if (mx == 0) break;
                num += form(x, root.weight) * mx;
            }
        }
        Weight mr = mu + rho_;
        std::int64_t den = top_norm - form(mr, mr);
        if (den <= 0 || (2 * num) % den != 0) throw std::logic_error("Freudenthal: non-integral multiplicity");
        std::int64_t val = 2 * num / den;
        if (val != 0) m[mu] = val;
    }

    Character ch;
    for (auto& [mu, k] : m) ch += orbit_sum(mu).scaled(k);
    return ch;
}

std::vector<std::pair<Weight, std::int64_t>> RootDatum::tensor_decompose(const Weight& lambda,
                                                                         const Weight& mu) const {
    if (!lambda.is_dominant() || !mu.is_dominant())
        throw std::invalid_argument("tensor_decompose: weights must be dominant");
    std::map<Weight, std::int64_t> acc;
    Character ch = weyl_character(mu);
    for (auto& [nu, k] : ch.support()) {
        auto conj = regular_dominant_conjugate(lambda + nu + rho_);
        if (!conj) continue;
        acc[conj->first - rho_] += conj->second * k;
    }
    std::vector<std::pair<Weight, std::int64_t>> out;
    for (auto& [w, k] : acc) {
        if (k < 0) throw std::logic_error("tensor_decompose: negative multiplicity");
        if (k > 0) out.emplace_back(w, k);
    }
    return out;
}

std::vector<std::pair<Weight, std::int64_t>> RootDatum::weyl_decompose(const Character& ch) const {
    Character rest = ch;
    std::vector<std::pair<Weight, std::int64_t>> out;
    while (rest.dim() != 0 || !rest.support().empty()) {
        const Weight* best = nullptr;
        std::int64_t best_ht = 0;
        for (auto& [w, k] : rest.support()) {
            if (!w.is_dominant()) continue;
            auto rc = root_coords_scaled(w);
            std::int64_t ht = std::accumulate(rc.begin(), rc.end(), std::int64_t{0});
            if (!best || ht > best_ht) {
                best = &w;
                best_ht = ht;
            }
        }
        if (!best) throw std::invalid_argument("weyl_decompose: character is not W-invariant");
        Weight top = *best;
        std::int64_t k = rest.mult(top);
        out.emplace_back(top, k);
        rest -= weyl_character(top).scaled(k);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace loewy
