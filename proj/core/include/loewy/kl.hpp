#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "loewy/alcove.hpp"
#include "loewy/laurent.hpp"

namespace loewy {

// Right H_s-action on the span of dominant alcoves. Crossing out of the dominant
// chamber multiplies by (v + v^{-1}) in the spherical module and kills the
// element in the antispherical module.
enum class HeckeModule { spherical, antispherical };

using AlcovePolys = std::map<Alcove, LaurentPoly>;

class KLEngine {
public:
    explicit KLEngine(AlcoveGeometry geo);

    const AlcoveGeometry& geometry() const { return geo_; }

    // Canonical basis element of A in the given module, as coefficients on alcoves.
    const AlcovePolys& canonical(HeckeModule m, const Alcove& a) const;
    // Inverse of the matrix (m_{B,A}(-v)); its entries are the graded
    // composition multiplicities of Weyl modules.
    const AlcovePolys& inverse_column(const Alcove& a) const;

    // Spherical KL polynomial m_{B,A}; lies in v^{d(A,B)} Z[v^{-2}].
    LaurentPoly kl_poly(const Alcove& b, const Alcove& a) const;
    // Antispherical KL polynomial n_{B,A}; (T(A) : Delta(B)) = n_{B,A}(1).
    LaurentPoly tilting_poly(const Alcove& b, const Alcove& a) const;
    // Graded [Delta(A) : L(B)].
    LaurentPoly graded_decomposition(const Alcove& b, const Alcove& a) const;

    std::int64_t decomposition_mult(const Alcove& a, const Alcove& b) const;
    int mu(const Alcove& b, const Alcove& a) const;
    int ext1_dim(const Alcove& b, const Alcove& a) const;
    std::vector<std::pair<Alcove, std::int64_t>> tilting_delta_mults(const Alcove& a) const;
    // B <= A in the linkage order of dominant alcoves.
    bool linked_below(const Alcove& b, const Alcove& a) const;

    // The descent used by the recursion (smallest generator index), or -1 for the bottom alcove.
    int chosen_descent(const Alcove& a) const;

    size_t memo_size() const;

private:
    AlcoveGeometry geo_;
    mutable std::shared_mutex mutex_;
    mutable std::map<Alcove, AlcovePolys> memo_[2];
    mutable std::map<Alcove, AlcovePolys> inverse_memo_;

    AlcovePolys compute(HeckeModule m, const Alcove& a) const;
    AlcovePolys compute_inverse(const Alcove& a) const;
};

// Same recursion, no memo table. Exponential; meant as a test oracle.
AlcovePolys naive_canonical(const AlcoveGeometry& geo, HeckeModule m, const Alcove& a);

// Right multiplication of a module element by the KL generator of s.
AlcovePolys act_by_generator(const AlcoveGeometry& geo, HeckeModule m, const AlcovePolys& x, int s);

}  // namespace loewy
