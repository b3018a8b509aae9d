#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "loewy/solver.hpp"

namespace loewy {

// SL3 in characteristic p: the tilting module of highest weight p(p-1)/2 rho.
struct ModularParams {
    int p = 0;
    Weight lambda_star;  // p(p-1)/2 rho
    Weight nu;           // (p-3)/2 rho, the twisted tensor factor
    LabelMap labels;     // alcove numbering around lambda_star
    std::set<std::string> ignored;  // numbers with no alcove at this p
};

ModularParams make_modular_params(int p, LabelMap labels, std::set<std::string> ignored = {});

// lambda = mu~ + p nu with mu in X_p; returns (mu, nu) so that
// T(lambda) = Q(mu) (x) T(nu)^(1).
std::pair<Weight, Weight> donkin_factorize(const RootDatum& rd, const Weight& lambda, int p);

using WeightLayers = std::vector<std::map<Weight, int>>;

class SL3Modular {
public:
    explicit SL3Modular(ModularParams params);

    const ModularParams& params() const { return params_; }
    const AlcoveGeometry& geometry() const { return *geo_; }

    // Socle layers of Q((p-2)rho), computed as the projective tilting module
    // T(p rho) of the quantum group at level p. Head-first.
    WeightLayers q_layers() const;
    LayerDiagram q_diagram() const;

    // Tensor every layer with L(nu)^(1); non-semisimple twisted parts become blocks.
    LayerDiagram twist_tensor_layers(const WeightLayers& q, const Weight& nu) const;
    LayerDiagram table() const { return twist_tensor_layers(q_layers(), params_.nu); }

    RigidityReport nonrigidity_certificate() const;

    // (sum of factor dimensions, dim Q((p-2)rho) * dim L(nu)).
    std::pair<std::int64_t, std::int64_t> dimension_check() const;

private:
    ModularParams params_;
    std::unique_ptr<AlcoveGeometry> geo_;
    std::unique_ptr<KLEngine> kl_;
    std::unique_ptr<LoewySolver> solver_;

    std::string label_of(const Weight& w) const;
    std::int64_t quantum_simple_dim(const Weight& b0) const;
};

}  // namespace loewy
