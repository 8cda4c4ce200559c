#pragma once

#include "armor/mdp.hpp"
#include "armor/offline_data.hpp"

#include <optional>
#include <span>
#include <vector>

namespace armor {

/**
Finite candidate model class. All models must share state/action counts,
discount, and initial distribution. When truth_index is set, that entry must
equal the ground-truth model exactly.
*/
struct ModelClass {
    ModelClass(std::vector<TabularMdp> models, std::optional<int> truth_index = std::nullopt);

    std::vector<TabularMdp> models;
    std::optional<int> truth_index;

    int size() const { return int(models.size()); }
};

/**
Models whose data loss is within alpha of the best-fitting model. A model
with -inf loss (zero likelihood on some observed transition) is never a
member for any alpha.
*/
struct VersionSpace {
    std::vector<int> member_indices;
    std::vector<double> losses;
    double alpha = 0.0;
    double max_loss = 0.0;

    bool contains(int model_index) const;
};

/**
Data loss of a model: sum over tuples of ln P_M(s'|s,a) - (R_M(s,a) - r)^2.
Returns -inf when any observed transition has zero probability under M;
an empty dataset scores 0.
*/
double loss(const TabularMdp& m, const Dataset& d);

/// The two addends of the loss, separately: loss = log_likelihood - squared_error.
struct LossParts {
    double log_likelihood; // -inf on zero-probability transitions
    double squared_error;
};
LossParts loss_parts(const TabularMdp& m, const Dataset& d);

/// Membership rule applied to precomputed losses (alpha >= 0, may be +inf).
VersionSpace version_space_from_losses(std::vector<double> losses, double alpha);

VersionSpace build_version_space(const ModelClass& mc, const Dataset& d, double alpha);

/// Convenience threshold c * ln(class_size / delta), delta in (0, 1], c >= 1.
double alpha_from_theory(long class_size, double delta, double c);

/**
Weighted model error against the truth:
  sum_{s,a} w(s,a) [ TV(P_M(.|s,a), P*(.|s,a))^2 + (R_M(s,a) - R*(s,a))^2 ].
w is any distribution over state-action pairs, flat [s][a].
*/
double on_support_error(const TabularMdp& m, const TabularMdp& m_star,
                        std::span<const double> w);
double on_support_error(const TabularMdp& m, const TabularMdp& m_star,
                        const BehaviorDistribution& w);

/**
Generalized single-policy concentrability: the worst ratio over the class of
model-error mass under d^pi (occupancy in m_star) to model-error mass under
mu. A model with zero numerator contributes 0 (0/0 included); a positive
numerator over a zero denominator yields +inf.
*/
double concentrability(const ModelClass& mc, const Policy& pi,
                       const BehaviorDistribution& mu, const TabularMdp& m_star);

} // namespace armor
