#pragma once

#include "armor/maximin.hpp"
#include "armor/mdp.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace armor {

inline constexpr double kFixedPointTol = 1e-9;

/// Model-score family for the unimprovability analysis. The maximin
/// objective becomes J_M(pi) + psi(M) over a model subset.
enum class PsiKind {
    zero,               // absolute pessimism
    neg_ref_return,     // psi(M) = -J_M(pi_ref)
    neg_optimal_return, // psi(M) = -J_M(pi*_M), i.e. worst-case regret
    singleton,          // restrict to one model (its optimal policy)
};

struct PsiSpec {
    PsiKind kind;
    std::optional<Policy> pi_ref; // required for neg_ref_return
    std::optional<int> model_id;  // required for singleton
    std::vector<int> subset;      // non-empty indices into the model list

    static PsiSpec zero(std::vector<int> subset);
    static PsiSpec neg_ref_return(Policy pi_ref, std::vector<int> subset);
    static PsiSpec neg_optimal_return(std::vector<int> subset);
    static PsiSpec singleton(int model_id);
};

/// Indices 0..n-1, for building whole-version-space subsets.
std::vector<int> all_model_indices(int n);

/// Lexicographically-first policy in `policies` maximizing J_M.
Policy optimal_policy_of(const TabularMdp& m, const std::vector<Policy>& policies);

/**
Pure maximin of J_M(pi) + psi(M) over the spec's model subset. worst_model
reports the index (into `models`) attaining the inner minimum.
*/
SolveResult psi_policy(const std::vector<TabularMdp>& models, const PsiSpec& spec,
                       const std::vector<Policy>& policies);

/// Joint argmax of J_M(pi) over (policy, model), ties broken by policy index
/// then model index. Returns the policy and the selected model index.
std::pair<Policy, int> optimistic_policy(const std::vector<TabularMdp>& models,
                                         const std::vector<Policy>& policies);

/**
Best certified worst-case improvement over pi_ref:
  max_{pi' in policies} min_M [ J_M(pi') - J_M(pi_ref) ].
Zero iff pi_ref is a fixed point of the relative-pessimism operator over
these models; strictly positive values certify nontrivial improvability.
*/
double improvement_certificate(const Policy& pi_ref, const std::vector<TabularMdp>& models,
                               const std::vector<Policy>& policies);

/// Fixed-point test by value certificate: true iff |v*| <= tol where v* is
/// the improvement certificate of pi. v* is never below zero when pi itself
/// is among the candidate policies.
std::pair<bool, double> is_fixed_point(const Policy& pi, const std::vector<TabularMdp>& models,
                                       const std::vector<Policy>& policies,
                                       double tol = kFixedPointTol);

} // namespace armor
