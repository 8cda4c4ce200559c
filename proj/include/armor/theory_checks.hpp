#pragma once

#include "armor/maximin.hpp"
#include "armor/mdp.hpp"
#include "armor/offline_data.hpp"
#include "armor/version_space.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace armor {

inline constexpr double kCheckTol = 1e-9;

/**
One self-contained problem: the true model, a candidate class containing it,
the data distribution, a reference policy, an optional comparator, and the
seed every derived draw is keyed to.
*/
struct Instance {
    Instance(TabularMdp m_star, ModelClass model_class, BehaviorDistribution behavior,
             Policy pi_ref, std::optional<Policy> pi_comp = std::nullopt,
             std::uint64_t seed = 0);

    TabularMdp m_star;
    ModelClass model_class;
    BehaviorDistribution behavior;
    Policy pi_ref;
    std::optional<Policy> pi_comp;
    std::uint64_t seed;
};

/// Outcome of one verifier run. passed reflects the check's inequality at
/// its stated tolerance; lhs/rhs are the two sides being compared.
struct CheckReport {
    std::string name;
    bool passed = false;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string details;
    long trials = 0;
};

/**
Policy-improvement check: for each alpha in the grid, builds the version
space from d, verifies directly whether the true model is a member (the
probabilistic event made explicit), and where it is, asserts
J_{M*}(pi_hat_alpha) >= J_{M*}(pi_ref) - tol. Grid points whose membership
precondition fails are reported as not-asserted rather than failed.
The reference policy must be deterministic (inside the enumerated policy
set); anything else violates the guarantee's precondition and is refused.
*/
std::vector<CheckReport> check_rpi(const Instance& inst, const Dataset& d,
                                   std::span<const double> alpha_grid,
                                   long policy_cap = kDefaultPolicyCap);

/**
Deterministic inequality behind the absolute-performance bound:
  lhs = J(pi_comp) - J(pi_hat)
  rhs = J(pi_comp) - J(pi_ref) - min_{M in vs} [ J_M(pi_comp) - J_M(pi_ref) ]
evaluated exactly under M*, asserting lhs <= rhs + tol when M* is a member.
The intermediate bound with pi_hat inside the min is recorded in details.
Requires a deterministic comparator.
*/
CheckReport check_absolute_decomposition(const Instance& inst, const Dataset& d, double alpha,
                                         long policy_cap = kDefaultPolicyCap);

struct TrendOptions {
    std::vector<long> n_grid;
    int trials = 50;
    double delta = 0.1;
    double c = 1.0; // threshold multiplier for alpha_from_theory
    std::optional<NoiseSpec> noise;
    long policy_cap = kDefaultPolicyCap;
};

struct TrendPoint {
    long n = 0;
    double mean = 0.0;
    double sem = 0.0;
    double shape = 0.0; // sqrt(ln(|class|/delta) / n)
};

/**
Sampled suboptimality trend: for each n, draws `trials` datasets, runs the
full pipeline with alpha from alpha_from_theory(|class|, delta, c), and
averages J_{M*}(pi_comp) - J_{M*}(pi_hat). Passes when the means are
non-increasing in n within two pooled standard errors. The smallest constant
C_fit with mean(n) <= C_fit * sqrt(ln(|class|/delta)/n) for every n is
fitted and reported (rhs), never asserted against any theoretical constant.
When the instance has no comparator, the optimal policy of M* is used.
*/
CheckReport check_suboptimality_trend(const Instance& inst, const TrendOptions& opt,
                                      std::vector<TrendPoint>* points = nullptr);

/**
Coverage experiment for the likelihood-ratio tail bound: over `trials`
datasets of size n, measures how often
  max_M [ loglik(M) - loglik(M*) ] <= ln(|class| / delta)
using only the transition log-likelihood part of the loss. Passes when the
empirical frequency is at least 1 - delta - 3 sqrt(delta (1-delta) / trials).
A vacuous threshold (delta so large the target is <= 0) skips the trials and
reports that the bound degenerates.
*/
CheckReport mle_coverage_experiment(const Instance& inst, long n, int trials, double delta);

/**
On-support error diagnostic: for every model and dataset draw, compares
  E_mu[ TV^2 + reward-gap^2 ]   vs   c_diag * (loss gap + ln(|class|/delta)) / n.
passed means the supplied c_diag suffices on all draws; lhs reports the
smallest c_diag that would. Nothing is asserted against the unknown
theoretical constant.
*/
CheckReport check_on_support_bound(const Instance& inst, long n, int trials, double c_diag,
                                   double delta = 0.1);

struct ConceptRow {
    std::string concept_name;
    Policy policy;
    double worst_return = 0.0; // min_M J_M(policy) over the version space
    double worst_regret = 0.0; // max_M [J_M(pi*_M) - J_M(policy)]
};

struct ConceptComparison {
    std::vector<ConceptRow> rows; // absolute_pessimism, relative_pessimism,
                                  // regret_minimization, optimistic
    CheckReport report;           // the definitional-optimality assertions
};

/**
Builds the version space from (d, alpha) and compares the four solution
concepts on it. Asserts, over the enumerated policy set, that the
absolute-pessimism row attains the best worst-case return and the
regret-minimization row the best worst-case regret (each within tol).
*/
ConceptComparison compare_solution_concepts(const Instance& inst, const Dataset& d,
                                            double alpha,
                                            long policy_cap = kDefaultPolicyCap);

} // namespace armor
