#pragma once

#include "armor/matrix_game.hpp"
#include "armor/mdp.hpp"
#include "armor/version_space.hpp"

#include <variant>
#include <vector>

namespace armor {

inline constexpr long kDefaultPolicyCap = 1'000'000;

/**
Relative payoff table of the policy-versus-model game: rows are candidate
policies, columns are models, entry (i, j) = J_{M_j}(pi_i) - J_{M_j}(pi_ref).
The reference return is evaluated once per model and reused for every row.
*/
struct GameMatrix {
    std::vector<std::vector<double>> payoff;
    std::vector<Policy> row_index;
    std::vector<int> col_index; // caller-supplied model ids
    std::vector<double> ref_return_per_model;
};

enum class SolveMode { pure, mixed };

struct SolveResult {
    std::variant<Policy, MixedPolicy> policy;
    double value = 0.0;
    int worst_model = -1;     // model id attaining the inner minimum
    double duality_gap = 0.0; // certified gap (mixed mode; 0 for pure)
    std::vector<int> version_space_members; // filled by armor_policy

    const Policy& pure_policy() const { return std::get<Policy>(policy); }
    const MixedPolicy& mixed_policy() const { return std::get<MixedPolicy>(policy); }
};

/**
All deterministic policies in lexicographic order over the action tuple
(state 0 most significant). Throws when n_actions^n_states exceeds cap.
*/
std::vector<Policy> enumerate_policies(int n_states, int n_actions,
                                       long cap = kDefaultPolicyCap);

GameMatrix build_game_matrix(const std::vector<TabularMdp>& models,
                             const std::vector<int>& model_ids,
                             const std::vector<Policy>& policies, const Policy& pi_ref);
/// Same with model ids 0..k-1.
GameMatrix build_game_matrix(const std::vector<TabularMdp>& models,
                             const std::vector<Policy>& policies, const Policy& pi_ref);

/// Lexicographically-first row maximizing the row minimum.
SolveResult solve_maximin_pure(const GameMatrix& g);

/// Mixed strategy over rows with a certified duality gap at most eps.
SolveResult solve_maximin_mixed(const GameMatrix& g, double eps);

/**
The complete pipeline: version space from (mc, d, alpha), deterministic
policy enumeration, relative-payoff game against pi_ref, then the chosen
solver. Version-space membership is recorded in the result.
*/
SolveResult armor_policy(const ModelClass& mc, const Dataset& d, double alpha,
                         const Policy& pi_ref, SolveMode mode, double eps = 1e-6,
                         long cap = kDefaultPolicyCap);

} // namespace armor
