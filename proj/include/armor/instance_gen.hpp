#pragma once

#include "armor/rng.hpp"
#include "armor/theory_checks.hpp"

#include <cstdint>

namespace armor {

/**
Recipe for seeded random problem instances. The generated class always
contains the true model at a recorded index, so realizability holds by
construction. Candidate models perturb the truth's transition rows (floored
at a small positive mass and renormalized, keeping full support) and rewards
(clipped back into [0, 1]).
*/
struct RandomInstanceRecipe {
    int n_states = 3;
    int n_actions = 2;
    int class_size = 5;
    double gamma = 0.9;
    double perturbation = 0.2;
    double behavior_temperature = 1.0;
};

TabularMdp random_mdp(Rng& rng, int n_states, int n_actions, double gamma);

/// Perturbed copy of base; scale 0 returns base unchanged.
TabularMdp perturb_model(Rng& rng, const TabularMdp& base, double scale);

Policy random_deterministic_policy(Rng& rng, int n_states, int n_actions);

/// Softmax over uniform logits; higher temperature is closer to uniform.
Policy random_behavior_policy(Rng& rng, int n_states, int n_actions, double temperature);

/// Deterministic in (recipe, seed): same inputs, identical instance.
Instance generate_instance(const RandomInstanceRecipe& recipe, std::uint64_t seed);

} // namespace armor
