#pragma once

#include <span>
#include <vector>

namespace armor {

/**
Finite discounted MDP with tabular transition and reward functions plus an
initial-state distribution. Rewards are deterministic functions of (s, a)
with values in [0, 1]; transition rows are probability distributions over
next states. Immutable after construction; all invariants are validated by
the constructor.
*/
class TabularMdp {
public:
    /// transition is flat [s][a][s'], reward flat [s][a].
    TabularMdp(int n_states, int n_actions, std::vector<double> transition,
               std::vector<double> reward, double gamma,
               std::vector<double> initial_dist);

    int n_states() const { return n_states_; }
    int n_actions() const { return n_actions_; }
    double gamma() const { return gamma_; }

    double p(int s, int a, int s_next) const {
        return transition_[(std::size_t(s) * n_actions_ + a) * n_states_ + s_next];
    }
    double r(int s, int a) const { return reward_[std::size_t(s) * n_actions_ + a]; }
    double initial(int s) const { return initial_dist_[s]; }

    /// Transition distribution over next states for a fixed (s, a).
    std::span<const double> transition_row(int s, int a) const {
        return {transition_.data() + (std::size_t(s) * n_actions_ + a) * n_states_,
                std::size_t(n_states_)};
    }

    const std::vector<double>& transition() const { return transition_; }
    const std::vector<double>& reward() const { return reward_; }
    const std::vector<double>& initial_dist() const { return initial_dist_; }

    /// Upper bound on any value function, 1 / (1 - gamma).
    double v_max() const { return 1.0 / (1.0 - gamma_); }

    /// Same state/action counts, discount, and initial distribution.
    bool same_shape(const TabularMdp& other) const;

    bool operator==(const TabularMdp& other) const = default;

private:
    int n_states_;
    int n_actions_;
    std::vector<double> transition_;
    std::vector<double> reward_;
    double gamma_;
    std::vector<double> initial_dist_;
};

/**
Tabular policy: either deterministic (one action per state) or stochastic
(a probability row over actions per state). Stochastic rows must sum to one.
*/
class Policy {
public:
    static Policy deterministic(std::vector<int> actions, int n_actions);
    /// probs is flat [s][a].
    static Policy stochastic(int n_states, int n_actions, std::vector<double> probs);

    bool is_deterministic() const { return !actions_.empty(); }
    int n_states() const { return n_states_; }
    int n_actions() const { return n_actions_; }

    /// Chosen action in state s (deterministic policies only).
    int action(int s) const;
    double prob(int s, int a) const;

    const std::vector<int>& actions() const;
    /// Action distribution at s (one-hot for deterministic policies).
    std::vector<double> action_row(int s) const;

    bool compatible_with(const TabularMdp& m) const {
        return n_states_ == m.n_states() && n_actions_ == m.n_actions();
    }

    bool operator==(const Policy& other) const = default;

private:
    Policy() = default;
    int n_states_ = 0;
    int n_actions_ = 0;
    std::vector<int> actions_;   // deterministic representation
    std::vector<double> probs_;  // stochastic representation, flat [s][a]
};

/**
Finite mixture over deterministic policies with episode-level randomization:
an atom is drawn once per episode and followed throughout, so the mixture
return is the weighted average of the atom returns.
*/
struct MixedPolicy {
    MixedPolicy(std::vector<Policy> atoms, std::vector<double> weights);

    std::vector<Policy> atoms;
    std::vector<double> weights;
};

/// Exact evaluation output for one (model, policy) pair.
struct ValueReport {
    std::vector<double> v;         // state values
    std::vector<double> q;         // flat [s][a]
    double j = 0.0;                // initial-distribution weighted return
    std::vector<double> occupancy; // normalized discounted (s, a) visitation, flat [s][a]
};

/**
Evaluates a policy on a model by solving the Bellman linear system directly
(no iteration): V = R_pi + gamma P_pi V, and the occupancy flow equation
nu = (1-gamma) rho + gamma P_pi^T nu with d(s,a) = nu(s) pi(a|s).
*/
ValueReport evaluate(const TabularMdp& m, const Policy& pi);

/// Return of an episode-level mixture: weighted average of atom returns.
double evaluate_mixed(const TabularMdp& m, const MixedPolicy& mix);

/// Total variation distance (1/2) sum |p_i - q_i| between two distributions.
double tv_distance(std::span<const double> p, std::span<const double> q);

struct GapBound {
    double lhs; // |J_M(pi) - J_M'(pi)|
    double rhs; // occupancy-weighted transition-TV and reward-gap bound
};

/**
Return-gap bound between two models sharing shape and discount:
  lhs = |J_M(pi) - J_M'(pi)|
  rhs = V_max/(1-gamma) E_d[TV(P_M, P_M')] + 1/(1-gamma) E_d[|R_M - R_M'|]
with the expectation taken under the occupancy of pi in the first model M.
Contract: lhs <= rhs up to solver noise.
*/
GapBound simulation_gap_bound(const TabularMdp& m, const TabularMdp& m_prime,
                              const Policy& pi);

} // namespace armor
