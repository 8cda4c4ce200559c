#include "armor/maximin.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace armor {

std::vector<Policy> enumerate_policies(int n_states, int n_actions, long cap) {
    if (n_states < 1 || n_actions < 1)
        throw std::invalid_argument("enumerate_policies: empty state or action space");
    if (cap < 1) throw std::invalid_argument("enumerate_policies: cap must be positive");

    long count = 1;
    for (int s = 0; s < n_states; ++s) {
        if (count > cap / n_actions)
            throw std::invalid_argument(
                "enumerate_policies: n_actions^n_states exceeds cap " + std::to_string(cap));
        count *= n_actions;
    }

    std::vector<Policy> out;
    out.reserve(std::size_t(count));
    std::vector<int> actions(n_states, 0);
    for (long k = 0; k < count; ++k) {
        long rem = k;
        for (int s = n_states - 1; s >= 0; --s) {
            actions[s] = int(rem % n_actions);
            rem /= n_actions;
        }
        out.push_back(Policy::deterministic(actions, n_actions));
    }
    return out;
}

GameMatrix build_game_matrix(const std::vector<TabularMdp>& models,
                             const std::vector<int>& model_ids,
                             const std::vector<Policy>& policies, const Policy& pi_ref) {
    if (models.empty()) throw std::invalid_argument("build_game_matrix: no models");
    if (policies.empty()) throw std::invalid_argument("build_game_matrix: no policies");
    if (model_ids.size() != models.size())
        throw std::invalid_argument("build_game_matrix: id/model count mismatch");

    GameMatrix g;
    g.row_index = policies;
    g.col_index = model_ids;
    g.ref_return_per_model.reserve(models.size());
    for (const TabularMdp& m : models) g.ref_return_per_model.push_back(evaluate(m, pi_ref).j);

    g.payoff.assign(policies.size(), std::vector<double>(models.size(), 0.0));
    for (std::size_t i = 0; i < policies.size(); ++i) {
        for (std::size_t j = 0; j < models.size(); ++j) {
            const double entry = evaluate(models[j], policies[i]).j - g.ref_return_per_model[j];
            if (std::abs(entry) > models[j].v_max() + 1e-9)
                throw std::logic_error("build_game_matrix: payoff outside [-V_max, V_max]");
            g.payoff[i][j] = entry;
        }
    }
    return g;
}

GameMatrix build_game_matrix(const std::vector<TabularMdp>& models,
                             const std::vector<Policy>& policies, const Policy& pi_ref) {
    std::vector<int> ids(models.size());
    for (std::size_t j = 0; j < models.size(); ++j) ids[j] = int(j);
    return build_game_matrix(models, ids, policies, pi_ref);
}

SolveResult solve_maximin_pure(const GameMatrix& g) {
    const PureSolve s = pure_maximin(g.payoff);
    SolveResult res;
    res.policy = g.row_index[s.row];
    res.value = s.value;
    res.worst_model = g.col_index[s.col];
    return res;
}

SolveResult solve_maximin_mixed(const GameMatrix& g, double eps) {
    const MatrixGameSolution sol = solve_matrix_game(g.payoff, eps);

    std::vector<Policy> atoms;
    std::vector<double> weights;
    for (std::size_t i = 0; i < sol.row_strategy.size(); ++i) {
        if (sol.row_strategy[i] > 1e-12) {
            atoms.push_back(g.row_index[i]);
            weights.push_back(sol.row_strategy[i]);
        }
    }
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    for (double& w : weights) w /= wsum;

    // Worst column against the full (unpruned) mixture.
    int worst_col = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < g.payoff.front().size(); ++j) {
        double col_payoff = 0.0;
        for (std::size_t i = 0; i < g.payoff.size(); ++i)
            col_payoff += sol.row_strategy[i] * g.payoff[i][j];
        if (col_payoff < worst) {
            worst = col_payoff;
            worst_col = int(j);
        }
    }

    SolveResult res;
    res.policy = MixedPolicy(std::move(atoms), std::move(weights));
    res.value = sol.value;
    res.worst_model = g.col_index[worst_col];
    res.duality_gap = sol.gap;
    return res;
}

SolveResult armor_policy(const ModelClass& mc, const Dataset& d, double alpha,
                         const Policy& pi_ref, SolveMode mode, double eps, long cap) {
    const VersionSpace vs = build_version_space(mc, d, alpha);
    std::vector<TabularMdp> members;
    members.reserve(vs.member_indices.size());
    for (int idx : vs.member_indices) members.push_back(mc.models[idx]);

    const TabularMdp& shape = mc.models.front();
    const std::vector<Policy> policies =
        enumerate_policies(shape.n_states(), shape.n_actions(), cap);
    const GameMatrix g = build_game_matrix(members, vs.member_indices, policies, pi_ref);

    SolveResult res = mode == SolveMode::pure ? solve_maximin_pure(g)
                                              : solve_maximin_mixed(g, eps);
    res.version_space_members = vs.member_indices;
    return res;
}

} // namespace armor
