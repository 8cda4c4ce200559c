#pragma once

#include "armor/mdp.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace armor {

/// Bounded uniform reward noise on [-sigma, sigma]; sampled rewards are
/// clipped back into [0, 1].
struct NoiseSpec {
    double sigma = 0.0;
    bool operator==(const NoiseSpec&) const = default;
};

struct Transition {
    int s;
    int a;
    double r;
    int s_next;
    bool operator==(const Transition&) const = default;
};

struct DatasetMeta {
    std::uint64_t seed = 0;
    long n = 0;
    std::string behavior_id;
    std::optional<NoiseSpec> noise;
    bool operator==(const DatasetMeta&) const = default;
};

/// Offline dataset of i.i.d. (s, a, r, s') tuples plus generation metadata.
struct Dataset {
    std::vector<Transition> transitions;
    DatasetMeta meta;

    long size() const { return long(transitions.size()); }
    bool operator==(const Dataset&) const = default;
};

/// Sampling distribution over state-action pairs from which offline tuples
/// are drawn. Stored flat [s][a].
class BehaviorDistribution {
public:
    BehaviorDistribution(int n_states, int n_actions, std::vector<double> weights);

    int n_states() const { return n_states_; }
    int n_actions() const { return n_actions_; }
    double prob(int s, int a) const { return weights_[std::size_t(s) * n_actions_ + a]; }
    const std::vector<double>& weights() const { return weights_; }

    bool compatible_with(const TabularMdp& m) const {
        return n_states_ == m.n_states() && n_actions_ == m.n_actions();
    }

    bool operator==(const BehaviorDistribution&) const = default;

private:
    int n_states_;
    int n_actions_;
    std::vector<double> weights_;
};

/// Exact discounted occupancy of pi in m, as a sampling distribution.
BehaviorDistribution behavior_from_policy(const TabularMdp& m, const Policy& pi);

/**
Conditional policy mu(a|s) of a state-action distribution: each state row is
normalized; states with zero mass fall back to uniform over actions.
*/
Policy conditional_policy(const BehaviorDistribution& mu);

/**
Draws n tuples: (s, a) ~ mu, s' ~ P*(.|s, a), r = R*(s, a) plus optional
bounded noise. A pure function of (m_star, mu, n, seed, noise); the same
inputs always produce the identical dataset.
*/
Dataset sample_dataset(const TabularMdp& m_star, const BehaviorDistribution& mu, long n,
                       std::uint64_t seed, std::optional<NoiseSpec> noise = std::nullopt,
                       std::string behavior_id = "");

/// JSONL format: first line a metadata object, then one [s, a, r, s'] array
/// per transition. Round-trips exactly, metadata included.
void save_dataset(const Dataset& d, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

} // namespace armor
