#include "armor/offline_data.hpp"

#include "armor/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace armor {

using nlohmann::json;

BehaviorDistribution::BehaviorDistribution(int n_states, int n_actions,
                                           std::vector<double> weights)
    : n_states_(n_states), n_actions_(n_actions), weights_(std::move(weights)) {
    if (n_states_ < 1 || n_actions_ < 1)
        throw std::invalid_argument("BehaviorDistribution: empty state or action space");
    if (weights_.size() != std::size_t(n_states_) * n_actions_)
        throw std::invalid_argument("BehaviorDistribution: weight table has wrong size");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0))
            throw std::invalid_argument("BehaviorDistribution: negative or NaN weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("BehaviorDistribution: weights must sum to 1");
}

BehaviorDistribution behavior_from_policy(const TabularMdp& m, const Policy& pi) {
    if (!pi.compatible_with(m))
        throw std::invalid_argument("behavior_from_policy: dimension mismatch");
    return {m.n_states(), m.n_actions(), evaluate(m, pi).occupancy};
}

Policy conditional_policy(const BehaviorDistribution& mu) {
    const int S = mu.n_states();
    const int A = mu.n_actions();
    std::vector<double> probs(std::size_t(S) * A, 0.0);
    for (int s = 0; s < S; ++s) {
        double mass = 0.0;
        for (int a = 0; a < A; ++a) mass += mu.prob(s, a);
        if (mass > 0.0) {
            for (int a = 0; a < A; ++a) probs[std::size_t(s) * A + a] = mu.prob(s, a) / mass;
            // renormalize away division dust
            double sum = 0.0;
            for (int a = 0; a < A; ++a) sum += probs[std::size_t(s) * A + a];
            for (int a = 0; a < A; ++a) probs[std::size_t(s) * A + a] /= sum;
        } else {
            for (int a = 0; a < A; ++a) probs[std::size_t(s) * A + a] = 1.0 / A;
        }
    }
    return Policy::stochastic(S, A, std::move(probs));
}

Dataset sample_dataset(const TabularMdp& m_star, const BehaviorDistribution& mu, long n,
                       std::uint64_t seed, std::optional<NoiseSpec> noise,
                       std::string behavior_id) {
    if (n < 1) throw std::invalid_argument("sample_dataset: n must be at least 1");
    if (!mu.compatible_with(m_star))
        throw std::invalid_argument("sample_dataset: behavior/model dimension mismatch");
    if (noise && !(noise->sigma >= 0.0))
        throw std::invalid_argument("sample_dataset: noise sigma must be non-negative");

    const int A = m_star.n_actions();
    Rng rng(seed);
    Dataset d;
    d.transitions.reserve(std::size_t(n));
    for (long i = 0; i < n; ++i) {
        const int sa = rng.categorical(mu.weights());
        const int s = sa / A;
        const int a = sa % A;
        const int s_next = rng.categorical(m_star.transition_row(s, a));
        double r = m_star.r(s, a);
        if (noise && noise->sigma > 0.0)
            r = std::clamp(r + rng.uniform(-noise->sigma, noise->sigma), 0.0, 1.0);
        d.transitions.push_back({s, a, r, s_next});
    }
    d.meta = {seed, n, std::move(behavior_id), noise};
    return d;
}

void save_dataset(const Dataset& d, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_dataset: cannot open " + path.string());
    json meta{{"seed", d.meta.seed}, {"n", d.meta.n}, {"behavior_id", d.meta.behavior_id}};
    meta["noise"] = d.meta.noise ? json{{"sigma", d.meta.noise->sigma}} : json(nullptr);
    out << meta.dump() << '\n';
    for (const Transition& t : d.transitions)
        out << json::array({t.s, t.a, t.r, t.s_next}).dump() << '\n';
    if (!out) throw std::runtime_error("save_dataset: write failed for " + path.string());
}

namespace {

[[noreturn]] void malformed(const std::filesystem::path& path, long line,
                            const std::string& what) {
    throw std::runtime_error("load_dataset: " + path.string() + ":" + std::to_string(line) +
                             ": " + what);
}

} // namespace

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_dataset: cannot open " + path.string());

    std::string line;
    long lineno = 0;
    if (!std::getline(in, line)) malformed(path, 1, "missing metadata header");
    ++lineno;

    Dataset d;
    try {
        const json meta = json::parse(line);
        d.meta.seed = meta.at("seed").get<std::uint64_t>();
        d.meta.n = meta.at("n").get<long>();
        d.meta.behavior_id = meta.at("behavior_id").get<std::string>();
        if (meta.contains("noise") && !meta["noise"].is_null())
            d.meta.noise = NoiseSpec{meta["noise"].at("sigma").get<double>()};
    } catch (const json::exception& e) {
        malformed(path, lineno, std::string("bad metadata: ") + e.what());
    }

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception& e) {
            malformed(path, lineno, std::string("bad record: ") + e.what());
        }
        if (!rec.is_array() || rec.size() != 4)
            malformed(path, lineno, "expected a 4-element array [s, a, r, s_next]");
        try {
            Transition t{rec[0].get<int>(), rec[1].get<int>(), rec[2].get<double>(),
                         rec[3].get<int>()};
            if (t.s < 0 || t.a < 0 || t.s_next < 0)
                malformed(path, lineno, "negative index");
            if (!std::isfinite(t.r)) malformed(path, lineno, "non-finite reward");
            d.transitions.push_back(t);
        } catch (const json::exception& e) {
            malformed(path, lineno, std::string("bad record field: ") + e.what());
        }
    }
    if (d.meta.n != d.size())
        malformed(path, lineno,
                  "metadata n=" + std::to_string(d.meta.n) + " but file holds " +
                      std::to_string(d.size()) + " transitions");
    return d;
}

} // namespace armor
