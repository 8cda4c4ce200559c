#include "armor/mdp.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace armor {

namespace {

constexpr double kDistTol = 1e-12;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void check_distribution(std::span<const double> w, double tol, const std::string& what) {
    double sum = 0.0;
    for (double x : w) {
        if (!(x >= 0.0)) throw std::invalid_argument(what + ": negative or NaN entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > tol)
        throw std::invalid_argument(what + ": entries sum to " + std::to_string(sum) +
                                    ", expected 1");
}

} // namespace

TabularMdp::TabularMdp(int n_states, int n_actions, std::vector<double> transition,
                       std::vector<double> reward, double gamma,
                       std::vector<double> initial_dist)
    : n_states_(n_states), n_actions_(n_actions), transition_(std::move(transition)),
      reward_(std::move(reward)), gamma_(gamma), initial_dist_(std::move(initial_dist)) {
    require(n_states_ >= 1 && n_actions_ >= 1, "TabularMdp: empty state or action space");
    require(gamma_ >= 0.0 && gamma_ < 1.0, "TabularMdp: gamma must lie in [0, 1)");
    require(transition_.size() == std::size_t(n_states_) * n_actions_ * n_states_,
            "TabularMdp: transition table has wrong size");
    require(reward_.size() == std::size_t(n_states_) * n_actions_,
            "TabularMdp: reward table has wrong size");
    require(initial_dist_.size() == std::size_t(n_states_),
            "TabularMdp: initial distribution has wrong size");
    for (int s = 0; s < n_states_; ++s)
        for (int a = 0; a < n_actions_; ++a)
            check_distribution(transition_row(s, a), kDistTol,
                               "TabularMdp: transition row (" + std::to_string(s) + ", " +
                                   std::to_string(a) + ")");
    for (double x : reward_)
        require(x >= 0.0 && x <= 1.0, "TabularMdp: reward outside [0, 1]");
    check_distribution(initial_dist_, kDistTol, "TabularMdp: initial distribution");
}

bool TabularMdp::same_shape(const TabularMdp& other) const {
    return n_states_ == other.n_states_ && n_actions_ == other.n_actions_ &&
           gamma_ == other.gamma_ && initial_dist_ == other.initial_dist_;
}

Policy Policy::deterministic(std::vector<int> actions, int n_actions) {
    require(!actions.empty(), "Policy: empty action table");
    require(n_actions >= 1, "Policy: n_actions must be positive");
    for (int a : actions)
        require(a >= 0 && a < n_actions, "Policy: action index out of range");
    Policy p;
    p.n_states_ = int(actions.size());
    p.n_actions_ = n_actions;
    p.actions_ = std::move(actions);
    return p;
}

Policy Policy::stochastic(int n_states, int n_actions, std::vector<double> probs) {
    require(n_states >= 1 && n_actions >= 1, "Policy: empty state or action space");
    require(probs.size() == std::size_t(n_states) * n_actions,
            "Policy: probability table has wrong size");
    for (int s = 0; s < n_states; ++s)
        check_distribution({probs.data() + std::size_t(s) * n_actions, std::size_t(n_actions)},
                           kDistTol, "Policy: action row " + std::to_string(s));
    Policy p;
    p.n_states_ = n_states;
    p.n_actions_ = n_actions;
    p.probs_ = std::move(probs);
    return p;
}

int Policy::action(int s) const {
    if (!is_deterministic())
        throw std::logic_error("Policy::action called on a stochastic policy");
    return actions_[s];
}

double Policy::prob(int s, int a) const {
    if (is_deterministic()) return actions_[s] == a ? 1.0 : 0.0;
    return probs_[std::size_t(s) * n_actions_ + a];
}

const std::vector<int>& Policy::actions() const {
    if (!is_deterministic())
        throw std::logic_error("Policy::actions called on a stochastic policy");
    return actions_;
}

std::vector<double> Policy::action_row(int s) const {
    std::vector<double> row(n_actions_, 0.0);
    if (is_deterministic()) {
        row[actions_[s]] = 1.0;
    } else {
        for (int a = 0; a < n_actions_; ++a)
            row[a] = probs_[std::size_t(s) * n_actions_ + a];
    }
    return row;
}

MixedPolicy::MixedPolicy(std::vector<Policy> atoms_in, std::vector<double> weights_in)
    : atoms(std::move(atoms_in)), weights(std::move(weights_in)) {
    require(!atoms.empty(), "MixedPolicy: no atoms");
    require(atoms.size() == weights.size(), "MixedPolicy: atom/weight count mismatch");
    for (const Policy& p : atoms) {
        require(p.is_deterministic(), "MixedPolicy: atoms must be deterministic");
        require(p.n_states() == atoms.front().n_states() &&
                    p.n_actions() == atoms.front().n_actions(),
                "MixedPolicy: atoms must share state/action counts");
    }
    check_distribution(weights, kDistTol, "MixedPolicy: weights");
}

ValueReport evaluate(const TabularMdp& m, const Policy& pi) {
    if (!pi.compatible_with(m))
        throw std::invalid_argument("evaluate: policy/model dimension mismatch");
    const int S = m.n_states();
    const int A = m.n_actions();
    const double g = m.gamma();

    Eigen::MatrixXd p_pi = Eigen::MatrixXd::Zero(S, S);
    Eigen::VectorXd r_pi = Eigen::VectorXd::Zero(S);
    for (int s = 0; s < S; ++s) {
        for (int a = 0; a < A; ++a) {
            const double w = pi.prob(s, a);
            if (w == 0.0) continue;
            r_pi(s) += w * m.r(s, a);
            for (int s2 = 0; s2 < S; ++s2) p_pi(s, s2) += w * m.p(s, a, s2);
        }
    }

    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(S, S);
    Eigen::VectorXd v = (eye - g * p_pi).partialPivLu().solve(r_pi);

    Eigen::VectorXd rho(S);
    for (int s = 0; s < S; ++s) rho(s) = m.initial(s);
    Eigen::VectorXd nu =
        (eye - g * p_pi.transpose()).partialPivLu().solve((1.0 - g) * rho);

    ValueReport rep;
    rep.v.assign(v.data(), v.data() + S);
    rep.j = rho.dot(v);
    rep.q.resize(std::size_t(S) * A);
    rep.occupancy.resize(std::size_t(S) * A);
    for (int s = 0; s < S; ++s) {
        for (int a = 0; a < A; ++a) {
            double q = m.r(s, a);
            for (int s2 = 0; s2 < S; ++s2) q += g * m.p(s, a, s2) * v(s2);
            rep.q[std::size_t(s) * A + a] = q;
            rep.occupancy[std::size_t(s) * A + a] = nu(s) * pi.prob(s, a);
        }
    }
    return rep;
}

double evaluate_mixed(const TabularMdp& m, const MixedPolicy& mix) {
    double j = 0.0;
    for (std::size_t i = 0; i < mix.atoms.size(); ++i) {
        if (mix.weights[i] == 0.0) continue;
        j += mix.weights[i] * evaluate(m, mix.atoms[i]).j;
    }
    return j;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size())
        throw std::invalid_argument("tv_distance: length mismatch");
    check_distribution(p, 1e-9, "tv_distance: first argument");
    check_distribution(q, 1e-9, "tv_distance: second argument");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
    return 0.5 * sum;
}

GapBound simulation_gap_bound(const TabularMdp& m, const TabularMdp& m_prime,
                              const Policy& pi) {
    if (!m.same_shape(m_prime))
        throw std::invalid_argument(
            "simulation_gap_bound: models must share shape, gamma, and initial distribution");
    const int S = m.n_states();
    const int A = m.n_actions();
    const double g = m.gamma();

    const ValueReport rep = evaluate(m, pi);
    const ValueReport rep_prime = evaluate(m_prime, pi);
    const double lhs = std::abs(rep.j - rep_prime.j);

    double tv_term = 0.0;
    double reward_term = 0.0;
    for (int s = 0; s < S; ++s) {
        for (int a = 0; a < A; ++a) {
            const double w = rep.occupancy[std::size_t(s) * A + a];
            if (w == 0.0) continue;
            tv_term += w * tv_distance(m.transition_row(s, a), m_prime.transition_row(s, a));
            reward_term += w * std::abs(m.r(s, a) - m_prime.r(s, a));
        }
    }
    const double rhs = m.v_max() / (1.0 - g) * tv_term + reward_term / (1.0 - g);
    return {lhs, rhs};
}

} // namespace armor
