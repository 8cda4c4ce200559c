#include "armor/version_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace armor {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

ModelClass::ModelClass(std::vector<TabularMdp> models_in, std::optional<int> truth_index_in)
    : models(std::move(models_in)), truth_index(truth_index_in) {
    if (models.empty()) throw std::invalid_argument("ModelClass: empty model list");
    for (const TabularMdp& m : models)
        if (!m.same_shape(models.front()))
            throw std::invalid_argument(
                "ModelClass: models must share shape, gamma, and initial distribution");
    if (truth_index) {
        if (*truth_index < 0 || *truth_index >= size())
            throw std::invalid_argument("ModelClass: truth_index out of range");
    }
}

bool VersionSpace::contains(int model_index) const {
    return std::find(member_indices.begin(), member_indices.end(), model_index) !=
           member_indices.end();
}

LossParts loss_parts(const TabularMdp& m, const Dataset& d) {
    double ll = 0.0;
    double sq = 0.0;
    for (const Transition& t : d.transitions) {
        if (t.s >= m.n_states() || t.a >= m.n_actions() || t.s_next >= m.n_states())
            throw std::out_of_range("loss: transition index outside the model");
        const double p = m.p(t.s, t.a, t.s_next);
        if (p <= 0.0) {
            ll = kNegInf;
        } else if (ll != kNegInf) {
            ll += std::log(p);
        }
        const double dr = m.r(t.s, t.a) - t.r;
        sq += dr * dr;
    }
    return {ll, sq};
}

double loss(const TabularMdp& m, const Dataset& d) {
    const LossParts parts = loss_parts(m, d);
    if (parts.log_likelihood == kNegInf) return kNegInf;
    return parts.log_likelihood - parts.squared_error;
}

VersionSpace version_space_from_losses(std::vector<double> losses, double alpha) {
    if (!(alpha >= 0.0))
        throw std::invalid_argument("version space: alpha must be non-negative");
    if (losses.empty()) throw std::invalid_argument("version space: no losses");

    double max_loss = kNegInf;
    for (double l : losses) max_loss = std::max(max_loss, l);
    if (max_loss == kNegInf)
        throw std::runtime_error(
            "version space: every model assigns zero likelihood to the data");

    VersionSpace vs;
    vs.losses = std::move(losses);
    vs.alpha = alpha;
    vs.max_loss = max_loss;
    for (int i = 0; i < int(vs.losses.size()); ++i)
        if (std::isfinite(vs.losses[i]) && max_loss - vs.losses[i] <= alpha)
            vs.member_indices.push_back(i);
    return vs;
}

VersionSpace build_version_space(const ModelClass& mc, const Dataset& d, double alpha) {
    std::vector<double> losses;
    losses.reserve(mc.models.size());
    for (const TabularMdp& m : mc.models) losses.push_back(loss(m, d));
    return version_space_from_losses(std::move(losses), alpha);
}

double alpha_from_theory(long class_size, double delta, double c) {
    if (class_size < 1) throw std::invalid_argument("alpha_from_theory: class_size < 1");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("alpha_from_theory: delta must lie in (0, 1]");
    if (!(c >= 1.0)) throw std::invalid_argument("alpha_from_theory: c must be at least 1");
    return c * std::log(double(class_size) / delta);
}

double on_support_error(const TabularMdp& m, const TabularMdp& m_star,
                        std::span<const double> w) {
    if (!m.same_shape(m_star))
        throw std::invalid_argument("on_support_error: model shape mismatch");
    const int S = m.n_states();
    const int A = m.n_actions();
    if (w.size() != std::size_t(S) * A)
        throw std::invalid_argument("on_support_error: weight table has wrong size");
    double total = 0.0;
    for (int s = 0; s < S; ++s) {
        for (int a = 0; a < A; ++a) {
            const double weight = w[std::size_t(s) * A + a];
            if (weight == 0.0) continue;
            const double tv = tv_distance(m.transition_row(s, a), m_star.transition_row(s, a));
            const double dr = m.r(s, a) - m_star.r(s, a);
            total += weight * (tv * tv + dr * dr);
        }
    }
    return total;
}

double on_support_error(const TabularMdp& m, const TabularMdp& m_star,
                        const BehaviorDistribution& w) {
    if (!w.compatible_with(m))
        throw std::invalid_argument("on_support_error: weight/model dimension mismatch");
    return on_support_error(m, m_star, std::span<const double>(w.weights()));
}

double concentrability(const ModelClass& mc, const Policy& pi,
                       const BehaviorDistribution& mu, const TabularMdp& m_star) {
    if (!pi.compatible_with(m_star) || !mu.compatible_with(m_star))
        throw std::invalid_argument("concentrability: dimension mismatch");
    const std::vector<double> d_pi = evaluate(m_star, pi).occupancy;

    double sup = 0.0;
    for (const TabularMdp& m : mc.models) {
        const double num = on_support_error(m, m_star, std::span<const double>(d_pi));
        if (num == 0.0) continue; // zero numerator contributes 0, 0/0 included
        const double den = on_support_error(m, m_star, mu);
        if (den == 0.0) return std::numeric_limits<double>::infinity();
        sup = std::max(sup, num / den);
    }
    return sup;
}

} // namespace armor
