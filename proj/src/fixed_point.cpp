#include "armor/fixed_point.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace armor {

namespace {

void validate_inputs(const std::vector<TabularMdp>& models,
                     const std::vector<Policy>& policies) {
    if (models.empty()) throw std::invalid_argument("fixed_point: no models");
    if (policies.empty()) throw std::invalid_argument("fixed_point: no policies");
}

std::vector<int> validated_subset(const PsiSpec& spec, int n_models) {
    if (spec.subset.empty())
        throw std::invalid_argument("PsiSpec: subset must be non-empty");
    for (int idx : spec.subset)
        if (idx < 0 || idx >= n_models)
            throw std::invalid_argument("PsiSpec: subset index out of range");
    return spec.subset;
}

} // namespace

PsiSpec PsiSpec::zero(std::vector<int> subset) {
    return {PsiKind::zero, std::nullopt, std::nullopt, std::move(subset)};
}

PsiSpec PsiSpec::neg_ref_return(Policy pi_ref, std::vector<int> subset) {
    return {PsiKind::neg_ref_return, std::move(pi_ref), std::nullopt, std::move(subset)};
}

PsiSpec PsiSpec::neg_optimal_return(std::vector<int> subset) {
    return {PsiKind::neg_optimal_return, std::nullopt, std::nullopt, std::move(subset)};
}

PsiSpec PsiSpec::singleton(int model_id) {
    return {PsiKind::singleton, std::nullopt, model_id, {model_id}};
}

std::vector<int> all_model_indices(int n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

Policy optimal_policy_of(const TabularMdp& m, const std::vector<Policy>& policies) {
    if (policies.empty()) throw std::invalid_argument("optimal_policy_of: no policies");
    int best = 0;
    double best_j = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < int(policies.size()); ++i) {
        const double j = evaluate(m, policies[i]).j;
        if (j > best_j) {
            best_j = j;
            best = i;
        }
    }
    return policies[best];
}

SolveResult psi_policy(const std::vector<TabularMdp>& models, const PsiSpec& spec,
                       const std::vector<Policy>& policies) {
    validate_inputs(models, policies);
    const std::vector<int> subset = validated_subset(spec, int(models.size()));

    std::vector<double> psi(subset.size(), 0.0);
    switch (spec.kind) {
    case PsiKind::zero:
        break;
    case PsiKind::neg_ref_return: {
        if (!spec.pi_ref)
            throw std::invalid_argument("psi_policy: neg_ref_return needs a reference policy");
        for (std::size_t jj = 0; jj < subset.size(); ++jj)
            psi[jj] = -evaluate(models[subset[jj]], *spec.pi_ref).j;
        break;
    }
    case PsiKind::neg_optimal_return: {
        for (std::size_t jj = 0; jj < subset.size(); ++jj) {
            const TabularMdp& m = models[subset[jj]];
            psi[jj] = -evaluate(m, optimal_policy_of(m, policies)).j;
        }
        break;
    }
    case PsiKind::singleton: {
        if (!spec.model_id)
            throw std::invalid_argument("psi_policy: singleton needs a model id");
        if (subset.size() != 1 || subset.front() != *spec.model_id)
            throw std::invalid_argument("psi_policy: singleton subset must be {model_id}");
        break;
    }
    }

    std::vector<std::vector<double>> payoff(policies.size(),
                                            std::vector<double>(subset.size(), 0.0));
    for (std::size_t i = 0; i < policies.size(); ++i)
        for (std::size_t jj = 0; jj < subset.size(); ++jj)
            payoff[i][jj] = evaluate(models[subset[jj]], policies[i]).j + psi[jj];

    const PureSolve s = pure_maximin(payoff);
    SolveResult res;
    res.policy = policies[s.row];
    res.value = s.value;
    res.worst_model = subset[s.col];
    return res;
}

std::pair<Policy, int> optimistic_policy(const std::vector<TabularMdp>& models,
                                         const std::vector<Policy>& policies) {
    validate_inputs(models, policies);
    int best_pi = 0;
    int best_model = 0;
    double best_j = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < int(policies.size()); ++i) {
        for (int j = 0; j < int(models.size()); ++j) {
            const double val = evaluate(models[j], policies[i]).j;
            if (val > best_j) {
                best_j = val;
                best_pi = i;
                best_model = j;
            }
        }
    }
    return {policies[best_pi], best_model};
}

double improvement_certificate(const Policy& pi_ref, const std::vector<TabularMdp>& models,
                               const std::vector<Policy>& policies) {
    validate_inputs(models, policies);
    std::vector<double> ref_j(models.size());
    for (std::size_t j = 0; j < models.size(); ++j) ref_j[j] = evaluate(models[j], pi_ref).j;

    double best = -std::numeric_limits<double>::infinity();
    for (const Policy& candidate : policies) {
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < models.size(); ++j)
            worst = std::min(worst, evaluate(models[j], candidate).j - ref_j[j]);
        best = std::max(best, worst);
    }
    return best;
}

std::pair<bool, double> is_fixed_point(const Policy& pi, const std::vector<TabularMdp>& models,
                                       const std::vector<Policy>& policies, double tol) {
    const double certificate = improvement_certificate(pi, models, policies);
    return {std::abs(certificate) <= tol, certificate};
}

} // namespace armor
