#include "armor/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace armor {

namespace {

void validate_payoff(const std::vector<std::vector<double>>& payoff) {
    if (payoff.empty() || payoff.front().empty())
        throw std::invalid_argument("matrix game: empty payoff matrix");
    const std::size_t n = payoff.front().size();
    for (const auto& row : payoff) {
        if (row.size() != n)
            throw std::invalid_argument("matrix game: ragged payoff matrix");
        for (double x : row)
            if (!std::isfinite(x))
                throw std::invalid_argument("matrix game: non-finite payoff entry");
    }
}

} // namespace

PureSolve pure_maximin(const std::vector<std::vector<double>>& payoff) {
    validate_payoff(payoff);
    int best_row = 0;
    int best_col = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < int(payoff.size()); ++i) {
        int col = 0;
        double row_min = payoff[i][0];
        for (int j = 1; j < int(payoff[i].size()); ++j) {
            if (payoff[i][j] < row_min) {
                row_min = payoff[i][j];
                col = j;
            }
        }
        if (row_min > best_value) {
            best_value = row_min;
            best_row = i;
            best_col = col;
        }
    }
    return {best_row, best_col, best_value};
}

MatrixGameSolution solve_matrix_game(const std::vector<std::vector<double>>& payoff,
                                     double eps) {
    validate_payoff(payoff);
    if (!(eps > 0.0)) throw std::invalid_argument("matrix game: eps must be positive");

    const int m = int(payoff.size());
    const int n = int(payoff.front().size());

    // Shift to a strictly positive matrix B = A + shift so the game value is
    // positive and the classical LP normalization applies.
    double lo = payoff[0][0];
    for (const auto& row : payoff)
        for (double x : row) lo = std::min(lo, x);
    const double shift = lo <= 0.0 ? 1.0 - lo : 0.0;

    // LP: maximize sum(w) subject to B w <= 1, w >= 0.  Column strategy
    // y = w / sum(w), row strategy x from the duals, value(B) = 1 / sum(w).
    // The slack basis is feasible, so no phase-1 is needed.
    const int cols = n + m; // structural variables then slacks
    std::vector<std::vector<double>> tab(m, std::vector<double>(cols + 1, 0.0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) tab[i][j] = payoff[i][j] + shift;
        tab[i][n + i] = 1.0;
        tab[i][cols] = 1.0;
    }
    std::vector<double> zrow(cols, 0.0); // reduced costs c_j - z_j
    for (int j = 0; j < n; ++j) zrow[j] = 1.0;
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    constexpr double kEnterTol = 1e-9;
    constexpr double kPivotTol = 1e-11;
    const long max_pivots = 2000 + 200L * (m + n);

    for (long pivot = 0;; ++pivot) {
        // Bland's rule: lowest-index improving column.
        int enter = -1;
        for (int j = 0; j < cols; ++j) {
            if (zrow[j] > kEnterTol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) break;
        if (pivot >= max_pivots)
            throw std::runtime_error("matrix game: simplex pivot budget exhausted");

        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            if (tab[i][enter] <= kPivotTol) continue;
            const double ratio = tab[i][cols] / tab[i][enter];
            if (ratio < best_ratio - 1e-15 ||
                (std::abs(ratio - best_ratio) <= 1e-15 &&
                 (leave < 0 || basis[i] < basis[leave]))) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave < 0)
            throw std::runtime_error("matrix game: LP unbounded (invalid payoff shift)");

        // Pivot on (leave, enter).
        const double piv = tab[leave][enter];
        for (int j = 0; j <= cols; ++j) tab[leave][j] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave) continue;
            const double f = tab[i][enter];
            if (f == 0.0) continue;
            for (int j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
        }
        const double zf = zrow[enter];
        if (zf != 0.0)
            for (int j = 0; j < cols; ++j) zrow[j] -= zf * tab[leave][j];
        basis[leave] = enter;
    }

    std::vector<double> w(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) w[basis[i]] = std::max(tab[i][cols], 0.0);
    std::vector<double> u(m, 0.0); // duals: reduced costs of the slack columns
    for (int i = 0; i < m; ++i) u[i] = std::max(-zrow[n + i], 0.0);

    const double wsum = std::accumulate(w.begin(), w.end(), 0.0);
    const double usum = std::accumulate(u.begin(), u.end(), 0.0);
    if (!(wsum > 0.0) || !(usum > 0.0))
        throw std::runtime_error("matrix game: degenerate LP solution");

    MatrixGameSolution sol;
    sol.col_strategy.resize(n);
    for (int j = 0; j < n; ++j) sol.col_strategy[j] = w[j] / wsum;
    sol.row_strategy.resize(m);
    for (int i = 0; i < m; ++i) sol.row_strategy[i] = u[i] / usum;

    // Certificate from the final strategies against the original payoff.
    double lower = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        double col_payoff = 0.0;
        for (int i = 0; i < m; ++i) col_payoff += sol.row_strategy[i] * payoff[i][j];
        lower = std::min(lower, col_payoff);
    }
    double upper = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        double row_payoff = 0.0;
        for (int j = 0; j < n; ++j) row_payoff += payoff[i][j] * sol.col_strategy[j];
        upper = std::max(upper, row_payoff);
    }
    sol.value = lower;
    sol.upper = upper;
    sol.gap = upper - lower;
    if (!(sol.gap <= eps))
        throw std::runtime_error("matrix game: certified gap " + std::to_string(sol.gap) +
                                 " exceeds tolerance " + std::to_string(eps));
    return sol;
}

} // namespace armor
