#pragma once

#include <vector>

namespace armor {

/// Deterministic pure maximin of a payoff matrix (row player maximizes).
/// Ties break to the lowest index: first row maximizing the row minimum,
/// then the first column attaining that row's minimum.
struct PureSolve {
    int row;
    int col;
    double value;
};
PureSolve pure_maximin(const std::vector<std::vector<double>>& payoff);

/**
Certified mixed-strategy solution of a zero-sum matrix game (row player
maximizes). `value` is the returned row mixture's worst-column payoff;
`upper` is the column mixture's best-response payoff; the true game value
lies in [value, upper] and gap = upper - value.
*/
struct MatrixGameSolution {
    std::vector<double> row_strategy;
    std::vector<double> col_strategy;
    double value; // guaranteed payoff of row_strategy (lower bracket)
    double upper; // best-response bound against col_strategy
    double gap;   // upper - value, always >= 0 up to roundoff
};

/**
Solves the game by dense simplex on the standard positive-matrix linear
program, recovering both players' strategies from the final tableau. The
duality gap is then recomputed from the returned strategies against the
original payoff; if it exceeds eps the solver throws, reporting the gap it
achieved.
*/
MatrixGameSolution solve_matrix_game(const std::vector<std::vector<double>>& payoff,
                                     double eps);

} // namespace armor
