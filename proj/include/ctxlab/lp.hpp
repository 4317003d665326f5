#pragma once

#include <vector>

#include "ctxlab/scalar.hpp"

namespace ctxlab {

// Feasibility of {x >= 0 : Ax = b} over the rationals, decided exactly by a
// phase-1 simplex with Bland's rule on dense tableaus. x is a basic feasible
// point when feasible. Artificial columns never re-enter the basis; stopping
// with a positive objective yields a Farkas certificate, so the verdict is
// sound either way.
struct LPResult {
    bool feasible;
    std::vector<BigRat> x;
};
LPResult lp_feasible(std::vector<std::vector<BigRat>> A, std::vector<BigRat> b);

// Rank by exact Gaussian elimination. Consumes the rows.
int matrix_rank(std::vector<std::vector<BigRat>> rows);

}  // namespace ctxlab
