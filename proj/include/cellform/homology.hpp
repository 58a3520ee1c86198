#pragma once

#include <vector>

#include <Eigen/Core>

#include "cellform/complex.hpp"

namespace cellform {

// Rank over the rationals by fraction-free (Bareiss) elimination. Runs in
// 64-bit arithmetic and restarts with arbitrary precision on overflow.
int exact_rank(const Eigen::MatrixXi& matrix);

// b_p = #p-cells - rank boundary_p - rank boundary_{p+1}.
int betti_oracle(const CellComplex& complex, int p);
std::vector<int> betti_numbers(const CellComplex& complex);

}  // namespace cellform
