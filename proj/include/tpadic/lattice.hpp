#pragma once

#include <vector>

#include "tpadic/arith.hpp"

namespace tpadic {

void gram_schmidt(const IntMatrix& b, RatMatrix& bstar, RatMatrix& mu, std::vector<Rat>& norms);

// Classical LLL on the rows of b with exact rational Gram-Schmidt. Every row
// operation is mirrored on companion (same row count) when given.
void lll_reduce(IntMatrix& b, IntMatrix* companion = nullptr, const Rat& delta = Rat(99, 100));

// Size reduction |mu_ij| <= 1/2 and the Lovasz condition, checked exactly.
bool is_lll_reduced(const IntMatrix& b, const Rat& delta = Rat(99, 100));

// Integer coefficients c with target - sum c_i b_i in the Babai
// fundamental domain of the Gram-Schmidt basis.
std::vector<Int> babai_nearest_plane(const IntMatrix& b, const RatMatrix& bstar, const std::vector<Rat>& norms,
                                     std::vector<Rat> target);

}  // namespace tpadic
