#pragma once

#include <vector>

#include "tpadic/zpoly.hpp"

namespace tpadic {

// Irreducible monic factors of a squarefree monic integer polynomial, sorted by
// degree then by coefficients. Uses a mod-p irreducibility certificate when one
// exists, otherwise combines isolated complex roots and confirms every factor
// by exact division.
std::vector<ZPoly> factor_monic(const ZPoly& f);

bool is_irreducible_over_q(const ZPoly& f);

}  // namespace tpadic
