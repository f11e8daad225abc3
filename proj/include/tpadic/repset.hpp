#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tpadic/localfield.hpp"

namespace tpadic {

struct CConstant {
  int c = 0, c0 = 0, c1 = 0;
  LocalElem alpha;  // unit primitive element with O_E = O_F[alpha]
  LocalElem theta;  // element of O_F with v_p(theta) = 1
};

// fallback: primitive element tried when the standard generators fail.
CConstant c_constant(const LocalField& E, const GaloisAction& G, int d, const LocalElem* fallback = nullptr);

// Galois-invariant representative set. Elements are stored orbit by orbit;
// orbit i occupies positions [i |G|, (i+1) |G|) in the order of G.auts.
struct RepSet {
  std::vector<LocalElem> elements;
  int k = 0, c = 0, d = 0, group_order = 1;
  std::size_t orbit_count() const { return elements.size() / static_cast<std::size_t>(group_order); }
};

RepSet build_repset(const LocalField& E, const GaloisAction& G, const CConstant& cc, int d, int k);

struct RepSetCheck {
  bool invariant = false;     // (1)
  bool orbit_lengths = false; // (2)
  bool d_to_one = false;      // (3)
  bool injective = false;     // (4) at level k + c
  bool monotone = false;      // (4) at level k + c + 5
  bool ok() const { return invariant && orbit_lengths && d_to_one && injective && monotone; }
};

// Exhaustive check of the four defining properties. With full = false the
// cover property (3) is checked as "at most d-to-1" (for subsets).
RepSetCheck check_repset(const LocalField& E, const GaloisAction& G, const RepSet& A, bool full = true);

// Union of the first count / |G| orbits.
RepSet select_invariant_subset(const LocalField& E, const GaloisAction& G, const RepSet& A, std::size_t count);

// max over x != y of v(x - y), capped at L (L means "congruent mod P^L").
int max_pairwise_valuation(const LocalField& E, std::span<const LocalElem> xs, int L);

}  // namespace tpadic
