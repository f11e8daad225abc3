#pragma once

#include <cstdint>
#include <vector>

#include "tpadic/roots.hpp"
#include "tpadic/zpoly.hpp"

namespace tpadic {

// Number of roots of a squarefree integer polynomial in Z_p, by recursive
// lifting. Throws PrecisionError when the recursion depth exceeds N/2.
int count_padic_roots(const ZPoly& f, const Int& p, int N);

struct SearchEntry {
  ZPoly poly;
  long double min_root_height = 0;  // min over irreducible factors
  long double max_error = 0;
};

struct SearchRecord {
  std::vector<Int> primes;
  int deg_max = 0;
  long coeff_bound = 0;
  std::vector<SearchEntry> survivors;  // by degree, then lexicographic coefficients
  long double min_height = 0;          // over all survivors; 0 if none
  long double min_nonzero_height = 0;  // smallest factor height above 1e-9; 0 if none
  bool has_nonzero = false;
  bool partial = false;                // some degree skipped for budget
  std::vector<int> skipped_degrees;
  std::uint64_t examined = 0;
};

struct SearchOptions {
  long double budget = 1e8;  // (2H+1)^deg per degree
  Exec exec = Exec::parallel;
};

SearchRecord search_small_height(const std::vector<Int>& primes, int deg_max, long H, SearchOptions opt = {});

// True when f has deg f roots in Z_p (counted with the squarefree recursion).
bool splits_completely(const ZPoly& f, const Int& p);

}  // namespace tpadic
