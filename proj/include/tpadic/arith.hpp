#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <string>
#include <vector>

namespace tpadic {

using Int = mpz_class;
using Rat = mpq_class;
using IntMatrix = std::vector<std::vector<Int>>;
using RatMatrix = std::vector<std::vector<Rat>>;

inline constexpr int kInfiniteValuation = INT_MAX;

Int ipow(const Int& base, unsigned long exp);

// v_p(x); kInfiniteValuation for x = 0.
int vp(const Int& x, const Int& p);

// Representative in [0, m).
Int mod_floor(const Int& a, const Int& m);

// floor(a / b + 1/2) for b > 0.
Int round_div(const Int& a, const Int& b);
Int round_rat(const Rat& x);

// Inverse of a modulo m; throws InvariantError if not invertible.
Int inv_mod(const Int& a, const Int& m);

long bit_length(const Int& x);

bool is_prime(std::uint64_t n);
std::uint64_t next_prime(std::uint64_t n);  // smallest prime > n

// Exact determinant by fraction-free elimination.
Int det(IntMatrix a);
Rat det(RatMatrix a);

// Exact rational from a decimal literal such as "0.5", "-3", "1/3" or "2e-1".
Rat parse_rational(const std::string& s);

std::string to_string(const Int& x);

}  // namespace tpadic
