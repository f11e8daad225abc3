#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tpadic/arith.hpp"

namespace tpadic {

struct DirichletResult {
  Int r;
  std::vector<int> k;
  std::uint64_t q = 0;  // accepted multiplier
  std::uint64_t Q = 0;
};

// Smallest q in [1, Q^n) with |q alpha_i - k_i| <= 1/Q for
// alpha_i = 2 log(rho) / log(x_i), k_i the nearest integer (halves up).
DirichletResult dirichlet_approx(std::span<const Int> x, const Rat& rho, const Rat& eps);

// Right-hand side of the k_i bound 2^{2n+1} log^n(max x) log(rho) / (log x_i log^n(1+eps)).
long double dirichlet_k_bound(std::span<const Int> x, const Rat& rho, const Rat& eps, std::size_t i);

// Exact check of r >= rho, r <= x_i^{k_i} <= (1+eps) r and the k_i bound.
bool dirichlet_postconditions(std::span<const Int> x, const Rat& rho, const Rat& eps, const DirichletResult& res,
                              std::string* why = nullptr);

struct DegreePlan {
  int n = 0;
  std::vector<Int> x;  // q_i^{f_i}
  Int rho;
  Rat eps;
  Int d;  // prod |G_i|
  Int C;
  Int c;  // 4 C^{n+1}
  Int r;
  std::vector<int> k;
  Int degree;  // d r
  std::uint64_t dirichlet_q = 0;
};

DegreePlan select_degree(int n, std::span<const Int> x, const Int& rho, const Rat& eps, const Int& d, const Int& C);

// Every invariant of a plan, including the degree window.
bool check_plan(const DegreePlan& plan, std::string* why = nullptr);

long double log_int(const Int& x);
long double to_ld(const Rat& x);

}  // namespace tpadic
