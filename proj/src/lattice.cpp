#include "tpadic/lattice.hpp"

#include <utility>

#include "tpadic/error.hpp"

namespace tpadic {

namespace {

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<Rat> to_rat(const std::vector<Int>& v) {
  std::vector<Rat> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

}  // namespace

void gram_schmidt(const IntMatrix& b, RatMatrix& bstar, RatMatrix& mu, std::vector<Rat>& norms) {
  const std::size_t n = b.size();
  bstar.assign(n, {});
  mu.assign(n, std::vector<Rat>(n, Rat(0)));
  norms.assign(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) {
    bstar[i] = to_rat(b[i]);
    std::vector<Rat> bi = bstar[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (norms[j] == 0) continue;
      mu[i][j] = dot(bi, bstar[j]) / norms[j];
      for (std::size_t k = 0; k < bi.size(); ++k) bstar[i][k] -= mu[i][j] * bstar[j][k];
    }
    norms[i] = dot(bstar[i], bstar[i]);
  }
}

void lll_reduce(IntMatrix& b, IntMatrix* companion, const Rat& delta) {
  const std::size_t n = b.size();
  if (n <= 1) return;
  RatMatrix bstar, mu;
  std::vector<Rat> norms;
  gram_schmidt(b, bstar, mu, norms);
  for (std::size_t i = 0; i < n; ++i)
    if (norms[i] == 0) throw InvariantError("lattice", "LLL input rows are linearly dependent");

  auto sub_row = [&](std::size_t k, std::size_t j, const Int& q) {
    for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= q * b[j][t];
    if (companion)
      for (std::size_t t = 0; t < (*companion)[k].size(); ++t) (*companion)[k][t] -= q * (*companion)[j][t];
    for (std::size_t l = 0; l < j; ++l) mu[k][l] -= Rat(q) * mu[j][l];
    mu[k][j] -= Rat(q);
  };

  std::size_t k = 1;
  long guard = 0;
  while (k < n) {
    if (++guard > 1000000) throw InvariantError("lattice", "LLL did not terminate");
    for (std::size_t j = k; j-- > 0;) {
      Int q = round_rat(mu[k][j]);
      if (q != 0) sub_row(k, j, q);
    }
    Rat lhs = norms[k];
    Rat rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      if (companion) std::swap((*companion)[k], (*companion)[k - 1]);
      gram_schmidt(b, bstar, mu, norms);
      k = k > 1 ? k - 1 : 1;
    }
  }
}

bool is_lll_reduced(const IntMatrix& b, const Rat& delta) {
  RatMatrix bstar, mu;
  std::vector<Rat> norms;
  gram_schmidt(b, bstar, mu, norms);
  const Rat half(1, 2);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs(mu[i][j]) > half) return false;
  for (std::size_t k = 1; k < b.size(); ++k)
    if (norms[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) return false;
  return true;
}

std::vector<Int> babai_nearest_plane(const IntMatrix& b, const RatMatrix& bstar, const std::vector<Rat>& norms,
                                     std::vector<Rat> target) {
  const std::size_t n = b.size();
  std::vector<Int> c(n);
  for (std::size_t i = n; i-- > 0;) {
    c[i] = round_rat(dot(target, bstar[i]) / norms[i]);
    if (c[i] != 0)
      for (std::size_t t = 0; t < target.size(); ++t) target[t] -= Rat(c[i] * b[i][t]);
  }
  return c;
}

}  // namespace tpadic
