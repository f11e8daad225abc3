#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tpadic/degree.hpp"
#include "tpadic/localfield.hpp"
#include "tpadic/numfield.hpp"
#include "tpadic/repset.hpp"

namespace tpadic {

struct PrimeSpec {
  Int p;
  int index = 0;          // position in decompose_prime(K, p)
  int e = 1, f = 1;       // e(E/F), f(E/F) with F the completion of K
  ZPoly unramified;       // absolute tower of E over Q_p; empty means derived
  ZPoly eisenstein;
  std::vector<Int> alpha; // optional primitive element, E-coordinates
};

struct JobConfig {
  ZPoly min_poly;
  std::optional<RatMatrix> basis;
  std::vector<PrimeSpec> primes;
  Int rho;
  Rat eps = 0;
  std::string eps_text = "0";
  std::uint64_t seed = 1;
  int extra_precision = 10;
};

// O_K -> O_F inside O_E, sending theta to the root of min_poly that lies
// over the chosen prime.
class LocalEmbedding {
 public:
  LocalEmbedding() = default;
  LocalEmbedding(const NumberField& K, const PrimeIdealData& P, const LocalField& E, SubField base);
  LocalElem operator()(const LocalField& E, const AlgebraicInt& x) const;
  const LocalElem& theta() const { return theta_; }

 private:
  LocalElem theta_;
  std::vector<LocalElem> basis_;
};

struct LocalSetup {
  PrimeIdealData P;
  SubField base = SubField::Qp;
  int requested_precision = 0;
  std::shared_ptr<const LocalField> E;
  GaloisAction G;
  LocalEmbedding iota;
};

// Builds E_i, its Galois group over F_i and the embedding, guaranteeing that
// embedded elements are known to at least N digits.
LocalSetup setup_local(const NumberField& K, const PrimeSpec& spec, int N);

struct PrimeRun {
  PrimeSpec spec;
  LocalSetup local;
  CConstant cc;
  int k = 0;
  Int m;                  // m_i
  int T = 0;              // e_i m_i
  int N = 0;              // requested precision of the final attempt
  int attempts = 0;
  RepSet A;               // A'_i
  RepSet At;              // subset of size d r
  LocalPoly gt;           // prod (X - alpha) over At
  std::vector<AlgebraicInt> gi;
  int max_derivative_valuation = 0;
  Int derivative_bound;   // d ((x^k - 1)/(x - 1) + c)
  std::vector<std::string> retry_log;
};

struct GlobalPolynomial {
  std::vector<AlgebraicInt> coeffs;  // monic, low to high
  IdealHNF modulus;                  // a = p_0 prod p_i^{m_i}
  long double log_B = 0;             // log(delta_K N(a)^{1/m})
};

struct Construction {
  JobConfig cfg;
  NumberField K;
  Int C;
  DegreePlan plan;
  Int p0;
  PrimeIdealData P0;
  std::vector<AlgebraicInt> g0;
  std::string g0_hash;
  std::vector<PrimeRun> primes;
  GlobalPolynomial g;
};

struct GlobalConstants {
  Int C, d;
  std::vector<PrimeIdealData> P;
  std::vector<Int> x;  // q_i^{f_i}
};

GlobalConstants global_constants(const NumberField& K, const JobConfig& cfg);

Construction construct(const JobConfig& cfg);
// Runs the pipeline with an externally supplied plan (used for small
// multi-prime instances in tests). The plan is checked for consistency.
Construction construct_with_plan(const JobConfig& cfg, const DegreePlan& plan);

// m_i = (d / e_i) ((x^k - 1)/(x - 1) + k + 2c).
Int compute_m(const Int& d, int e_rel, const Int& x, int k, const Int& c);

// Pieces of the pipeline, exposed for tests.
LocalPoly build_local_poly(const LocalField& E, SubField base, const RepSet& At);
std::vector<AlgebraicInt> approximate_to_global(const NumberField& K, const LocalSetup& L, const LocalPoly& gt,
                                                const Int& m);
AlgebraicInt approximate_element(const NumberField& K, const LocalSetup& L, const LocalElem& y, const Int& m);
std::vector<AlgebraicInt> choose_g0(const NumberField& K, const PrimeIdealData& P0, std::size_t degree,
                                    std::uint64_t seed);
Int smallest_excluded_prime(const std::vector<PrimeSpec>& primes);
std::string poly_hash(const std::vector<AlgebraicInt>& coeffs);
GlobalPolynomial crt_merge(const NumberField& K, const PrimeIdealData& P0, const std::vector<AlgebraicInt>& g0,
                           const std::vector<std::pair<const PrimeIdealData*, const PrimeRun*>>& parts);

// Sum over beta != alpha of v(alpha - beta), for every alpha.
std::vector<int> derivative_valuations(const LocalField& E, const std::vector<LocalElem>& roots, int L);

// Resource estimate; throws ResourceError when over budget.
void check_budget(const NumberField& K, const DegreePlan& plan, const std::vector<Int>& m, const std::vector<Int>& norms);

}  // namespace tpadic
