#include "tpadic/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "tpadic/error.hpp"
#include "tpadic/oracle.hpp"

namespace tpadic {

using json = nlohmann::ordered_json;

namespace {

std::string trim_ws(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Int parse_int(const std::string& s, const std::string& what) {
  Int x;
  const std::string t = trim_ws(s);
  if (t.empty() || x.set_str(t[0] == '+' ? t.substr(1) : t, 10) != 0)
    throw InputError("cli", "bad integer for " + what + ": '" + s + "'");
  return x;
}

int parse_small(const std::string& s, const std::string& what) {
  const Int x = parse_int(s, what);
  if (!x.fits_sint_p()) throw InputError("cli", what + " out of range");
  return static_cast<int>(x.get_si());
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim_ws(cur));
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::string w;
  std::istringstream is(s);
  while (is >> w) out.push_back(w);
  return out;
}

std::string S(const Int& x) { return x.get_str(); }
std::string S(long x) { return std::to_string(x); }

json strings(const std::vector<Int>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(S(x));
  return a;
}

json coeff_json(const std::vector<AlgebraicInt>& g) {
  json a = json::array();
  for (const auto& c : g) a.push_back(strings(c.coords));
  return a;
}

const char* base_name(SubField F) {
  switch (F) {
    case SubField::Qp:
      return "Qp";
    case SubField::Unramified:
      return "unramified";
    case SubField::Whole:
      return "whole";
  }
  return "?";
}

json config_json(const JobConfig& cfg) {
  json c;
  c["poly"] = format_poly(cfg.min_poly);
  if (cfg.basis) {
    json rows = json::array();
    for (const auto& row : *cfg.basis) {
      json r = json::array();
      for (const auto& x : row) r.push_back(x.get_str());
      rows.push_back(r);
    }
    c["basis"] = rows;
  } else {
    c["basis"] = nullptr;
  }
  json ps = json::array();
  for (const auto& p : cfg.primes) {
    json q;
    q["p"] = S(p.p);
    q["index"] = S(p.index);
    q["e"] = S(p.e);
    q["f"] = S(p.f);
    q["unramified"] = p.unramified.empty() ? "" : format_poly(p.unramified);
    q["eisenstein"] = p.eisenstein.empty() ? "" : format_poly(p.eisenstein);
    q["alpha"] = strings(p.alpha);
    ps.push_back(q);
  }
  c["primes"] = ps;
  c["rho"] = S(cfg.rho);
  c["epsilon"] = cfg.eps_text;
  c["seed"] = std::to_string(cfg.seed);
  c["extra_precision"] = S(cfg.extra_precision);
  return c;
}

JobConfig config_from_json(const json& c) {
  JobConfig cfg;
  cfg.min_poly = parse_poly(c.at("poly").get<std::string>());
  if (!c.at("basis").is_null()) {
    RatMatrix b;
    for (const auto& row : c.at("basis")) {
      std::vector<Rat> r;
      for (const auto& x : row) r.push_back(parse_rational(x.get<std::string>()));
      b.push_back(r);
    }
    cfg.basis = b;
  }
  for (const auto& q : c.at("primes")) {
    PrimeSpec s;
    s.p = parse_int(q.at("p").get<std::string>(), "p");
    s.index = parse_small(q.at("index").get<std::string>(), "index");
    s.e = parse_small(q.at("e").get<std::string>(), "e");
    s.f = parse_small(q.at("f").get<std::string>(), "f");
    const std::string u = q.at("unramified").get<std::string>(), e = q.at("eisenstein").get<std::string>();
    if (!u.empty()) s.unramified = parse_poly(u);
    if (!e.empty()) s.eisenstein = parse_poly(e);
    for (const auto& a : q.at("alpha")) s.alpha.push_back(parse_int(a.get<std::string>(), "alpha"));
    cfg.primes.push_back(s);
  }
  cfg.rho = parse_int(c.at("rho").get<std::string>(), "rho");
  cfg.eps_text = c.at("epsilon").get<std::string>();
  cfg.eps = parse_rational(cfg.eps_text);
  cfg.seed = std::stoull(c.at("seed").get<std::string>());
  cfg.extra_precision = parse_small(c.at("extra_precision").get<std::string>(), "extra_precision");
  return cfg;
}

json plan_json(const DegreePlan& P) {
  json j;
  j["n"] = S(P.n);
  j["x"] = strings(P.x);
  j["rho"] = S(P.rho);
  j["epsilon"] = P.eps.get_str();
  j["d"] = S(P.d);
  j["C"] = S(P.C);
  j["c"] = S(P.c);
  j["r"] = S(P.r);
  json k = json::array();
  for (int x : P.k) k.push_back(S(x));
  j["k"] = k;
  j["degree"] = S(P.degree);
  j["dirichlet_q"] = std::to_string(P.dirichlet_q);
  return j;
}

double ld(long double x) { return static_cast<double>(x); }

json splitting_json(const SplittingCertificate& s) {
  json j;
  j["prime"] = S(static_cast<long>(s.prime_index));
  j["b"] = S(s.b);
  j["precision"] = S(s.precision);
  j["a_max"] = S(s.a_max);
  j["separation"] = S(s.separation);
  j["lifted_separation"] = S(s.lifted_separation);
  j["degree"] = S(static_cast<long>(s.degree));
  j["certified"] = S(static_cast<long>(s.certified));
  j["pass"] = s.pass();
  json roots = json::array();
  for (const auto& r : s.roots) roots.push_back(json::array({S(r.a), S(r.v_g), S(r.slack3)}));
  j["roots"] = roots;  // [a, v(g(x0)), condition (iii) slack]
  j["failures"] = s.failures;
  return j;
}

int exit_for(const std::exception& e) {
  if (dynamic_cast<const ResourceError*>(&e)) return kResourceExceeded;
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const UnsupportedError*>(&e) ||
      dynamic_cast<const PreconditionError*>(&e) || dynamic_cast<const json::exception*>(&e))
    return kInputRejected;
  return kInternal;
}

const char* kind_of(const std::exception& e) {
  if (dynamic_cast<const ResourceError*>(&e)) return "resource";
  if (dynamic_cast<const InputError*>(&e)) return "input";
  if (dynamic_cast<const UnsupportedError*>(&e)) return "unsupported";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
  if (dynamic_cast<const PrecisionError*>(&e)) return "precision";
  if (dynamic_cast<const InvariantError*>(&e)) return "invariant";
  if (dynamic_cast<const json::exception*>(&e)) return "malformed";
  return "internal";
}

json error_json(const std::exception& e) {
  json j;
  j["kind"] = kind_of(e);
  if (const auto* te = dynamic_cast<const Error*>(&e)) {
    j["module"] = te->module();
    j["cause"] = te->cause();
  } else {
    j["module"] = "cli";
    j["cause"] = e.what();
  }
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cli", "cannot write '" + path + "'");
  os << text;
  if (!os) throw InputError("cli", "write to '" + path + "' failed");
}

int report_error(const std::exception& e, const std::string& out) {
  std::cerr << "error [" << kind_of(e) << "] " << e.what() << "\n";
  if (!out.empty()) {
    json j;
    j["schema"] = 1;
    j["status"] = "error";
    j["error"] = error_json(e);
    try {
      write_file(out, j.dump(2) + "\n");
    } catch (const std::exception&) {
    }
  }
  return exit_for(e);
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cli", "cannot read '" + path + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

ParsedConfig parse_config(const std::string& text) {
  ParsedConfig pc;
  JobConfig& cfg = pc.job;
  std::string section;
  bool have_poly = false, have_rho = false;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) { throw InputError("cli", "config line " + std::to_string(lineno) + ": " + why); };
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim_ws(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim_ws(line.substr(1, line.size() - 2));
      if (section == "prime")
        cfg.primes.emplace_back();
      else if (section != "field" && section != "run")
        fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim_ws(line.substr(0, eq)), val = trim_ws(line.substr(eq + 1));
    if (section == "field") {
      if (key == "poly") {
        cfg.min_poly = parse_poly(val);
        have_poly = true;
      } else if (key == "basis") {
        RatMatrix b;
        for (const auto& row : split(val, ';')) {
          std::vector<Rat> r;
          for (const auto& w : words(row)) r.push_back(parse_rational(w));
          b.push_back(r);
        }
        cfg.basis = b;
      } else {
        fail("unknown key '" + key + "' in [field]");
      }
    } else if (section == "prime") {
      PrimeSpec& s = cfg.primes.back();
      if (key == "p")
        s.p = parse_int(val, "p");
      else if (key == "index")
        s.index = parse_small(val, "index");
      else if (key == "e")
        s.e = parse_small(val, "e");
      else if (key == "f")
        s.f = parse_small(val, "f");
      else if (key == "eisenstein")
        s.eisenstein = parse_poly(val);
      else if (key == "unramified")
        s.unramified = parse_poly(val);
      else if (key == "alpha")
        for (const auto& w : words(val)) s.alpha.push_back(parse_int(w, "alpha"));
      else
        fail("unknown key '" + key + "' in [prime]");
    } else if (section == "run") {
      if (key == "rho") {
        cfg.rho = parse_int(val, "rho");
        have_rho = true;
      } else if (key == "epsilon") {
        cfg.eps = parse_rational(val);
        cfg.eps_text = val;
      } else if (key == "seed") {
        cfg.seed = std::stoull(val);
      } else if (key == "precision.extra") {
        cfg.extra_precision = parse_small(val, "precision.extra");
      } else if (key == "out") {
        pc.out = val;
      } else {
        fail("unknown key '" + key + "' in [run]");
      }
    } else {
      fail("key outside a section");
    }
  }
  if (!have_poly) throw InputError("cli", "config lacks [field] poly");
  if (!have_rho) throw InputError("cli", "config lacks [run] rho");
  for (const auto& s : cfg.primes)
    if (s.p == 0) throw InputError("cli", "a [prime] section lacks p");
  if (cfg.eps < 0 || cfg.eps >= 1) throw InputError("cli", "epsilon must lie in [0, 1)");
  if (cfg.primes.size() > 1 && cfg.eps == 0) throw InputError("cli", "epsilon in (0, 1) is required for n > 1");
  return pc;
}

std::vector<Int> parse_prime_list(const std::string& text) {
  std::vector<Int> out;
  for (const auto& w : split(text, ','))
    if (!w.empty()) out.push_back(parse_int(w, "prime"));
  return out;
}

bool Verification::pass() const {
  if (!global_failures.empty() || !irreducible.pass() || !bound.chain_ok() || !exact) return false;
  for (const auto& s : splitting)
    if (!s.pass()) return false;
  if (exact->value - exact->error > bound.bo_h) return false;
  if (!splitting.empty() && exact->value - exact->error > bound.total) return false;
  if (lower && exact->value + exact->error < *lower) return false;
  return true;
}

Verification verify_construction(const Construction& C, const std::vector<AlgebraicInt>& g, Exec exec) {
  Verification V;
  V.global_failures = global_condition_failures(C, g);
  const bool shaped = g.size() == C.plan.degree.get_ui() + 1;
  for (std::size_t i = 0; i < C.primes.size(); ++i) {
    if (shaped) {
      V.splitting.push_back(verify_splitting(C, i, g, exec));
    } else {
      SplittingCertificate s;
      s.prime_index = i;
      s.failures.push_back("polynomial has the wrong degree");
      V.splitting.push_back(s);
    }
  }
  V.irreducible = verify_irreducible(C.K, C.P0, g, C.g0);
  V.bound = height_bound(height_inputs(C));
  try {
    V.exact = exact_height(C.K, g, 1e-12L, C.g.log_B, exec);
  } catch (const Error& e) {
    V.exact_failure = e.what();
  }
  if (C.K.degree() == 1) {
    std::vector<LocalDegrees> ld;
    for (const auto& r : C.primes) ld.push_back(LocalDegrees{r.spec.p, r.local.P.e * r.spec.e, r.local.P.f * r.spec.f});
    V.lower = lower_bound_value(1, ld);
  }
  return V;
}

std::string render_report(const Construction& C, const Verification& V, const std::string* timing_json) {
  json j;
  j["schema"] = 1;
  j["status"] = V.pass() ? "pass" : "fail";
  j["config"] = config_json(C.cfg);
  json field;
  field["degree"] = S(C.K.degree());
  field["discriminant"] = S(C.K.discriminant());
  field["index"] = S(C.K.index());
  field["log_delta"] = ld(C.K.log_delta());
  j["field"] = field;
  j["plan"] = plan_json(C.plan);

  json primes = json::array();
  long retries = 0;
  for (const auto& r : C.primes) {
    json p;
    p["p"] = S(r.spec.p);
    p["index"] = S(r.spec.index);
    p["e_F"] = S(r.local.P.e);
    p["f_F"] = S(r.local.P.f);
    p["e"] = S(r.spec.e);
    p["f"] = S(r.spec.f);
    p["base"] = base_name(r.local.base);
    p["unramified"] = format_poly(r.local.E->unramified_poly());
    p["eisenstein"] = format_poly(r.local.E->eisenstein_poly());
    p["precision"] = S(r.N);
    p["attempts"] = S(r.attempts);
    p["retries"] = r.retry_log;
    p["k"] = S(r.k);
    p["m"] = S(r.m);
    p["T"] = S(r.T);
    p["c_local"] = S(r.cc.c);
    p["c0"] = S(r.cc.c0);
    p["c1"] = S(r.cc.c1);
    p["repset_size"] = S(static_cast<long>(r.A.elements.size()));
    p["subset_size"] = S(static_cast<long>(r.At.elements.size()));
    p["derivative_max"] = S(r.max_derivative_valuation);
    p["derivative_bound"] = S(r.derivative_bound);
    retries += r.attempts - 1;
    primes.push_back(p);
  }
  j["primes"] = primes;
  json p0;
  p0["p"] = S(C.p0);
  p0["norm"] = S(C.P0.norm);
  p0["residue_poly"] = format_poly(C.P0.residue_poly);
  p0["g0_hash"] = C.g0_hash;
  j["p0"] = p0;
  json g;
  g["degree"] = S(C.plan.degree);
  g["modulus_norm"] = S(C.g.modulus.norm);
  g["log_B"] = ld(C.g.log_B);
  g["coefficients"] = coeff_json(C.g.coeffs);
  j["g"] = g;

  json cert;
  cert["global"] = V.global_failures;
  json sp = json::array();
  for (const auto& s : V.splitting) sp.push_back(splitting_json(s));
  cert["splitting"] = sp;
  json irr;
  irr["congruent"] = V.irreducible.congruent;
  irr["irreducible"] = V.irreducible.irreducible;
  json w = json::array();
  for (auto x : V.irreducible.witness) w.push_back(std::to_string(x));
  irr["witness"] = w;
  cert["irreducible"] = irr;
  j["certificates"] = cert;

  json h;
  h["log_B"] = ld(V.bound.log_B);
  h["anchor"] = ld(V.bound.anchor);
  h["main"] = ld(V.bound.main);
  h["eps_term"] = ld(V.bound.eps_term);
  h["error_term"] = ld(V.bound.error_term);
  h["total"] = ld(V.bound.total);
  h["bo_h"] = ld(V.bound.bo_h);
  h["chain_failures"] = V.bound.chain_failures;
  if (V.exact) {
    h["exact"] = ld(V.exact->value);
    h["exact_error"] = ld(V.exact->error);
    json pl = json::array();
    for (auto x : V.exact->place_log_mahler) pl.push_back(ld(x));
    h["place_log_mahler"] = pl;
  } else {
    h["exact"] = nullptr;
    h["exact_failure"] = V.exact_failure;
  }
  h["lower"] = V.lower ? json(ld(*V.lower)) : json(nullptr);
  j["height"] = h;
  j["retries"] = S(retries);
  if (timing_json) j["timing"] = json::parse(*timing_json);
  return j.dump(2) + "\n";
}

int cmd_construct(const ConstructOptions& opt) {
  std::string out = opt.out;
  try {
    ParsedConfig pc = parse_config(read_text_file(opt.config_path));
    if (opt.seed) pc.job.seed = *opt.seed;
    if (out.empty()) out = pc.out;
    if (out.empty()) throw InputError("cli", "no output path (use --out or [run] out)");
    const auto t0 = std::chrono::steady_clock::now();
    const Construction C = construct(pc.job);
    const auto t1 = std::chrono::steady_clock::now();
    const Verification V = verify_construction(C, C.g.coeffs);
    const auto t2 = std::chrono::steady_clock::now();
    std::string timing;
    if (opt.timing) {
      json t;
      t["construct_seconds"] = std::chrono::duration<double>(t1 - t0).count();
      t["verify_seconds"] = std::chrono::duration<double>(t2 - t1).count();
      timing = t.dump();
    }
    write_file(out, render_report(C, V, opt.timing ? &timing : nullptr));
    std::cout << (V.pass() ? "pass" : "FAIL") << ": degree " << C.plan.degree.get_str();
    if (V.exact) std::cout << ", height " << static_cast<double>(V.exact->value);
    std::cout << ", bound " << static_cast<double>(V.splitting.empty() ? V.bound.bo_h : V.bound.total) << "\n";
    return V.pass() ? kPass : kCertificateFailed;
  } catch (const std::exception& e) {
    return report_error(e, out);
  }
}

int cmd_verify(const VerifyOptions& opt) {
  try {
    json j;
    try {
      j = json::parse(read_text_file(opt.report_path));
    } catch (const json::exception& e) {
      throw InputError("cli", std::string("malformed report: ") + e.what());
    }
    std::vector<std::string> structural;
    if (!j.contains("schema") || j["schema"] != 1) throw InputError("cli", "unsupported report schema");
    if (j.value("status", "") == "error") throw InputError("cli", "report records a failed run");
    const JobConfig cfg = config_from_json(j.at("config"));
    const Construction C = construct(cfg);
    const json rp = plan_json(C.plan);
    if (j.at("plan") != rp) structural.push_back("plan differs from the recomputed plan");
    const json& jp = j.at("primes");
    if (jp.size() != C.primes.size()) {
      structural.push_back("prime count differs");
    } else {
      for (std::size_t i = 0; i < C.primes.size(); ++i) {
        if (jp[i].at("m").get<std::string>() != S(C.primes[i].m)) structural.push_back("m_" + std::to_string(i + 1) + " differs");
        if (jp[i].at("precision").get<std::string>() != S(C.primes[i].N))
          structural.push_back("precision of prime " + std::to_string(i + 1) + " differs");
      }
    }
    if (j.at("p0").at("g0_hash").get<std::string>() != C.g0_hash) structural.push_back("g0 hash differs");
    const json& jg = j.at("g");
    if (jg.at("degree").get<std::string>() != S(C.plan.degree)) structural.push_back("degree field differs from the plan");
    std::vector<AlgebraicInt> g;
    for (const auto& c : jg.at("coefficients")) {
      AlgebraicInt a;
      for (const auto& x : c) a.coords.push_back(parse_int(x.get<std::string>(), "coefficient"));
      if (a.coords.size() != static_cast<std::size_t>(C.K.degree())) throw InputError("cli", "coefficient has the wrong length");
      g.push_back(a);
    }
    if (g.size() != C.plan.degree.get_ui() + 1) structural.push_back("coefficient count differs from degree + 1");
    if (!structural.empty()) {
      for (const auto& s : structural) std::cerr << "structural validation failed: " << s << "\n";
      return kInputRejected;
    }
    const Verification V = verify_construction(C, g);
    for (const auto& f : V.global_failures) std::cerr << "global condition " << f << "\n";
    for (const auto& s : V.splitting)
      for (const auto& f : s.failures) std::cerr << "prime " << s.prime_index + 1 << ": " << f << "\n";
    if (!V.irreducible.pass()) std::cerr << "irreducibility certificate failed\n";
    for (const auto& f : V.bound.chain_failures) std::cerr << "height chain: " << f << "\n";
    if (!V.exact_failure.empty()) std::cerr << "exact height: " << V.exact_failure << "\n";
    std::cout << (V.pass() ? "pass" : "FAIL") << "\n";
    return V.pass() ? kPass : kCertificateFailed;
  } catch (const std::exception& e) {
    return report_error(e, "");
  }
}

int cmd_search(const SearchCliOptions& opt) {
  try {
    if (opt.out.empty()) throw InputError("cli", "no output path (use --out)");
    const SearchRecord rec = search_small_height(opt.primes, opt.deg_max, opt.coeff_bound);
    std::vector<LocalDegrees> ld_primes;
    for (const auto& p : opt.primes) ld_primes.push_back(LocalDegrees{p, 1, 1});
    const long double lower = lower_bound_value(1, ld_primes);
    json j;
    j["schema"] = 1;
    j["primes"] = strings(opt.primes);
    j["deg_max"] = S(opt.deg_max);
    j["coeff_bound"] = S(opt.coeff_bound);
    j["examined"] = std::to_string(rec.examined);
    j["partial"] = rec.partial;
    json sk = json::array();
    for (int d : rec.skipped_degrees) sk.push_back(S(d));
    j["skipped_degrees"] = sk;
    json sv = json::array();
    for (const auto& e : rec.survivors) {
      json s;
      s["poly"] = format_poly(e.poly);
      s["coefficients"] = strings(e.poly);
      s["min_root_height"] = ld(e.min_root_height);
      sv.push_back(s);
    }
    j["survivors"] = sv;
    j["min_height"] = ld(rec.min_height);
    j["min_nonzero_height"] = rec.has_nonzero ? json(ld(rec.min_nonzero_height)) : json(nullptr);
    j["lower_bound"] = ld(lower);
    const bool ok = !rec.has_nonzero || rec.min_nonzero_height >= lower;
    j["lower_bound_respected"] = ok;
    write_file(opt.out, j.dump(2) + "\n");
    std::cout << rec.survivors.size() << " survivors";
    if (rec.has_nonzero) std::cout << ", min nonzero height " << static_cast<double>(rec.min_nonzero_height);
    std::cout << ", lower bound " << static_cast<double>(lower) << (rec.partial ? " (partial)" : "") << "\n";
    return ok ? kPass : kCertificateFailed;
  } catch (const std::exception& e) {
    return report_error(e, opt.out);
  }
}

}  // namespace tpadic
