#include <iostream>

#include <CLI11.hpp>

#include "tpadic/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Totally p-adic algebraic numbers of small height"};
  app.require_subcommand(1);

  tpadic::ConstructOptions co;
  std::uint64_t seed = 0;
  auto* construct = app.add_subcommand("construct", "build a polynomial and write a certified report");
  construct->add_option("--config", co.config_path, "job description")->required()->check(CLI::ExistingFile);
  auto* seed_opt = construct->add_option("--seed", seed, "seed for the choice of g0");
  construct->add_option("--out", co.out, "report path (overrides [run] out)");
  construct->add_flag("--timing", co.timing, "record wall-clock timings in the report");

  tpadic::VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "re-check every certificate of a report");
  verify->add_option("--report", vo.report_path, "report written by construct")->required();

  tpadic::SearchCliOptions so;
  std::string primes;
  auto* search = app.add_subcommand("search", "enumerate small-height totally p-adic polynomials over Q");
  search->add_option("--primes", primes, "comma-separated primes, e.g. 2,3")->required();
  search->add_option("--deg-max", so.deg_max, "largest degree")->check(CLI::PositiveNumber);
  search->add_option("--coeff-bound", so.coeff_bound, "bound on |coefficient|")->check(CLI::NonNegativeNumber);
  search->add_option("--out", so.out, "record path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : tpadic::kInputRejected;
  }

  if (*construct) {
    if (*seed_opt) co.seed = seed;
    return tpadic::cmd_construct(co);
  }
  if (*verify) return tpadic::cmd_verify(vo);
  try {
    so.primes = tpadic::parse_prime_list(primes);
  } catch (const std::exception& e) {
    std::cerr << "error [input] " << e.what() << "\n";
    return tpadic::kInputRejected;
  }
  return tpadic::cmd_search(so);
}
