#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "tpadic/cli.hpp"
#include "tpadic/error.hpp"

using namespace tpadic;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "tpadic_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

const char* kQ2 = R"(# K = Q, E = Q_2
[field]
poly = x

[prime]
p = 2

[run]
rho = 24
seed = 1
)";

const char* kGauss = R"([field]
poly = x^2 + 1
[prime]
p = 5
index = 0
[run]
rho = 15
)";

const char* kRamified = R"([field]
poly = x
[prime]
p = 3
e = 2
eisenstein = x^2 - 3
[run]
rho = 9
)";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config parsing") {
    const ParsedConfig c = parse_config(kQ2);
    CHECK(c.job.min_poly == parse_poly("x"));
    REQUIRE(c.job.primes.size() == 1);
    CHECK(c.job.primes[0].p == 2);
    CHECK(c.job.rho == 24);
    const ParsedConfig b = parse_config("[field]\npoly = x^2 - 5\nbasis = 1 0; 1/2 1/2\n[run]\nrho = 3\nepsilon = 0.25\nout = r.json\n");
    REQUIRE(b.job.basis);
    CHECK((*b.job.basis)[1][0] == Rat(1, 2));
    CHECK(b.job.eps == Rat(1, 4));
    CHECK(b.out == "r.json");
  }

  TEST_CASE("config errors carry line numbers") {
    try {
      parse_config("[field]\npoly = x\n[run]\nrho = 24\nbogus = 1\n");
      FAIL("expected rejection");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("line 5") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("[run]\nrho = 24\n"), InputError);
    CHECK_THROWS_AS(parse_config("[field]\npoly = x\n"), InputError);
    CHECK_THROWS_AS(parse_config("[field]\npoly = x\n[run]\nrho = 24\nepsilon = 1.5\n"), InputError);
    CHECK_THROWS_AS(parse_config("[field]\npoly = x\n[prime]\np = 2\n[prime]\np = 3\n[run]\nrho = 99\n"), InputError);
    CHECK_THROWS_AS(parse_config("[nope]\n"), InputError);
  }

  TEST_CASE("prime lists") {
    CHECK(parse_prime_list("2,3") == std::vector<Int>{2, 3});
    CHECK(parse_prime_list("").empty());
    CHECK_THROWS(parse_prime_list("2,x"));
  }

  TEST_CASE("construct then verify round-trips") {
    for (const auto& [name, text] : {std::pair{"q2", kQ2}, {"gauss", kGauss}, {"ramified", kRamified}}) {
      INFO(name);
      const fs::path cfg = scratch(std::string(name) + ".cfg"), out = scratch(std::string(name) + ".json");
      write(cfg, text);
      ConstructOptions co;
      co.config_path = cfg.string();
      co.out = out.string();
      CHECK(cmd_construct(co) == kPass);
      VerifyOptions vo;
      vo.report_path = out.string();
      CHECK(cmd_verify(vo) == kPass);
    }
  }

  TEST_CASE("reports are byte-identical across runs") {
    const fs::path cfg = scratch("det.cfg"), a = scratch("det_a.json"), b = scratch("det_b.json");
    write(cfg, kQ2);
    ConstructOptions co;
    co.config_path = cfg.string();
    co.out = a.string();
    REQUIRE(cmd_construct(co) == kPass);
    co.out = b.string();
    REQUIRE(cmd_construct(co) == kPass);
    CHECK(read_text_file(a.string()) == read_text_file(b.string()));
    co.seed = 5;
    co.out = b.string();
    REQUIRE(cmd_construct(co) == kPass);
    CHECK(read_text_file(a.string()) != read_text_file(b.string()));
  }

  TEST_CASE("edited reports are rejected") {
    const fs::path cfg = scratch("edit.cfg"), out = scratch("edit.json");
    write(cfg, kQ2);
    ConstructOptions co;
    co.config_path = cfg.string();
    co.out = out.string();
    REQUIRE(cmd_construct(co) == kPass);
    const auto j = nlohmann::ordered_json::parse(read_text_file(out.string()));
    VerifyOptions vo;

    auto coeff = j;
    auto& c = coeff["g"]["coefficients"][3][0];
    c = Int(Int(c.get<std::string>()) + 1).get_str();
    write(scratch("coeff.json"), coeff.dump(2));
    vo.report_path = scratch("coeff.json").string();
    CHECK(cmd_verify(vo) == kCertificateFailed);

    auto deg = j;
    deg["g"]["degree"] = "31";
    write(scratch("deg.json"), deg.dump(2));
    vo.report_path = scratch("deg.json").string();
    CHECK(cmd_verify(vo) == kInputRejected);

    auto short_g = j;
    short_g["g"]["coefficients"].erase(0);
    write(scratch("short.json"), short_g.dump(2));
    vo.report_path = scratch("short.json").string();
    CHECK(cmd_verify(vo) == kInputRejected);

    write(scratch("garbage.json"), "{ not json");
    vo.report_path = scratch("garbage.json").string();
    CHECK(cmd_verify(vo) == kInputRejected);
  }

  TEST_CASE("rejected input writes an error document") {
    const fs::path cfg = scratch("low.cfg"), out = scratch("low.json");
    write(cfg, "[field]\npoly = x\n[prime]\np = 2\n[run]\nrho = 2\n");
    ConstructOptions co;
    co.config_path = cfg.string();
    co.out = out.string();
    CHECK(cmd_construct(co) == kInputRejected);
    const auto j = nlohmann::json::parse(read_text_file(out.string()));
    CHECK(j["schema"] == 1);
    CHECK(j["status"] == "error");
    CHECK(j["error"]["module"] == "degree");
  }

  TEST_CASE("over-budget input maps to its own exit code") {
    const fs::path cfg = scratch("big.cfg"), out = scratch("big.json");
    write(cfg, "[field]\npoly = x\n[prime]\np = 2\n[prime]\np = 3\n[run]\nrho = 27\nepsilon = 0.5\n");
    ConstructOptions co;
    co.config_path = cfg.string();
    co.out = out.string();
    CHECK(cmd_construct(co) == kResourceExceeded);
  }

  TEST_CASE("search records") {
    SearchCliOptions so;
    so.primes = {2, 3};
    so.deg_max = 2;
    so.coeff_bound = 5;
    so.out = scratch("s23.json").string();
    CHECK(cmd_search(so) == kPass);
    const auto j = nlohmann::json::parse(read_text_file(so.out));
    CHECK(j["lower_bound_respected"] == true);
    CHECK(j["min_nonzero_height"].get<double>() >= 0.5 * (std::log(2.0) / 3 + std::log(3.0) / 4));

    so.primes.clear();
    so.out = scratch("s0.json").string();
    CHECK(cmd_search(so) == kPass);
    const auto k = nlohmann::json::parse(read_text_file(so.out));
    CHECK(k["min_height"].get<double>() == 0.0);
  }
}
