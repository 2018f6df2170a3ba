#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "dpo/cli/commands.hpp"
#include "dpo/error.hpp"

using namespace dpo;
using namespace dpo::cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(const RunConfig& c) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig periods(std::string model, std::string scheme, std::size_t n, std::string x0 = "") {
  RunConfig c;
  c.command = "periods";
  c.model = std::move(model);
  c.scheme = std::move(scheme);
  c.n = n;
  c.x0 = std::move(x0);
  return c;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(invoke(periods("linear", "midpoint", 15, "0,1")).code == Found);
  CHECK(invoke(periods("linear", "euler", 10, "0,1")).code == EmptyOrFailed);
  CHECK(invoke(periods("nosuchmodel", "midpoint", 5)).code == Usage);
  CHECK(invoke(periods("linear", "nosuchscheme", 5)).code == Usage);
  CHECK(invoke(periods("linear", "midpoint", 5, "1,2,3")).code == Usage);
  RunConfig c;
  c.command = "frobnicate";
  CHECK(invoke(c).code == Usage);

  auto b = periods("cubic", "midpoint", 5, "0,1");
  b.strategy = "groebner";
  ::setenv(kBudgetVariable, "10", 1);
  apply_environment(b);
  ::unsetenv(kBudgetVariable);
  CHECK(b.budget == 10);
  const Run r = invoke(b);
  CHECK(r.code == Budget);
  CHECK(json::parse(r.out)["status"] == "budget-exhausted");

  ::setenv(kBudgetVariable, "lots", 1);
  RunConfig bad;
  CHECK_THROWS_AS(apply_environment(bad), InputError);
  ::unsetenv(kBudgetVariable);
}

TEST_CASE("periods JSON shape") {
  const Run r = invoke(periods("linear", "midpoint", 15, "0,1"));
  const json j = json::parse(r.out);
  CHECK(j["strategy"] == "linear");
  CHECK(j["status"] == "roots-found");
  CHECK(j["certificates"].size() == 7);
  for (const auto& key : {"eliminant", "deflation", "even_substitution", "timing", "stats", "config"})
    CHECK(j.contains(key));
  for (const auto& c : j["certificates"]) {
    CHECK(c.contains("lo"));
    CHECK(c.contains("hi"));
    CHECK(c["multiplicity"] == 1);
  }
  CHECK(j["certificates"][0]["value"].get<double>() == doctest::Approx(30 * std::tan(std::numbers::pi / 15)));
}

TEST_CASE("orbit round trip from a periods result") {
  const json j = json::parse(invoke(periods("linear", "midpoint", 15, "0,1")).out);
  for (std::size_t root = 0; root < 7; ++root) {
    RunConfig c = orbit_from_periods(j, root);
    c.format = Format::Json;
    const Run r = invoke(c);
    REQUIRE(r.code == Found);
    const json o = json::parse(r.out);
    CHECK(o["closure_residual"].get<double>() < 1e-10);
    CHECK(o["points"].size() == 16);
  }
  CHECK_THROWS_AS(orbit_from_periods(j, 7), InputError);

  RunConfig csv = orbit_from_periods(j, 0);
  const Run r = invoke(csv);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "k,t,x,y");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 16);
  CHECK(r.err.find("closure_residual=") != std::string::npos);
}

TEST_CASE("models and oracle commands") {
  RunConfig c;
  c.command = "models";
  const json m = json::parse(invoke(c).out);
  CHECK(m.is_array());
  CHECK(m.size() >= 4);
  c.command = "oracle";
  c.model = "linear";
  c.x0 = "0,1";
  const json o = json::parse(invoke(c).out);
  CHECK(o["period"].get<double>() == doctest::Approx(2 * std::numbers::pi).epsilon(1e-8));
}

TEST_CASE("format parsing") {
  CHECK(parse_format("csv") == Format::Csv);
  CHECK(to_string(Format::Json) == "json");
  CHECK_THROWS_AS(parse_format("xml"), InputError);
}
