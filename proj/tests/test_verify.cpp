#include "blackwell/common.hpp"
#include "blackwell/verify.hpp"

#include <doctest.h>

#include <set>
#include <sstream>
#include <stdexcept>

using namespace blackwell;

namespace {

VerifyConfig quick() {
  VerifyConfig c;
  c.oracle_tuples = 10;
  c.oracle_plays = 2000;
  return c;
}

const CheckDefinition& spec(const std::string& id) {
  for (const auto& s : verification_checks()) {
    if (s.id == id) return s;
  }
  throw std::out_of_range(id);
}

}  // namespace

TEST_CASE("checks are listed in order with budgets") {
  const auto& checks = verification_checks();
  REQUIRE(checks.size() == 11);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    CHECK(checks[i].id == "C" + std::to_string(i + 1));
    CHECK(checks[i].runtime_limit > 0.0);
    ids.insert(checks[i].id);
  }
  CHECK(ids.size() == 11);
}

TEST_CASE("fast checks pass") {
  for (const char* id : {"C1", "C2", "C3", "C6", "C9"}) {
    const auto r = spec(id).run(VerifyConfig{});
    CHECK_MESSAGE(r.pass, id);
    CHECK(r.id == id);
    CHECK(!r.statement.empty());
  }
}

TEST_CASE("Monte Carlo check fails with a zero band") {
  auto config = quick();
  const auto loose = spec("C10").run(config);
  CHECK(loose.pass);
  config.tolerance_scale = 0.0;
  CHECK_FALSE(spec("C10").run(config).pass);
}

TEST_CASE("reports are deterministic and consistent") {
  VerificationReport report;
  for (const char* id : {"C1", "C3", "C9", "C10"}) report.checks.push_back(spec(id).run(quick()));
  report.overall = true;
  for (const auto& c : report.checks) report.overall = report.overall && c.pass;

  VerificationReport again;
  for (const char* id : {"C1", "C3", "C9", "C10"}) again.checks.push_back(spec(id).run(quick()));
  again.overall = report.overall;
  CHECK(report_to_text(report) == report_to_text(again));
  CHECK(report_to_json(report).dump() == report_to_json(again).dump());

  const auto text = report_to_text(report);
  const auto doc = report_to_json(report);
  REQUIRE(doc["checks"].size() == 4);
  for (const auto& c : doc["checks"]) {
    const auto id = c["id"].get<std::string>();
    const auto line = text.substr(text.find(" " + id + " "));
    CHECK(line.find(format_real(c["computed"].get<double>())) != std::string::npos);
    CHECK(line.find(format_real(c["target"].get<double>())) != std::string::npos);
  }
  CHECK(text.find(report.overall ? "overall: PASS" : "overall: FAIL") != std::string::npos);
}
