#include "cartan/verification.hpp"
#include "doctest.h"

using namespace cartan;

namespace {

bool all_pass(const Ledger& l) {
  for (const auto& c : l)
    if (c.status != CheckStatus::Pass || !all_pass(c.prerequisites)) return false;
  return true;
}

nlohmann::json strip_times(nlohmann::json j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [k, v] : j.items()) v = strip_times(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_times(v);
  }
  return j;
}

}  // namespace

TEST_CASE("lemma checks") {
  for (auto [fam, p, n] : {std::tuple{Family::K, 5u, 3u}, std::tuple{Family::H, 5u, 2u}, std::tuple{Family::H, 7u, 2u}}) {
    auto l = verify_lemmas(fam, p, n);
    CAPTURE(ledger_table(l));
    CHECK(all_pass(l));
    CHECK(l.size() > 5);
  }
  auto k = verify_lemmas(Family::K, 5, 3);
  bool saw_cartan = false;
  for (const auto& c : k)
    if (c.id.rfind("cartan-subalgebra", 0) == 0) {
      saw_cartan = true;
      CHECK(c.computed == "5");
    }
  CHECK(saw_cartan);
}

TEST_CASE("structure checks") {
  auto l = verify_structure(Family::H, 5, 2);
  CHECK(all_pass(l));
  std::vector<std::string> ids;
  for (const auto& c : l) ids.push_back(c.id);
  for (const char* want : {"antisymmetry", "jacobi", "grading", "weights", "closure"}) {
    CAPTURE(want);
    CHECK(std::any_of(ids.begin(), ids.end(), [&](const std::string& s) { return s.find(want) != std::string::npos; }));
  }
}

TEST_CASE("theorem checks on H(2)") {
  for (std::uint32_t p : {5u, 7u}) {
    auto c = verify_theorem_H(p, 2);
    CAPTURE(ledger_table({c}));
    CHECK(c.status == CheckStatus::Pass);
    CHECK(c.computed == "3");
    CHECK(c.expected == "3");
    CHECK(c.prerequisites.size() >= 4);
  }
  CHECK_THROWS(verify_theorem_K(4, 3));
  CHECK_THROWS(verify_theorem_H(5, 3));
}

TEST_CASE("a theorem check that does not fit the budget is skipped") {
  VerifyOptions o;
  o.limits.memory_budget = 4096;
  auto c = verify_theorem_H(5, 2, o);
  CHECK(c.status == CheckStatus::Skipped);
  CHECK(c.computed == "skipped: out of budget");
  CHECK(ledger_passed({c}));
}

TEST_CASE("cocycle checks") {
  auto h2 = LieAlgebraModel::make(Family::H, 5, 2);
  CHECK(verify_cocycle("Sq:x1", h2).status == CheckStatus::Pass);
  auto phi = verify_cocycle("Phi", h2);
  CHECK(phi.status == CheckStatus::Pass);
  CHECK(phi.detail.find("selected") != std::string::npos);
  auto delta = verify_cocycle("Delta", h2);
  CHECK(delta.status == CheckStatus::Fail);
  CHECK(delta.computed == "not alternating");
  CHECK_THROWS_AS(verify_cocycle("Xi", h2), std::domain_error);
  auto ups = verify_cocycle("Upsilon:1", h2, VerifyOptions{.experimental = true});
  CHECK(ups.experimental);
  CHECK(ups.provenance == Provenance::Derived);
}

TEST_CASE("sampled check of Xi") {
  auto h6 = LieAlgebraModel::make(Family::H, 5, 6);
  VerifyOptions o;
  o.samples = 3000;
  auto c = verify_xi_sampled(h6, o);
  CAPTURE(c.detail);
  CHECK(c.status == CheckStatus::Pass);
}

TEST_CASE("ledger semantics") {
  TheoremCheck ok{.id = "a", .status = CheckStatus::Pass};
  TheoremCheck bad{.id = "b", .status = CheckStatus::Fail};
  TheoremCheck skipped{.id = "c", .status = CheckStatus::Skipped};
  TheoremCheck exp_bad{.id = "d", .status = CheckStatus::Fail, .experimental = true};
  CHECK(ledger_passed({ok, skipped, exp_bad}));
  CHECK_FALSE(ledger_passed({ok, bad}));
  TheoremCheck parent{.id = "e", .status = CheckStatus::Pass, .prerequisites = {bad}};
  CHECK_FALSE(ledger_passed({parent}));
  auto j = ledger_json({ok, bad});
  CHECK(j.at("schema") == 1);
  CHECK(j.at("passed") == false);
  CHECK(j.at("checks").size() == 2);
  CHECK(j.at("checks")[1].at("status") == "FAIL");
  CHECK(status_name(CheckStatus::Skipped) == "skipped");
  CHECK(provenance_name(Provenance::Derived) == "derived");
  auto table = ledger_table({ok, bad});
  CHECK(table.find("FAIL") != std::string::npos);
}

TEST_CASE("run_checks keeps input order and captures errors") {
  std::vector<std::function<TheoremCheck()>> jobs;
  for (int i = 0; i < 6; ++i) jobs.push_back([i] { return TheoremCheck{.id = "job" + std::to_string(i)}; });
  jobs.push_back([]() -> TheoremCheck { throw std::runtime_error("boom"); });
  auto l = run_checks(jobs, 3);
  REQUIRE(l.size() == 7);
  for (int i = 0; i < 6; ++i) CHECK(l[i].id == "job" + std::to_string(i));
  CHECK(l[6].status == CheckStatus::Error);
}

TEST_CASE("ledgers are reproducible") {
  auto a = strip_times(ledger_json(verify_lemmas(Family::H, 5, 2)));
  auto b = strip_times(ledger_json(verify_lemmas(Family::H, 5, 2)));
  CHECK(a.dump() == b.dump());
  auto t1 = strip_times(to_json(verify_theorem_H(5, 2)));
  VerifyOptions o;
  o.limits.threads = 1;
  auto t2 = strip_times(to_json(verify_theorem_H(5, 2, o)));
  CHECK(t1.dump() == t2.dump());
}
