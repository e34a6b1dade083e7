#include <doctest.h>

#include <algorithm>

#include "chark/suites.hpp"

using namespace chark;

namespace {

SuiteConfig small_cfg() {
  SuiteConfig cfg;
  cfg.instances = 2;
  cfg.max_word_len = 3;
  cfg.points = 8;
  cfg.oracle.samples = 8;
  cfg.oracle.seed = 11;
  return cfg;
}

std::vector<std::string> ids(const std::vector<SchemaReport>& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs) out.push_back(r.id);
  return out;
}

}  // namespace

TEST_CASE("the full battery passes on a free presentation") {
  GAPresentation P = GAPresentation::free_action(2, 2);
  SuiteConfig cfg = small_cfg();
  std::vector<SchemaReport> rs = run_presentation_suite(P, cfg);

  CHECK(ids(rs) == std::vector<std::string>{
                       "R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "R10", "F", "G",
                       "CON1", "INV2", "INV3", "CON2A", "CON2B", "KER1", "KER2", "NU",
                       "TGM-CENTRAL", "TGM-CONTRACT", "TAUCHI", "CHITAU"});
  for (const SchemaReport& r : rs) {
    INFO(r.id, ": ", r.detail);
    CHECK(r.ok());
    CHECK(r.instances == cfg.instances);
  }
  CHECK(suite_ok(rs));

  // deterministic given the seed
  std::vector<SchemaReport> again = run_presentation_suite(P, cfg);
  REQUIRE(again.size() == rs.size());
  for (size_t i = 0; i < rs.size(); ++i) {
    CHECK(again[i].id == rs[i].id);
    CHECK(again[i].failures == rs[i].failures);
  }

  cfg.oracle.policy = ExecPolicy::Serial;
  CHECK(suite_ok(run_presentation_suite(P, cfg)));

  cfg.oracle.kind = FieldKind::Rationals;
  cfg.points = 4;
  cfg.oracle.samples = 4;
  CHECK(suite_ok(run_presentation_suite(P, cfg)));
}

TEST_CASE("no generators leaves the pure arc battery") {
  GAPresentation P = GAPresentation::free_action(0, 3);
  std::vector<SchemaReport> rs = run_presentation_suite(P, small_cfg());
  CHECK(ids(rs) == std::vector<std::string>{"R6", "R7", "R8"});
  CHECK(suite_ok(rs));
}

TEST_CASE("no orbits leaves the loop and matrix schemas") {
  GAPresentation P = GAPresentation::free_action(2, 0);
  std::vector<SchemaReport> rs = run_presentation_suite(P, small_cfg());
  std::vector<std::string> got = ids(rs);
  CHECK(std::find(got.begin(), got.end(), "R4") != got.end());
  CHECK(std::find(got.begin(), got.end(), "F") != got.end());
  CHECK(std::find(got.begin(), got.end(), "TGM-CENTRAL") != got.end());
  CHECK(std::find(got.begin(), got.end(), "R6") == got.end());
  CHECK(std::find(got.begin(), got.end(), "TGM-CONTRACT") == got.end());
  CHECK(suite_ok(rs));
}

TEST_CASE("every schema mutation is caught") {
  GAPresentation P = GAPresentation::free_action(2, 2);
  SuiteConfig cfg = small_cfg();
  std::vector<std::string> all = ids(run_presentation_suite(P, cfg));

  for (const std::string& id : all) {
    SuiteConfig mcfg = cfg;
    mcfg.mutate = id;
    std::vector<SchemaReport> rs = run_presentation_suite(P, mcfg);
    bool seen = false;
    for (const SchemaReport& r : rs) {
      INFO("mutating ", id, ", schema ", r.id, ": ", r.detail);
      if (r.id == id) {
        seen = true;
        CHECK(r.failures > 0);
        CHECK(!r.detail.empty());
      } else {
        CHECK(r.ok());
      }
    }
    CHECK(seen);
  }
}

TEST_CASE("only filter selects schemas without changing their instances") {
  GAPresentation P = GAPresentation::free_action(2, 2);
  SuiteConfig cfg = small_cfg();
  cfg.mutate = "R4";
  std::vector<SchemaReport> full = run_presentation_suite(P, cfg);

  cfg.only = {"R4", "KER1", "CHITAU"};
  std::vector<SchemaReport> part = run_presentation_suite(P, cfg);
  CHECK(ids(part) == std::vector<std::string>{"R4", "KER1", "CHITAU"});
  for (const SchemaReport& r : part) {
    const SchemaReport* ref = nullptr;
    for (const SchemaReport& f : full)
      if (f.id == r.id) ref = &f;
    REQUIRE(ref != nullptr);
    CHECK(r.instances == ref->instances);
    CHECK(r.failures == ref->failures);
    CHECK(r.detail == ref->detail);
  }
  CHECK(part[0].failures > 0);
}
