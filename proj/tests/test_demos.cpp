#include <doctest.h>

#include "chark/demos.hpp"

using namespace chark;

namespace {

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("worked examples verify end to end") {
  OracleConfig cfg;

  DemoReport gr = run_demo("gr2n", cfg);
  CHECK(gr.ok);
  CHECK(has(gr.transcript, "1 = 2 + (-1)"));
  CHECK(has(gr.transcript, "equal (16 samples over Q)"));

  DemoReport z = run_demo("z-two-points", cfg);
  CHECK(z.ok);
  CHECK(has(z.transcript, "holds on both families"));
  CHECK(has(z.transcript, "refuted on family A (4 != 0)"));
  CHECK(has(z.transcript, "the printed sign is wrong"));

  DemoReport ch = run_demo("chebyshev", cfg);
  CHECK(ch.ok);
  CHECK(has(ch.transcript, "i=8: exact"));
  CHECK(!has(ch.transcript, "MISMATCH"));

  DemoReport tc = run_demo("tau-chi", cfg);
  CHECK(tc.ok);
  CHECK(has(tc.transcript, "20 random basis monomials: 20 exact"));

  CHECK_THROWS_AS(run_demo("nope", cfg), error);
  CHECK(demo_names().size() == 4);

  // transcripts are reproducible
  CHECK(run_demo("gr2n", cfg).transcript == gr.transcript);
  CHECK(run_demo("tau-chi", cfg).transcript == tc.transcript);
}
