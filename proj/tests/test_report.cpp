#include <doctest.h>

#include <cstdlib>

#include "poisson_forge/error.hpp"
#include "poisson_forge/report.hpp"
#include "poisson_forge/suites.hpp"

using namespace poisson_forge;

namespace {

std::vector<Report> sample() {
  Report a{"alpha", {{"a1", true, ""}, {"a2", false, "x1 - 1"}}, 0};
  Report b{"beta", {{"b1", true, ""}}, 0};
  return {a, b};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("report verdicts") {
    auto r = sample();
    CHECK_FALSE(r[0].passed());
    CHECK(r[1].passed());
    CHECK(Report{"empty", {}, 0}.passed());
  }

  TEST_CASE("json round trip") {
    auto r = sample();
    auto back = reports_from_json(to_json(r));
    REQUIRE(back.size() == 2);
    for (std::size_t s = 0; s < 2; ++s) {
      CHECK(back[s].suite == r[s].suite);
      REQUIRE(back[s].items.size() == r[s].items.size());
      for (std::size_t i = 0; i < r[s].items.size(); ++i) {
        CHECK(back[s].items[i].label == r[s].items[i].label);
        CHECK(back[s].items[i].passed == r[s].items[i].passed);
        CHECK(back[s].items[i].residue == r[s].items[i].residue);
      }
    }
    CHECK(to_json(back) == to_json(r));
    CHECK_THROWS_AS(reports_from_json(R"({"passed": true, "suites": [{"suite": "s", "passed": true,
                                          "items": [{"label": "x", "passed": false}]}]})"),
                    Error);
    CHECK_THROWS_AS(reports_from_json(R"({"suites": 3})"), Error);
    CHECK_THROWS_AS(reports_from_json("[1,"), Error);
  }

  TEST_CASE("text and json agree") {
    auto r = sample();
    std::string text = to_text(r);
    CHECK(text.find("[alpha] FAIL a2: x1 - 1\n") != std::string::npos);
    CHECK(text.find("[beta] PASS b1\n") != std::string::npos);
    CHECK(text.find("FAILED 2/3") != std::string::npos);
    CHECK(text.find(" ms") == std::string::npos);
    CHECK(to_text(r, true).find(" ms") != std::string::npos);
  }

  TEST_CASE("parallel runner sorts by label and propagates errors") {
    std::vector<ItemTask> tasks;
    for (int k = 9; k >= 0; --k) {
      tasks.push_back([k] { return std::vector<ReportItem>{{"item " + std::to_string(k), true, ""}}; });
    }
    auto items = run_tasks(tasks);
    REQUIRE(items.size() == 10);
    for (int k = 0; k < 10; ++k) CHECK(items[k].label == "item " + std::to_string(k));
    tasks.push_back([]() -> std::vector<ReportItem> { throw Error(ErrorKind::kInvalidArgument, "boom"); });
    CHECK_THROWS_AS(run_tasks(tasks), Error);
  }

  TEST_CASE("suites are deterministic and independent of the thread count") {
    std::string first = to_json(run_verify("torus", 5));
    setenv("POISSON_FORGE_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    std::string serial = to_json(run_verify("torus", 5));
    unsetenv("POISSON_FORGE_THREADS");
    CHECK(first == serial);
    CHECK(to_json(run_verify("jacobi")) == to_json(run_verify("jacobi")));
    CHECK_THROWS_AS(run_suite("nope"), Error);
    CHECK(run_suite("quotient").suite == "pl2");
    CHECK(run_verify("all").size() == suite_names().size());
  }
}
