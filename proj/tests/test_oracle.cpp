#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "pisr/errors.hpp"
#include "pisr/oracle.hpp"

using namespace pisr;
using pisrtest::make_instance;
using pisrtest::random_instance;

TEST_CASE("oracle: single task") {
  const Instance inst = make_instance(0, 0, {{3, 4}});
  const OracleResult res = brute_force_solve(inst);
  REQUIRE(res.status == OracleStatus::Optimal);
  CHECK(res.plan->cycles == std::vector<std::vector<int>>{{1}});
  CHECK(res.objective == doctest::Approx(5.0));
}

TEST_CASE("oracle: two symmetric tasks split across two vehicles") {
  const Instance inst = make_instance(0, 0, {{1000, 0}, {-1000, 0}}, 2);
  const OracleResult res = brute_force_solve(inst);
  REQUIRE(res.status == OracleStatus::Optimal);
  CHECK(res.objective == doctest::Approx(1000.0));
  CHECK(res.plan->cycles.size() == 2);
}

TEST_CASE("oracle: infeasible when a limit is below the direct round trip") {
  Instance inst = make_instance(0, 0, {{3, 4}});
  inst.revisit_limits[1] = 9.0;
  finalize_instance(inst);
  const OracleResult res = brute_force_solve(inst);
  CHECK(res.status == OracleStatus::Infeasible);
  CHECK_FALSE(res.plan.has_value());
}

TEST_CASE("oracle: cap enforced") {
  const Instance inst = random_instance(2, 8, 2, false);
  OracleConfig config;
  config.cap_n = 7;
  CHECK_THROWS_AS(brute_force_solve(inst, config), TooLargeError);
}

TEST_CASE("oracle: pruning agrees with the unpruned search on n <= 4") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Instance inst = random_instance(seed, 4, 2);
    OracleConfig pruned, unpruned;
    unpruned.pruning = false;
    const OracleResult a = brute_force_solve(inst, pruned);
    const OracleResult b = brute_force_solve(inst, unpruned);
    REQUIRE(a.status == b.status);
    if (a.status == OracleStatus::Optimal) {
      CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-12));
      CHECK(a.plan->cycles == b.plan->cycles);
      CHECK(a.nodes <= b.nodes);
    }
  }
}

TEST_CASE("oracle: objective is invariant under task relabeling") {
  const Instance base = random_instance(12, 5, 2);
  // reverse the ids: new id k holds old task n+1-k
  Instance relabeled = base;
  const int n = base.n_tasks();
  for (int i = 0; i < n; ++i) {
    relabeled.tasks[i] = base.tasks[n - 1 - i];
    relabeled.tasks[i].id = i + 1;
  }
  relabeled.revisit_limits.clear();
  for (const auto& [id, r] : base.revisit_limits) relabeled.revisit_limits[n + 1 - id] = r;
  finalize_instance(relabeled);

  const OracleResult a = brute_force_solve(base);
  const OracleResult b = brute_force_solve(relabeled);
  REQUIRE(a.status == b.status);
  if (a.status == OracleStatus::Optimal)
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-9));
}

TEST_CASE("oracle: removing a revisit limit never increases the optimum") {
  for (std::uint64_t seed = 3; seed <= 10; ++seed) {
    Instance inst = random_instance(seed, 5, 2);
    if (inst.revisit_limits.empty()) continue;
    const OracleResult constrained = brute_force_solve(inst);
    Instance relaxed = inst;
    relaxed.revisit_limits.erase(relaxed.revisit_limits.begin()->first);
    finalize_instance(relaxed);
    const OracleResult freer = brute_force_solve(relaxed);
    REQUIRE(freer.status == OracleStatus::Optimal);
    if (constrained.status == OracleStatus::Optimal)
      CHECK(freer.objective <= constrained.objective + 1e-9);
  }
}

TEST_CASE("oracle: optimal plan is feasible and matches its own metrics") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = random_instance(seed, 6, 3);
    const OracleResult res = brute_force_solve(inst);
    if (res.status != OracleStatus::Optimal) continue;
    const PlanMetrics m = evaluate_plan(inst, *res.plan);
    CHECK(m.feasible);
    CHECK(m.z == doctest::Approx(res.objective).epsilon(1e-9));
  }
}
