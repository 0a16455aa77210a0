#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pisr/errors.hpp"
#include "pisr/generator.hpp"
#include "pisr/io.hpp"
#include "pisr/tsp.hpp"

using namespace pisr;
using pisrtest::make_instance;
using pisrtest::random_instance;
using pisrtest::random_plan;

TEST_CASE("travel matrix: euclidean times with head service") {
  Instance inst = make_instance(0, 0, {{3, 4}});
  CHECK(inst.travel.at(kDepot, 1) == doctest::Approx(5.0));
  CHECK(inst.travel.at(1, kDepot) == doctest::Approx(5.0));

  inst.tasks[0].service = 2.0;
  inst.travel = build_travel_matrix(inst);
  CHECK(inst.travel.at(kDepot, 1) == doctest::Approx(7.0));
  CHECK(inst.travel.at(1, kDepot) == doctest::Approx(5.0));

  const Instance fast = make_instance(0, 0, {{1, 0}, {1, 1}}, 1, 2.0);
  CHECK(fast.travel.at(1, 2) == doctest::Approx(0.5));
  CHECK(std::isinf(fast.travel.at(1, 1)));
}

TEST_CASE("travel matrix: asymmetry comes only from service times") {
  Instance inst = random_instance(11, 6, 2);
  for (auto& t : inst.tasks) t.service = 0.25 * t.id;
  finalize_instance(inst);
  auto service = [&](int i) { return i == kDepot ? 0.0 : inst.task(i).service; };
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; j <= 6; ++j) {
      if (i == j) continue;
      CHECK(inst.travel.at(i, j) - service(j) ==
            doctest::Approx(inst.travel.at(j, i) - service(i)).epsilon(1e-12));
    }
}

TEST_CASE("evaluate_plan: single task cycle") {
  Instance inst = make_instance(0, 0, {{3, 4}});
  inst.revisit_limits[1] = 12.0;
  finalize_instance(inst);
  const PlanMetrics m = evaluate_plan(inst, {{{1}}});
  CHECK(m.u.at(1) == doctest::Approx(5.0));
  CHECK(m.v.at(1) == doctest::Approx(5.0));
  CHECK(m.cycle_lengths[0] == doctest::Approx(10.0));
  CHECK(m.z == doctest::Approx(5.0));
  CHECK(m.feasible);
}

// Two-task cycle with c[d][1]=3, c[1][2]=4, c[2][d]=2, realized with a
// service time on task 2: hand sums give u1=3, v1=6, u2=7, v2=2, L=9, z=6.
static Instance two_task_chain() {
  Instance inst = make_instance(0, 0, {{3, 0}, {0, 2}});
  inst.tasks[1].service = 4.0 - std::sqrt(13.0);
  finalize_instance(inst);
  return inst;
}

TEST_CASE("evaluate_plan: two-task cycle hand sums") {
  Instance inst = two_task_chain();
  REQUIRE(inst.travel.at(kDepot, 1) == doctest::Approx(3.0));
  REQUIRE(inst.travel.at(1, 2) == doctest::Approx(4.0));
  REQUIRE(inst.travel.at(2, kDepot) == doctest::Approx(2.0));

  const PlanMetrics m = evaluate_plan(inst, {{{1, 2}}});
  CHECK(m.u.at(1) == doctest::Approx(3.0));
  CHECK(m.v.at(1) == doctest::Approx(6.0));
  CHECK(m.u.at(2) == doctest::Approx(7.0));
  CHECK(m.v.at(2) == doctest::Approx(2.0));
  CHECK(m.cycle_lengths[0] == doctest::Approx(9.0));
  CHECK(m.z == doctest::Approx(6.0));
  CHECK(m.feasible);
}

TEST_CASE("evaluate_plan: revisit violation reported with (task, L, R)") {
  Instance inst = two_task_chain();
  inst.revisit_limits[2] = 8.0;
  finalize_instance(inst);
  const PlanMetrics m = evaluate_plan(inst, {{{1, 2}}});
  CHECK_FALSE(m.feasible);
  REQUIRE(m.violations.size() == 1);
  CHECK(m.violations[0].task == 2);
  CHECK(m.violations[0].cycle_length == doctest::Approx(9.0));
  CHECK(m.violations[0].limit == doctest::Approx(8.0));
}

TEST_CASE("evaluate_plan: partition errors") {
  const Instance inst = make_instance(0, 0, {{1, 0}, {2, 0}, {3, 0}}, 2);
  CHECK_THROWS_AS(evaluate_plan(inst, {{{1, 2, 1}, {3}}}), PlanError);
  CHECK_THROWS_AS(evaluate_plan(inst, {{{1, 2}}}), PlanError);
  CHECK_THROWS_AS(evaluate_plan(inst, {{{1}, {2}, {3}}}), PlanError);  // n_v = 2
  CHECK_THROWS_AS(evaluate_plan(inst, {{{1, 2, 3, 4}}}), PlanError);
  CHECK_THROWS_AS(evaluate_plan(inst, {{{1, 2, 3}, {}}}), PlanError);
  try {
    evaluate_plan(inst, {{{1, 3}}});
  } catch (const PlanError& e) {
    CHECK(e.kind() == PlanError::Kind::MissingTask);
  }
}

TEST_CASE("u + v = L identity and z identities on random plans") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = random_instance(seed, 4 + seed % 5, 3, false);
    const RoutePlan plan = random_plan(inst, seed * 977);
    const PlanMetrics m = evaluate_plan(inst, plan);
    double z_max_v = 0.0;
    for (std::size_t k = 0; k < plan.cycles.size(); ++k) {
      const double length = m.cycle_lengths[k];
      for (int id : plan.cycles[k]) {
        CHECK(std::fabs(m.u.at(id) + m.v.at(id) - length) < 1e-9);
        z_max_v = std::max(z_max_v, m.v.at(id));
      }
      // the first task has the largest delivery time of its cycle
      CHECK(m.v.at(plan.cycles[k].front()) ==
            doctest::Approx(length - inst.travel.at(kDepot, plan.cycles[k].front())));
    }
    CHECK(m.z == doctest::Approx(z_max_v));
  }
}

TEST_CASE("scaling covariance: coordinates and limits scaled together") {
  const double lambdas[] = {2.0, 0.5, 3.0};
  for (double lambda : lambdas) {
    Instance base = random_instance(5, 6, 2);
    Instance scaled = base;
    scaled.depot_x *= lambda;
    scaled.depot_y *= lambda;
    for (Task& t : scaled.tasks) {
      t.x *= lambda;
      t.y *= lambda;
    }
    for (auto& [id, r] : scaled.revisit_limits) r *= lambda;
    finalize_instance(scaled);

    const RoutePlan plan = random_plan(base, 42);
    const PlanMetrics m0 = evaluate_plan(base, plan);
    const PlanMetrics m1 = evaluate_plan(scaled, plan);
    const bool exact = lambda == 2.0 || lambda == 0.5;  // powers of two scale losslessly
    for (int id = 1; id <= base.n_tasks(); ++id) {
      if (exact) {
        CHECK(m1.u.at(id) == lambda * m0.u.at(id));
        CHECK(m1.v.at(id) == lambda * m0.v.at(id));
      } else {
        CHECK(m1.u.at(id) == doctest::Approx(lambda * m0.u.at(id)).epsilon(1e-12));
        CHECK(m1.v.at(id) == doctest::Approx(lambda * m0.v.at(id)).epsilon(1e-12));
      }
    }
    CHECK(m1.z == doctest::Approx(lambda * m0.z).epsilon(1e-12));
    CHECK(m1.feasible == m0.feasible);
  }
}

TEST_CASE("cycle order does not change per-task metrics") {
  const Instance inst = random_instance(9, 6, 3, false);
  RoutePlan plan = random_plan(inst, 7);
  if (plan.cycles.size() < 2) plan = {{{1, 2}, {3, 4}, {5, 6}}};
  const PlanMetrics m0 = evaluate_plan(inst, plan);
  std::reverse(plan.cycles.begin(), plan.cycles.end());
  const PlanMetrics m1 = evaluate_plan(inst, plan);
  for (int id = 1; id <= inst.n_tasks(); ++id) {
    CHECK(m0.u.at(id) == m1.u.at(id));
    CHECK(m0.v.at(id) == m1.v.at(id));
  }
  CHECK(m0.z == m1.z);
}

TEST_CASE("tsp_exact: two nodes, unit square, collinear") {
  const Instance pair = make_instance(0, 0, {{3, 4}});
  const TspResult two = tsp_exact({kDepot, 1}, pair.travel);
  CHECK(two.cost == doctest::Approx(10.0));

  const Instance square = make_instance(0, 0, {{1, 0}, {1, 1}, {0, 1}});
  CHECK(tsp_exact({kDepot, 1, 2, 3}, square.travel).cost == doctest::Approx(4.0));

  const Instance line = make_instance(0, 0, {{1, 0}, {2, 0}});
  CHECK(tsp_exact({kDepot, 1, 2}, line.travel).cost == doctest::Approx(4.0));
}

TEST_CASE("tsp_exact: cap enforced") {
  const Instance inst = random_instance(3, 9, 2, false);
  std::vector<int> nodes = {kDepot, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  CHECK_NOTHROW(tsp_exact(nodes, inst.travel));  // exactly at the cap
  const Instance big = random_instance(3, 10, 2, false);
  std::vector<int> eleven = {kDepot, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK_THROWS_AS(tsp_exact(eleven, big.travel), TooLargeError);
}

TEST_CASE("generate_instance: deterministic byte-for-byte") {
  GenPolicy policy;
  policy.farthest = true;
  policy.nearest_k = 2;
  const Instance a = generate_instance(7, 10, 4, 4000.0, policy);
  const Instance b = generate_instance(7, 10, 4, 4000.0, policy);
  CHECK(instance_to_json(a) == instance_to_json(b));
  CHECK(instance_hash(a) == instance_hash(b));
}

TEST_CASE("generate_instance: paper protocol constrained-task counts") {
  struct Row {
    int n, nearest_k, expected;
  };
  // 10 -> 3 constrained, 20 -> 4, 30 -> 5
  for (const Row row : {Row{10, 2, 3}, Row{20, 3, 4}, Row{30, 4, 5}}) {
    GenPolicy policy;
    policy.farthest = true;
    policy.nearest_k = row.nearest_k;
    const Instance inst = generate_instance(17, row.n, 4, 4000.0, policy);
    CHECK(static_cast<int>(inst.revisit_limits.size()) == row.expected);
  }
}

TEST_CASE("generate_instance: limits follow the policy formulas") {
  GenPolicy policy;
  policy.farthest = true;
  policy.nearest_k = 2;
  const Instance inst = generate_instance(23, 10, 4, 4000.0, policy);
  const TravelMatrix& c = inst.travel;

  auto round_trip = [&](int id) { return c.at(kDepot, id) + c.at(id, kDepot); };
  int farthest = 1;
  for (int id = 2; id <= 10; ++id)
    if (round_trip(id) > round_trip(farthest)) farthest = id;
  REQUIRE(inst.is_constrained(farthest));
  CHECK(inst.revisit_limits.at(farthest) == doctest::Approx(1.1 * round_trip(farthest)));

  // the nearest-2 tasks share 1.1 x the optimal TSP cost over them + depot
  std::vector<int> near;
  for (int id = 1; id <= 10; ++id)
    if (id != farthest) near.push_back(id);
  std::sort(near.begin(), near.end(),
            [&](int a, int b) { return round_trip(a) < round_trip(b); });
  near.resize(2);
  const double expect = 1.1 * tsp_exact({kDepot, near[0], near[1]}, c).cost;
  for (int id : near) {
    REQUIRE(inst.is_constrained(id));
    CHECK(inst.revisit_limits.at(id) == doctest::Approx(expect));
  }
}

TEST_CASE("generate_instance: bad policies") {
  GenPolicy policy;
  policy.nearest_k = kTspExactMaxNodes;  // k tasks + depot would exceed the cap
  CHECK_THROWS_AS(generate_instance(1, 20, 2, 4000.0, policy), BadPolicyError);
  GenPolicy too_many;
  too_many.farthest = true;
  too_many.nearest_k = 5;
  CHECK_THROWS_AS(generate_instance(1, 5, 2, 4000.0, too_many), BadPolicyError);
}
