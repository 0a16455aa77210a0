#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "pisr/lp.hpp"
#include "pisr/milp.hpp"

using namespace pisr;
using pisrtest::make_instance;

namespace {

// terse hand-built models for the solver alone
struct Mini {
  MilpModel m;
  int var(const std::string& name, double lo, double up) {
    m.variables.push_back({name, lo, up, VarKind::Continuous});
    return m.n_vars() - 1;
  }
  void row(Relation rel, double rhs, std::vector<LinearTerm> terms) {
    m.constraints.push_back({"r" + std::to_string(m.constraints.size()), std::move(terms), rel, rhs});
  }
};

}  // namespace

TEST_CASE("lp: single bounded variable with a >= row") {
  Mini mini;
  const int x = mini.var("x", 0, 10);
  mini.row(Relation::GreaterEq, 3.0, {{x, 1.0}});
  mini.m.objective = {{x, 1.0}};
  const LpSolution sol = solve_lp(mini.m);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(3.0));
  CHECK(sol.values[x] == doctest::Approx(3.0));
}

TEST_CASE("lp: contradictory rows are infeasible") {
  Mini mini;
  const int x = mini.var("x", 0, 10);
  mini.row(Relation::LessEq, 1.0, {{x, 1.0}});
  mini.row(Relation::GreaterEq, 2.0, {{x, 1.0}});
  mini.m.objective = {{x, 1.0}};
  CHECK(solve_lp(mini.m).status == LpStatus::Infeasible);
}

TEST_CASE("lp: crossing bounds are infeasible before any pivot") {
  Mini mini;
  (void)mini.var("x", 5.0, 2.0);
  mini.m.objective = {{0, 1.0}};
  CHECK(solve_lp(mini.m).status == LpStatus::Infeasible);
}

TEST_CASE("lp: equality + upper bound lands on a nonbasic-at-upper optimum") {
  Mini mini;
  const int x = mini.var("x", 0, 5);
  const int y = mini.var("y", 0, 4);
  mini.row(Relation::LessEq, 7.0, {{x, 1.0}, {y, 1.0}});
  mini.m.objective = {{x, -1.0}, {y, -1.0}};
  const LpSolution sol = solve_lp(mini.m);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-7.0));
  CHECK(sol.values[x] + sol.values[y] == doctest::Approx(7.0));
}

TEST_CASE("lp: equality row with negative rhs") {
  Mini mini;
  const int x = mini.var("x", -10, 10);
  const int y = mini.var("y", -10, 10);
  mini.row(Relation::Equal, -4.0, {{x, 1.0}, {y, -2.0}});
  mini.m.objective = {{x, 1.0}, {y, 1.0}};
  const LpSolution sol = solve_lp(mini.m);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.values[x] - 2.0 * sol.values[y] == doctest::Approx(-4.0));
  CHECK(sol.objective == doctest::Approx(-13.0));  // x=-10, y=-3
}

TEST_CASE("lp: F1 relaxation of a single-task instance is already tight") {
  const Instance inst = make_instance(0, 0, {{3, 4}});
  const MilpModel model = build_f1(inst);
  const LpSolution sol = solve_lp(model);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(inst.travel.at(1, kDepot)));
}

TEST_CASE("lp: weak duality against combinatorial feasible points") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Instance inst = pisrtest::random_instance(seed, 5, 2);
    const MilpModel model = build_f1(inst);
    const LpSolution relax = solve_lp(model);
    if (relax.status != LpStatus::Optimal) continue;
    const RoutePlan plan = pisrtest::random_plan(inst, seed + 100);
    const PlanCheck check = check_plan_against_model(model, inst, plan);
    if (check.feasible) CHECK(relax.objective <= check.objective + 1e-6);
  }
}

TEST_CASE("lp: deterministic resolves") {
  const Instance inst = pisrtest::random_instance(4, 6, 2);
  const MilpModel model = build_f3(inst);
  const LpSolution a = solve_lp(model);
  const LpSolution b = solve_lp(model);
  REQUIRE(a.status == b.status);
  CHECK(a.objective == b.objective);
  CHECK(a.iterations == b.iterations);
  CHECK(a.values == b.values);
}

TEST_CASE("lp: scaling the objective scales the optimum, same argmin") {
  const Instance inst = pisrtest::random_instance(6, 5, 2, false);
  MilpModel model = build_f3(inst);
  const LpSolution base = solve_lp(model);
  REQUIRE(base.status == LpStatus::Optimal);
  for (LinearTerm& t : model.objective) t.coef *= 4.0;
  const LpSolution scaled = solve_lp(model);
  REQUIRE(scaled.status == LpStatus::Optimal);
  CHECK(scaled.objective == doctest::Approx(4.0 * base.objective).epsilon(1e-9));
  CHECK(scaled.values == base.values);
}

TEST_CASE("lp: solution respects tolerances at the optimum") {
  const Instance inst = pisrtest::random_instance(12, 6, 3, false);
  const MilpModel model = build_f2(inst);
  const LpSolution sol = solve_lp(model);
  REQUIRE(sol.status == LpStatus::Optimal);
  for (int j = 0; j < model.n_vars(); ++j) {
    CHECK(sol.values[j] >= model.variables[j].lower - 1e-9);
    CHECK(sol.values[j] <= model.variables[j].upper + 1e-9);
  }
  for (const Constraint& r : model.constraints) {
    double lhs = 0.0;
    for (const LinearTerm& t : r.terms) lhs += t.coef * sol.values[t.var];
    if (r.rel == Relation::LessEq) CHECK(lhs <= r.rhs + 1e-7);
    if (r.rel == Relation::GreaterEq) CHECK(lhs >= r.rhs - 1e-7);
    if (r.rel == Relation::Equal) CHECK(std::fabs(lhs - r.rhs) <= 1e-7 + 1e-9 * std::fabs(r.rhs));
  }
}

TEST_CASE("lp: iteration limit is reported, not hidden") {
  const Instance inst = pisrtest::random_instance(2, 6, 2);
  const MilpModel model = build_f2(inst);
  LpOptions options;
  options.max_iterations = 3;
  CHECK(solve_lp(model, options).status == LpStatus::IterationLimit);
}

TEST_CASE("lp: fixed variables cascade through singleton rows") {
  Mini mini;
  const int x = mini.var("x", 1.0, 1.0);  // fixed
  const int y = mini.var("y", 0.0, 100.0);
  const int z = mini.var("z", 0.0, 100.0);
  mini.row(Relation::LessEq, 0.0, {{y, 1.0}, {x, -3.0}});   // y <= 3x -> y <= 3
  mini.row(Relation::GreaterEq, 2.0, {{z, 1.0}, {y, -1.0}});  // z >= 2 + y
  mini.m.objective = {{z, 1.0}, {y, -1.0}};
  const LpSolution sol = solve_lp(mini.m);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.values[x] == 1.0);
  CHECK(sol.values[y] <= 3.0 + 1e-9);  // folded singleton bound
  CHECK(sol.values[z] - sol.values[y] == doctest::Approx(2.0));
  CHECK(sol.objective == doctest::Approx(2.0));
}

TEST_CASE("lp: infinite bounds are rejected") {
  Mini mini;
  (void)mini.var("x", 0.0, kInfinity);
  mini.m.objective = {{0, 1.0}};
  CHECK_THROWS_AS(solve_lp(mini.m), std::invalid_argument);
}
