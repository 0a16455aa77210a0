#pragma once

#include <string>
#include <vector>

#include "pisr/instance.hpp"
#include "pisr/plan.hpp"

namespace pisr {

enum class VarKind { Continuous, Binary };
enum class Relation { LessEq, Equal, GreaterEq };
enum class Formulation { F1, F2, F3 };

std::string to_string(Formulation f);

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  VarKind kind = VarKind::Continuous;
};

struct LinearTerm {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Relation rel = Relation::LessEq;
  double rhs = 0.0;
};

// Variable index bookkeeping per formulation; -1 where a slot is not used.
// Node index 0 is the depot.
struct VarIndexMaps {
  int n_nodes = 0;
  std::vector<int> x;  // (n_nodes * n_nodes), edge (i,j) -> x index
  std::vector<int> u;  // per node (F1)
  std::vector<int> v;  // per node (F1)
  std::vector<int> y;  // per edge (F2/F3)
  std::vector<int> w;  // per edge (F2/F3)
  int z = -1;

  int x_at(int i, int j) const { return x.empty() ? -1 : x[i * n_nodes + j]; }
  int y_at(int i, int j) const { return y.empty() ? -1 : y[i * n_nodes + j]; }
  int w_at(int i, int j) const { return w.empty() ? -1 : w[i * n_nodes + j]; }
};

// Solver-agnostic linear model, minimization sense.
struct MilpModel {
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<LinearTerm> objective;
  Formulation tag = Formulation::F1;
  std::string instance_hash;
  VarIndexMaps maps;

  int n_vars() const { return static_cast<int>(variables.size()); }
};

struct Horizon {
  double h = 0.0;
};

// H = sum over nodes of the largest outgoing travel time; dominates the
// length of any simple cycle, so it serves both as big-M and as the finite
// stand-in for missing revisit limits.
Horizon compute_horizon(const Instance& instance);

// Node-based MTZ-style formulation with big-M (constraints (1)-(9)).
MilpModel build_f1(const Instance& instance);
// Arc-based flow formulation (constraints (10)-(21)).
MilpModel build_f2(const Instance& instance);
// Strengthened arc-based formulation (flow core plus (22)-(28)).
MilpModel build_f3(const Instance& instance);

struct ConstraintResidual {
  std::string name;
  double residual = 0.0;  // positive = violated by this much
};

// Evaluates every constraint and variable bound at the given point.
// Returns the violated ones (tolerance 1e-6 absolute + 1e-9 relative).
std::vector<ConstraintResidual> evaluate_assignment(const MilpModel& model,
                                                    const std::vector<double>& values);

struct PlanCheck {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> witness;  // canonical variable assignment
  std::vector<ConstraintResidual> violations;
};

// Builds the canonical variable assignment for the plan (x from cycle arcs,
// u/v from evaluate_plan, y/w as prefix/suffix times attached to selected
// arcs) and evaluates the model on it.
// Throws HashMismatchError when the model was built from another instance.
PlanCheck check_plan_against_model(const MilpModel& model, const Instance& instance,
                                   const RoutePlan& plan);

// Follows successor edges from the depot to reconstruct cycles.
// Throws DecodeError on fractional values or depot-free subtours.
RoutePlan plan_from_edges(const Instance& instance, const MilpModel& model,
                          const std::vector<double>& var_values);

}  // namespace pisr
