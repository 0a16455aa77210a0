#include "pisr/milp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pisr/errors.hpp"
#include "pisr/io.hpp"

namespace pisr {

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::F1: return "F1";
    case Formulation::F2: return "F2";
    case Formulation::F3: return "F3";
  }
  return "?";
}

Horizon compute_horizon(const Instance& instance) {
  const TravelMatrix& c = instance.travel;
  const int nn = c.n_nodes();
  double h = 0.0;
  for (int i = 0; i < nn; ++i) {
    double row_max = 0.0;
    for (int j = 0; j < nn; ++j)
      if (j != i) row_max = std::max(row_max, c.at(i, j));
    h += row_max;
  }
  return Horizon{h};
}

namespace {

// Shared builder state. Effective revisit limits are clamped to the horizon:
// any feasible cycle is no longer than H, so min(R_i, H) constrains exactly
// the same plans while keeping every model coefficient finite.
struct Builder {
  const Instance& inst;
  const TravelMatrix& c;
  int n;      // tasks
  int nn;     // nodes
  double h;   // horizon
  MilpModel model;

  explicit Builder(const Instance& instance, Formulation tag)
      : inst(instance), c(instance.travel), n(instance.n_tasks()), nn(n + 1),
        h(compute_horizon(instance).h) {
    model.tag = tag;
    model.instance_hash = instance_hash(instance);
    model.maps.n_nodes = nn;
  }

  double limit(int i) const { return std::min(inst.revisit_limit_or_inf(i), h); }

  int add_var(const std::string& name, double lo, double up, VarKind kind) {
    model.variables.push_back({name, lo, up, kind});
    return static_cast<int>(model.variables.size()) - 1;
  }

  void add_edge_vars(std::vector<int>& map, const std::string& prefix,
                     double lo_all, VarKind kind) {
    map.assign(nn * nn, -1);
    for (int i = 0; i < nn; ++i)
      for (int j = 0; j < nn; ++j) {
        if (i == j) continue;
        map[i * nn + j] = add_var(prefix + "_" + std::to_string(i) + "_" + std::to_string(j),
                                  lo_all, kind == VarKind::Binary ? 1.0 : 0.0, kind);
      }
  }

  Constraint& row(const std::string& name, Relation rel, double rhs) {
    model.constraints.push_back({name, {}, rel, rhs});
    return model.constraints.back();
  }

  static void term(Constraint& r, int var, double coef) {
    if (var >= 0 && coef != 0.0) r.terms.push_back({var, coef});
  }

  std::string edge_tag(const char* eq, int i, int j) const {
    return std::string(eq) + "_" + std::to_string(i) + "_" + std::to_string(j);
  }

  // Degree constraints: one incoming and one outgoing edge per task, at most
  // n_v edges out of and into the depot.
  void add_degree_rows(const char* task_tag, const char* depot_tag) {
    for (int i = 1; i <= n; ++i) {
      Constraint& out = row(std::string(task_tag) + "_out_" + std::to_string(i),
                            Relation::Equal, 1.0);
      for (int j = 0; j < nn; ++j) term(out, model.maps.x_at(i, j), 1.0);
      Constraint& in = row(std::string(task_tag) + "_in_" + std::to_string(i),
                           Relation::Equal, 1.0);
      for (int j = 0; j < nn; ++j) term(in, model.maps.x_at(j, i), 1.0);
    }
    Constraint& dep_out = row(std::string(depot_tag) + "_out", Relation::LessEq, inst.n_v);
    for (int j = 1; j <= n; ++j) term(dep_out, model.maps.x_at(kDepot, j), 1.0);
    Constraint& dep_in = row(std::string(depot_tag) + "_in", Relation::LessEq, inst.n_v);
    for (int j = 1; j <= n; ++j) term(dep_in, model.maps.x_at(j, kDepot), 1.0);
  }
};

}  // namespace

MilpModel build_f1(const Instance& instance) {
  Builder b(instance, Formulation::F1);
  const int n = b.n, nn = b.nn;
  const double m_big = b.h;

  b.add_edge_vars(b.model.maps.x, "x", 0.0, VarKind::Binary);
  // u_d and v_d are identically zero and enter the rows as constants.
  b.model.maps.u.assign(nn, -1);
  b.model.maps.v.assign(nn, -1);
  for (int i = 1; i <= n; ++i) {
    const double r = b.limit(i);
    b.model.maps.u[i] = b.add_var("u_" + std::to_string(i), b.c.at(kDepot, i),
                                  r - b.c.at(i, kDepot), VarKind::Continuous);
    b.model.maps.v[i] = b.add_var("v_" + std::to_string(i), b.c.at(i, kDepot),
                                  r - b.c.at(kDepot, i), VarKind::Continuous);
  }
  b.model.maps.z = b.add_var("z", 0.0, b.h, VarKind::Continuous);

  b.add_degree_rows("eq1", "eq2");

  // u_i - u_j + M x_ij <= M - c_ij  for i in V, j in T
  for (int i = 0; i < nn; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      Constraint& r = b.row(b.edge_tag("eq4", i, j), Relation::LessEq, m_big - b.c.at(i, j));
      Builder::term(r, b.model.maps.u[i], 1.0);
      Builder::term(r, b.model.maps.u[j], -1.0);
      Builder::term(r, b.model.maps.x_at(i, j), m_big);
    }
  // v_j - v_i + M x_ij <= M - c_ij  for i in T, j in V
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < nn; ++j) {
      if (i == j) continue;
      Constraint& r = b.row(b.edge_tag("eq6", i, j), Relation::LessEq, m_big - b.c.at(i, j));
      Builder::term(r, b.model.maps.v[j], 1.0);
      Builder::term(r, b.model.maps.v[i], -1.0);
      Builder::term(r, b.model.maps.x_at(i, j), m_big);
    }
  // u_i + v_i <= R_i
  for (int i = 1; i <= n; ++i) {
    Constraint& r = b.row("eq8_" + std::to_string(i), Relation::LessEq, b.limit(i));
    Builder::term(r, b.model.maps.u[i], 1.0);
    Builder::term(r, b.model.maps.v[i], 1.0);
  }
  // v_i <= z
  for (int i = 1; i <= n; ++i) {
    Constraint& r = b.row("eq9_" + std::to_string(i), Relation::LessEq, 0.0);
    Builder::term(r, b.model.maps.v[i], 1.0);
    Builder::term(r, b.model.maps.z, -1.0);
  }

  b.model.objective = {{b.model.maps.z, 1.0}};
  return std::move(b.model);
}

namespace {

// Flow-balance core shared by F2 and F3: degree rows, y/w balances and the
// depot anchors (13)/(16), revisit rows (18).
void add_arc_core(Builder& b) {
  const int n = b.n, nn = b.nn;
  b.add_degree_rows("eq10", "eq11");

  // sum_j y_ij - sum_j y_ji = sum_j c_ij x_ij  for i in T
  for (int i = 1; i <= n; ++i) {
    Constraint& r = b.row("eq12_" + std::to_string(i), Relation::Equal, 0.0);
    for (int j = 0; j < nn; ++j) {
      Builder::term(r, b.model.maps.y_at(i, j), 1.0);
      Builder::term(r, b.model.maps.y_at(j, i), -1.0);
      Builder::term(r, b.model.maps.x_at(i, j), -b.c.at(i, j));
    }
  }
  // y_di = c_di x_di
  for (int i = 1; i <= n; ++i) {
    Constraint& r = b.row("eq13_" + std::to_string(i), Relation::Equal, 0.0);
    Builder::term(r, b.model.maps.y_at(kDepot, i), 1.0);
    Builder::term(r, b.model.maps.x_at(kDepot, i), -b.c.at(kDepot, i));
  }
  // sum_j w_ji - sum_j w_ij = sum_j c_ji x_ji  for i in T
  for (int i = 1; i <= n; ++i) {
    Constraint& r = b.row("eq15_" + std::to_string(i), Relation::Equal, 0.0);
    for (int j = 0; j < nn; ++j) {
      Builder::term(r, b.model.maps.w_at(j, i), 1.0);
      Builder::term(r, b.model.maps.w_at(i, j), -1.0);
      Builder::term(r, b.model.maps.x_at(j, i), -b.c.at(j, i));
    }
  }
  // w_id = c_id x_id
  for (int i = 1; i <= n; ++i) {
    Constraint& r = b.row("eq16_" + std::to_string(i), Relation::Equal, 0.0);
    Builder::term(r, b.model.maps.w_at(i, kDepot), 1.0);
    Builder::term(r, b.model.maps.x_at(i, kDepot), -b.c.at(i, kDepot));
  }
}

void add_revisit_rows(Builder& b) {
  const int n = b.n, nn = b.nn;
  // sum_j y_ji + sum_j w_ij <= R_i
  for (int i = 1; i <= n; ++i) {
    Constraint& r = b.row("eq18_" + std::to_string(i), Relation::LessEq, b.limit(i));
    for (int j = 0; j < nn; ++j) {
      Builder::term(r, b.model.maps.y_at(j, i), 1.0);
      Builder::term(r, b.model.maps.w_at(i, j), 1.0);
    }
  }
}

// y_or_w <= coef * x_ij, emitted as an x fixing when coef is negative
// (the arc cannot appear in any feasible cycle).
void add_capacity_row(Builder& b, const char* tag, int i, int j, int flow_var, int x_var,
                      double coef) {
  if (coef < 0.0) {
    Constraint& r = b.row(b.edge_tag((std::string(tag) + "fix").c_str(), i, j),
                          Relation::Equal, 0.0);
    Builder::term(r, x_var, 1.0);
    return;
  }
  Constraint& r = b.row(b.edge_tag(tag, i, j), Relation::LessEq, 0.0);
  Builder::term(r, flow_var, 1.0);
  Builder::term(r, x_var, -coef);
}

}  // namespace

MilpModel build_f2(const Instance& instance) {
  Builder b(instance, Formulation::F2);
  const int n = b.n, nn = b.nn;

  b.add_edge_vars(b.model.maps.x, "x", 0.0, VarKind::Binary);
  b.add_edge_vars(b.model.maps.y, "y", 0.0, VarKind::Continuous);
  b.add_edge_vars(b.model.maps.w, "w", 0.0, VarKind::Continuous);
  b.model.maps.z = b.add_var("z", 0.0, b.h, VarKind::Continuous);
  // Declared caps mirror the capacity rows so every variable stays bounded.
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      if (i == j) continue;
      b.model.variables[b.model.maps.y_at(i, j)].upper = (j == kDepot) ? b.h : b.limit(j);
      b.model.variables[b.model.maps.w_at(i, j)].upper = b.h;
    }

  add_arc_core(b);
  // 0 <= y_ij <= R_j x_ij for j in T; arcs into the depot are capped by H.
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      if (i == j) continue;
      if (j != kDepot)
        add_capacity_row(b, "eq14", i, j, b.model.maps.y_at(i, j),
                         b.model.maps.x_at(i, j), b.limit(j));
      else
        add_capacity_row(b, "eq14d", i, j, b.model.maps.y_at(i, j),
                         b.model.maps.x_at(i, j), b.h);
    }
  // 0 <= w_ij <= H x_ij (the paper's D_i bound, with H standing in), and the
  // same cap for arcs out of the depot.
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      if (i == j) continue;
      const char* tag = (i == kDepot) ? "eq17d" : "eq17";
      add_capacity_row(b, tag, i, j, b.model.maps.w_at(i, j),
                       b.model.maps.x_at(i, j), b.h);
    }
  add_revisit_rows(b);
  // w_ij <= z for i in T
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < nn; ++j) {
      if (i == j) continue;
      Constraint& r = b.row(b.edge_tag("eq19", i, j), Relation::LessEq, 0.0);
      Builder::term(r, b.model.maps.w_at(i, j), 1.0);
      Builder::term(r, b.model.maps.z, -1.0);
    }

  b.model.objective = {{b.model.maps.z, 1.0}};
  return std::move(b.model);
}

MilpModel build_f3(const Instance& instance) {
  Builder b(instance, Formulation::F3);
  const int n = b.n, nn = b.nn;
  const TravelMatrix& c = b.c;

  b.add_edge_vars(b.model.maps.x, "x", 0.0, VarKind::Binary);
  b.add_edge_vars(b.model.maps.y, "y", 0.0, VarKind::Continuous);
  b.add_edge_vars(b.model.maps.w, "w", 0.0, VarKind::Continuous);
  b.model.maps.z = b.add_var("z", 0.0, b.h, VarKind::Continuous);
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      if (i == j) continue;
      b.model.variables[b.model.maps.y_at(i, j)].upper =
          (j == kDepot) ? b.limit(i) : std::max(0.0, b.limit(j) - c.at(j, kDepot));
      b.model.variables[b.model.maps.w_at(i, j)].upper =
          (i == kDepot) ? b.limit(j) : std::max(0.0, b.limit(i) - c.at(kDepot, i));
    }

  add_arc_core(b);
  add_revisit_rows(b);

  // (22)/(23): y_ij <= (R_j - c_jd) x_ij between tasks, y_id <= R_i x_id into the depot.
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      if (i == j) continue;
      if (j != kDepot)
        add_capacity_row(b, "eq22", i, j, b.model.maps.y_at(i, j),
                         b.model.maps.x_at(i, j), b.limit(j) - c.at(j, kDepot));
      else
        add_capacity_row(b, "eq23", i, j, b.model.maps.y_at(i, j),
                         b.model.maps.x_at(i, j), b.limit(i));
    }
  // (24): y_ij >= (c_di + c_ij) x_ij, with c_dd = 0.
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      if (i == j) continue;
      const double coef = (i == kDepot ? 0.0 : c.at(kDepot, i)) + c.at(i, j);
      Constraint& r = b.row(b.edge_tag("eq24", i, j), Relation::GreaterEq, 0.0);
      Builder::term(r, b.model.maps.y_at(i, j), 1.0);
      Builder::term(r, b.model.maps.x_at(i, j), -coef);
    }
  // (25)/(26): w_ij <= (R_i - c_di) x_ij from tasks, w_di <= R_i x_di out of the depot.
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      if (i == j) continue;
      if (i != kDepot)
        add_capacity_row(b, "eq25", i, j, b.model.maps.w_at(i, j),
                         b.model.maps.x_at(i, j), b.limit(i) - c.at(kDepot, i));
      else
        add_capacity_row(b, "eq26", i, j, b.model.maps.w_at(i, j),
                         b.model.maps.x_at(i, j), b.limit(j));
    }
  // (27): w_ij >= (c_ij + c_jd) x_ij, with c_dd = 0.
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      if (i == j) continue;
      const double coef = c.at(i, j) + (j == kDepot ? 0.0 : c.at(j, kDepot));
      Constraint& r = b.row(b.edge_tag("eq27", i, j), Relation::GreaterEq, 0.0);
      Builder::term(r, b.model.maps.w_at(i, j), 1.0);
      Builder::term(r, b.model.maps.x_at(i, j), -coef);
    }
  // (28): w_di - c_di <= z, replacing the F2 objective links.
  for (int i = 1; i <= n; ++i) {
    Constraint& r = b.row("eq28_" + std::to_string(i), Relation::LessEq, 0.0);
    Builder::term(r, b.model.maps.w_at(kDepot, i), 1.0);
    Builder::term(r, b.model.maps.x_at(kDepot, i), -c.at(kDepot, i));
    Builder::term(r, b.model.maps.z, -1.0);
  }

  b.model.objective = {{b.model.maps.z, 1.0}};
  return std::move(b.model);
}

std::vector<ConstraintResidual> evaluate_assignment(const MilpModel& model,
                                                    const std::vector<double>& values) {
  std::vector<ConstraintResidual> out;
  auto tol = [](double ref) { return 1e-6 + 1e-9 * std::fabs(ref); };

  for (int j = 0; j < model.n_vars(); ++j) {
    const Variable& var = model.variables[j];
    if (values[j] < var.lower - tol(var.lower))
      out.push_back({"bnd_lo_" + var.name, var.lower - values[j]});
    if (values[j] > var.upper + tol(var.upper))
      out.push_back({"bnd_up_" + var.name, values[j] - var.upper});
  }
  for (const Constraint& r : model.constraints) {
    double lhs = 0.0;
    for (const LinearTerm& t : r.terms) lhs += t.coef * values[t.var];
    double residual = 0.0;
    switch (r.rel) {
      case Relation::LessEq: residual = lhs - r.rhs; break;
      case Relation::GreaterEq: residual = r.rhs - lhs; break;
      case Relation::Equal: residual = std::fabs(lhs - r.rhs); break;
    }
    if (residual > tol(r.rhs)) out.push_back({r.name, residual});
  }
  return out;
}

PlanCheck check_plan_against_model(const MilpModel& model, const Instance& instance,
                                   const RoutePlan& plan) {
  if (model.instance_hash != instance_hash(instance))
    throw HashMismatchError("model was built from a different instance");

  const PlanMetrics metrics = evaluate_plan(instance, plan);
  const TravelMatrix& c = instance.travel;
  const VarIndexMaps& maps = model.maps;

  std::vector<double> vals(model.n_vars(), 0.0);
  auto u_of = [&](int i) { return i == kDepot ? 0.0 : metrics.u.at(i); };
  auto v_of = [&](int i) { return i == kDepot ? 0.0 : metrics.v.at(i); };

  for (const auto& cycle : plan.cycles) {
    int prev = kDepot;
    for (std::size_t k = 0; k <= cycle.size(); ++k) {
      const int next = (k < cycle.size()) ? cycle[k] : kDepot;
      vals[maps.x_at(prev, next)] = 1.0;
      if (!maps.y.empty()) vals[maps.y_at(prev, next)] = u_of(prev) + c.at(prev, next);
      if (!maps.w.empty()) vals[maps.w_at(prev, next)] = v_of(next) + c.at(prev, next);
      prev = next;
    }
  }
  if (!maps.u.empty())
    for (int i = 1; i <= instance.n_tasks(); ++i) {
      if (maps.u[i] >= 0) vals[maps.u[i]] = metrics.u.at(i);
      if (maps.v[i] >= 0) vals[maps.v[i]] = metrics.v.at(i);
    }
  vals[maps.z] = metrics.z;

  PlanCheck check;
  check.witness = vals;
  check.violations = evaluate_assignment(model, vals);
  check.feasible = check.violations.empty();
  double obj = 0.0;
  for (const LinearTerm& t : model.objective) obj += t.coef * vals[t.var];
  check.objective = obj;
  return check;
}

RoutePlan plan_from_edges(const Instance& instance, const MilpModel& model,
                          const std::vector<double>& var_values) {
  const int n = instance.n_tasks();
  const int nn = n + 1;
  std::vector<int> succ(nn, -1);
  std::vector<int> in_degree(nn, 0);
  std::vector<int> depot_succ;

  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      if (i == j) continue;
      const int xi = model.maps.x_at(i, j);
      if (xi < 0) throw DecodeError(DecodeError::Kind::BadDegree, "model has no edge variables");
      const double value = var_values[xi];
      if (std::fabs(value - std::round(value)) > 1e-6)
        throw DecodeError(DecodeError::Kind::NonIntegral,
                          "x_" + std::to_string(i) + "_" + std::to_string(j) + " = " +
                              std::to_string(value));
      if (value < 0.5) continue;
      ++in_degree[j];
      if (i == kDepot) {
        depot_succ.push_back(j);
      } else {
        if (succ[i] != -1)
          throw DecodeError(DecodeError::Kind::BadDegree,
                            "task " + std::to_string(i) + " has two outgoing edges");
        succ[i] = j;
      }
    }

  for (int i = 1; i <= n; ++i) {
    if (succ[i] == -1)
      throw DecodeError(DecodeError::Kind::BadDegree,
                        "task " + std::to_string(i) + " has no outgoing edge");
    if (in_degree[i] != 1)
      throw DecodeError(DecodeError::Kind::BadDegree,
                        "task " + std::to_string(i) + " has in-degree " +
                            std::to_string(in_degree[i]));
  }
  if (static_cast<int>(depot_succ.size()) > instance.n_v)
    throw DecodeError(DecodeError::Kind::BadDegree, "depot out-degree exceeds n_v");

  RoutePlan plan;
  std::vector<char> visited(nn, 0);
  for (int start : depot_succ) {
    std::vector<int> cycle;
    int node = start;
    while (node != kDepot) {
      if (visited[node])
        throw DecodeError(DecodeError::Kind::BadDegree,
                          "task " + std::to_string(node) + " visited twice");
      visited[node] = 1;
      cycle.push_back(node);
      node = succ[node];
    }
    plan.cycles.push_back(std::move(cycle));
  }
  for (int i = 1; i <= n; ++i)
    if (!visited[i])
      throw DecodeError(DecodeError::Kind::SubtourDetected,
                        "task " + std::to_string(i) + " lies on a cycle that avoids the depot");
  return canonical_plan(std::move(plan));
}

}  // namespace pisr
