#include "pisr/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pisr {

namespace {

enum class Pos : unsigned char { Basic, AtLower, AtUpper };

struct ReducedRow {
  std::vector<LinearTerm> terms;  // reduced variable indices
  Relation rel = Relation::LessEq;
  double rhs = 0.0;
};

// Fixed-variable elimination. Substituting a fixed variable can leave a row
// with a single term, which is folded into that variable's bounds; the fold
// can fix further variables, so iterate to a fixpoint.
struct Presolve {
  bool infeasible = false;
  std::vector<double> lo, up;        // working bounds, model indexing
  std::vector<char> fixed;           // 1 = eliminated
  std::vector<ReducedRow> rows;      // surviving rows, still model indexing
  double objective_constant = 0.0;

  void run(const MilpModel& model) {
    const int n = model.n_vars();
    fixed.assign(n, 0);
    std::vector<char> row_done(model.constraints.size(), 0);
    std::vector<ReducedRow> work(model.constraints.size());
    for (std::size_t r = 0; r < model.constraints.size(); ++r) {
      work[r].terms = model.constraints[r].terms;
      work[r].rel = model.constraints[r].rel;
      work[r].rhs = model.constraints[r].rhs;
    }

    auto check_var = [&](int j) {
      if (fixed[j]) return;
      if (lo[j] > up[j] + 1e-9) {
        infeasible = true;
        return;
      }
      if (lo[j] >= up[j]) fixed[j] = 1;
    };
    for (int j = 0; j < n; ++j) check_var(j);

    bool changed = true;
    while (changed && !infeasible) {
      changed = false;
      for (std::size_t r = 0; r < work.size() && !infeasible; ++r) {
        if (row_done[r]) continue;
        ReducedRow& row = work[r];
        // substitute fixed variables into the rhs
        std::size_t keep = 0;
        for (std::size_t k = 0; k < row.terms.size(); ++k) {
          const LinearTerm& t = row.terms[k];
          if (fixed[t.var]) {
            row.rhs -= t.coef * lo[t.var];
            changed = true;
          } else {
            row.terms[keep++] = t;
          }
        }
        row.terms.resize(keep);

        if (keep == 0) {
          const double resid = (row.rel == Relation::LessEq)    ? -row.rhs
                               : (row.rel == Relation::GreaterEq) ? row.rhs
                                                                  : std::fabs(row.rhs);
          if (resid > 1e-7) infeasible = true;
          row_done[r] = 1;
          changed = true;
        } else if (keep == 1) {
          const int j = row.terms[0].var;
          const double a = row.terms[0].coef;
          const double b = row.rhs / a;
          const bool tighten_up = (row.rel == Relation::LessEq) == (a > 0.0);
          if (row.rel == Relation::Equal) {
            lo[j] = std::max(lo[j], b);
            up[j] = std::min(up[j], b);
          } else if (tighten_up) {
            up[j] = std::min(up[j], b);
          } else {
            lo[j] = std::max(lo[j], b);
          }
          check_var(j);
          row_done[r] = 1;
          changed = true;
        }
      }
    }
    for (std::size_t r = 0; r < work.size(); ++r)
      if (!row_done[r]) rows.push_back(std::move(work[r]));
  }
};

class Simplex {
 public:
  Simplex(const MilpModel& model, const std::vector<double>& lower,
          const std::vector<double>& upper, const LpOptions& options)
      : model_(model), options_(options) {
    pre_.lo = lower;
    pre_.up = upper;
    for (int j = 0; j < model.n_vars(); ++j) {
      if (std::isinf(pre_.lo[j]) || std::isinf(pre_.up[j]))
        throw std::invalid_argument("solve_lp requires finite bounds on all variables (" +
                                    model.variables[j].name + ")");
    }
    pre_.run(model);
  }

  LpSolution solve() {
    LpSolution sol;
    if (pre_.infeasible) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    build();
    if (m_ == 0) {
      solve_unconstrained(sol);
      return sol;
    }

    if (n_art_ > 0) {
      bool confirmed = false;
      while (true) {
        const LpStatus phase1 = run_phase(true);
        if (phase1 == LpStatus::IterationLimit) {
          sol.status = LpStatus::IterationLimit;
          sol.iterations = iterations_;
          return sol;
        }
        refine_basics();
        const double p1 = phase_objective(true);
        if (p1 <= options_.feas_tol) break;
        // marginal conclusions are re-confirmed on a freshly factorized
        // basis once: a false "infeasible" would let branch-and-bound prune
        // a live subtree. Decisively positive phase-1 optima stand as-is.
        if (p1 > 1e-3 || confirmed || !rebuild_from_basis()) {
          sol.status = LpStatus::Infeasible;
          sol.iterations = iterations_;
          return sol;
        }
        confirmed = true;
        set_phase_costs(true);
      }
      drive_out_artificials();
    }
    for (int attempt = 0;; ++attempt) {
      const LpStatus phase2 = run_phase(false);
      sol.status = phase2;
      sol.iterations = iterations_;
      if (phase2 != LpStatus::Optimal) return sol;
      refine_basics();
      extract(sol);
      if (verify(sol)) break;
      if (attempt >= 2 || !rebuild_from_basis()) {
        sol.status = LpStatus::IterationLimit;  // numerical trouble, surfaced
        return sol;
      }
    }
    return sol;
  }

 private:
  const MilpModel& model_;
  LpOptions options_;
  Presolve pre_;

  int m_ = 0;        // rows
  int n_red_ = 0;    // reduced structural variables
  int n_tot_ = 0;    // + slacks + artificials
  int first_art_ = 0;
  int n_art_ = 0;
  std::vector<int> red_of_model_, model_of_red_;
  std::vector<double> tableau_;  // m_ x n_tot_
  std::vector<double> xb_;
  std::vector<int> basis_;
  std::vector<int> init_col_;     // the slack/artificial column that opened row i
  std::vector<double> row_sign_;  // tableau row orientation vs the original row
  std::vector<Pos> pos_;
  std::vector<double> lo_, up_, cost_, dj_, weight_;
  std::vector<double> col_scratch_;
  std::vector<int> nz_scratch_;
  int iterations_ = 0;
  bool bland_ = false;
  int stall_ = 0;

  double& tab(int i, int j) { return tableau_[static_cast<std::size_t>(i) * n_tot_ + j]; }

  void build() {
    const int n = model_.n_vars();
    red_of_model_.assign(n, -1);
    for (int j = 0; j < n; ++j) {
      if (!pre_.fixed[j]) {
        red_of_model_[j] = n_red_;
        model_of_red_.push_back(j);
        ++n_red_;
      }
    }
    m_ = static_cast<int>(pre_.rows.size());

    // column layout pass: slacks for inequality rows, artificial columns only
    // for the rows whose slack cannot open the basis (keeps the tableau
    // narrow; most rows here are inequalities that start slack-basic)
    std::vector<double> residuals(m_);
    std::vector<char> needs_art(m_, 0);
    int n_slack = 0;
    n_art_ = 0;
    for (int i = 0; i < m_; ++i) {
      const ReducedRow& row = pre_.rows[i];
      double residual = row.rhs;
      for (const LinearTerm& t : row.terms) residual -= t.coef * pre_.lo[t.var];
      residuals[i] = residual;
      if (row.rel != Relation::Equal) ++n_slack;
      const bool slack_basic = (row.rel == Relation::LessEq && residual >= 0.0) ||
                               (row.rel == Relation::GreaterEq && residual <= 0.0);
      if (!slack_basic) {
        needs_art[i] = 1;
        ++n_art_;
      }
    }
    first_art_ = n_red_ + n_slack;
    n_tot_ = first_art_ + n_art_;

    lo_.assign(n_tot_, 0.0);
    up_.assign(n_tot_, kInfinity);
    pos_.assign(n_tot_, Pos::AtLower);
    for (int j = 0; j < n_red_; ++j) {
      lo_[j] = pre_.lo[model_of_red_[j]];
      up_[j] = pre_.up[model_of_red_[j]];
    }
    tableau_.assign(static_cast<std::size_t>(m_) * n_tot_, 0.0);
    xb_.assign(m_, 0.0);
    basis_.assign(m_, -1);
    col_scratch_.assign(m_, 0.0);
    init_col_.assign(m_, -1);
    row_sign_.assign(m_, 1.0);

    int slack = n_red_;
    int art = first_art_;
    for (int i = 0; i < m_; ++i) {
      const ReducedRow& row = pre_.rows[i];
      const double residual = residuals[i];
      for (const LinearTerm& t : row.terms) tab(i, red_of_model_[t.var]) += t.coef;
      int basic = -1;
      if (row.rel == Relation::LessEq) {
        tab(i, slack) = 1.0;
        if (!needs_art[i]) {
          basic = slack;
          xb_[i] = residual;
        }
        ++slack;
      } else if (row.rel == Relation::GreaterEq) {
        tab(i, slack) = -1.0;
        if (!needs_art[i]) {
          basic = slack;
          xb_[i] = -residual;
          // normalize so the basic column is +1
          for (int j = 0; j < n_tot_; ++j) tab(i, j) = -tab(i, j);
          row_sign_[i] = -1.0;
        }
        ++slack;
      }
      if (needs_art[i]) {
        if (residual < 0.0) {
          for (int j = 0; j < n_tot_; ++j) tab(i, j) = -tab(i, j);
          row_sign_[i] = -1.0;
        }
        tab(i, art) = 1.0;
        basic = art++;
        xb_[i] = std::fabs(residual);
      }
      basis_[i] = basic;
      init_col_[i] = basic >= 0 ? basic : (row.rel != Relation::Equal ? slack - 1 : -1);
      pos_[basic] = Pos::Basic;
    }
  }

  // Iterative refinement: the initial identity columns of the tableau hold
  // B^-1, so a residual sweep against the original rows turns into a cheap
  // correction of the basic values. Keeps long pivot chains within the
  // documented feasibility tolerance at big-M row scales.
  void refine_basics() {
    std::vector<double> red_values(n_tot_, 0.0);
    std::vector<double> resid_tab(m_, 0.0);
    for (int pass = 0; pass < 3; ++pass) {
      for (int j = 0; j < n_tot_; ++j)
        red_values[j] = (pos_[j] == Pos::AtUpper) ? up_[j] : lo_[j];
      for (int i = 0; i < m_; ++i) red_values[basis_[i]] = xb_[i];

      double worst = 0.0;
      int slack = n_red_;
      for (int i = 0; i < m_; ++i) {
        const ReducedRow& row = pre_.rows[i];
        double activity = 0.0;
        for (const LinearTerm& t : row.terms) {
          const int rj = red_of_model_[t.var];
          activity += t.coef * (rj < 0 ? pre_.lo[t.var] : red_values[rj]);
        }
        if (row.rel == Relation::LessEq)
          activity += red_values[slack++];
        else if (row.rel == Relation::GreaterEq)
          activity -= red_values[slack++];
        const int art = init_col_[i];
        if (art >= first_art_) activity += row_sign_[i] * red_values[art];
        resid_tab[i] = row_sign_[i] * (row.rhs - activity);
        worst = std::max(worst, std::fabs(resid_tab[i]));
      }
      if (worst <= 0.25 * options_.feas_tol) break;
      for (int i = 0; i < m_; ++i) {
        double delta = 0.0;
        const double* row = &tableau_[static_cast<std::size_t>(i) * n_tot_];
        for (int k = 0; k < m_; ++k) {
          if (resid_tab[k] == 0.0 || init_col_[k] < 0) continue;
          delta += row[init_col_[k]] * resid_tab[k];
        }
        xb_[i] += delta;
      }
    }
  }

  // Rebuild the tableau for the current basis from the original row data by
  // Gauss-Jordan elimination (fresh B^-1), wiping all accumulated drift.
  // Returns false when the recorded basis is numerically singular.
  bool rebuild_from_basis() {
    // raw initial tableau in row_sign_ orientation
    std::vector<double> raw(static_cast<std::size_t>(m_) * n_tot_, 0.0);
    std::vector<double> rhs_tab(m_, 0.0);
    {
      int slack = n_red_;
      for (int i = 0; i < m_; ++i) {
        const ReducedRow& row = pre_.rows[i];
        double* r = &raw[static_cast<std::size_t>(i) * n_tot_];
        for (const LinearTerm& t : row.terms) r[red_of_model_[t.var]] += t.coef;
        if (row.rel == Relation::LessEq)
          r[slack++] = 1.0;
        else if (row.rel == Relation::GreaterEq)
          r[slack++] = -1.0;
        rhs_tab[i] = row.rhs;
        if (row_sign_[i] < 0.0) {
          for (int j = 0; j < first_art_; ++j) r[j] = -r[j];
          rhs_tab[i] = -rhs_tab[i];
        }
        if (init_col_[i] >= first_art_) r[init_col_[i]] = 1.0;
      }
    }
    // B columns gathered from raw; eliminate [B | I]
    std::vector<double> binv(static_cast<std::size_t>(m_) * m_, 0.0);
    std::vector<double> bmat(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      binv[static_cast<std::size_t>(i) * m_ + i] = 1.0;
      for (int k = 0; k < m_; ++k)
        bmat[static_cast<std::size_t>(i) * m_ + k] = raw[static_cast<std::size_t>(i) * n_tot_ + basis_[k]];
    }
    for (int col = 0; col < m_; ++col) {
      int piv = -1;
      double best = 1e-11;
      for (int i = col; i < m_; ++i) {
        const double v = std::fabs(bmat[static_cast<std::size_t>(i) * m_ + col]);
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (piv < 0) return false;
      if (piv != col) {
        for (int j = 0; j < m_; ++j) {
          std::swap(bmat[static_cast<std::size_t>(piv) * m_ + j], bmat[static_cast<std::size_t>(col) * m_ + j]);
          std::swap(binv[static_cast<std::size_t>(piv) * m_ + j], binv[static_cast<std::size_t>(col) * m_ + j]);
        }
      }
      const double inv = 1.0 / bmat[static_cast<std::size_t>(col) * m_ + col];
      for (int j = 0; j < m_; ++j) {
        bmat[static_cast<std::size_t>(col) * m_ + j] *= inv;
        binv[static_cast<std::size_t>(col) * m_ + j] *= inv;
      }
      for (int i = 0; i < m_; ++i) {
        if (i == col) continue;
        const double f = bmat[static_cast<std::size_t>(i) * m_ + col];
        if (f == 0.0) continue;
        for (int j = 0; j < m_; ++j) {
          bmat[static_cast<std::size_t>(i) * m_ + j] -= f * bmat[static_cast<std::size_t>(col) * m_ + j];
          binv[static_cast<std::size_t>(i) * m_ + j] -= f * binv[static_cast<std::size_t>(col) * m_ + j];
        }
      }
    }
    // T = B^-1 raw; xb = B^-1 rhs minus nonbasic contributions
    std::vector<double> fresh(static_cast<std::size_t>(m_) * n_tot_, 0.0);
    for (int i = 0; i < m_; ++i) {
      double* out = &fresh[static_cast<std::size_t>(i) * n_tot_];
      const double* bi = &binv[static_cast<std::size_t>(i) * m_];
      for (int k = 0; k < m_; ++k) {
        const double f = bi[k];
        if (f == 0.0) continue;
        const double* r = &raw[static_cast<std::size_t>(k) * n_tot_];
        for (int j = 0; j < n_tot_; ++j) out[j] += f * r[j];
      }
    }
    tableau_.swap(fresh);
    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      const double* bi = &binv[static_cast<std::size_t>(i) * m_];
      for (int k = 0; k < m_; ++k) v += bi[k] * rhs_tab[k];
      const double* row = &tableau_[static_cast<std::size_t>(i) * n_tot_];
      for (int j = 0; j < n_tot_; ++j) {
        if (pos_[j] == Pos::Basic) continue;
        const double xj = (pos_[j] == Pos::AtUpper) ? up_[j] : lo_[j];
        if (xj != 0.0) v -= row[j] * xj;
      }
      xb_[i] = v;
    }
    return true;
  }

  void set_phase_costs(bool phase1) {
    cost_.assign(n_tot_, 0.0);
    if (phase1) {
      for (int j = first_art_; j < n_tot_; ++j) cost_[j] = 1.0;
    } else {
      for (const LinearTerm& t : model_.objective) {
        const int j = red_of_model_[t.var];
        if (j >= 0) cost_[j] += t.coef;
      }
      // artificials can never re-enter
      for (int j = first_art_; j < n_tot_; ++j)
        if (pos_[j] != Pos::Basic) up_[j] = 0.0;
    }
    refresh_reduced_costs();
  }

  void refresh_reduced_costs() {
    weight_.assign(n_tot_, 1.0);  // devex reference reset
    dj_ = cost_;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &tableau_[static_cast<std::size_t>(i) * n_tot_];
      for (int j = 0; j < n_tot_; ++j) dj_[j] -= cb * row[j];
    }
  }

  double phase_objective(bool phase1) const {
    double obj = 0.0;
    if (phase1) {
      for (int i = 0; i < m_; ++i)
        if (basis_[i] >= first_art_) obj += xb_[i];
    } else {
      for (int i = 0; i < m_; ++i) obj += cost_[basis_[i]] * xb_[i];
      for (int j = 0; j < n_tot_; ++j) {
        if (pos_[j] == Pos::AtLower)
          obj += cost_[j] * lo_[j];
        else if (pos_[j] == Pos::AtUpper)
          obj += cost_[j] * up_[j];
      }
    }
    return obj;
  }

  // Devex pricing: pick the eligible column maximizing dj^2 / weight.
  // Bland mode (anti-cycling fallback) takes the lowest eligible index.
  int pick_entering() const {
    int best = -1;
    double best_score = 0.0;
    for (int j = 0; j < n_tot_; ++j) {
      if (pos_[j] == Pos::Basic) continue;
      if (up_[j] - lo_[j] <= 0.0) continue;  // fixed
      // Bland mode raises the entering bar so stale reduced-cost noise
      // cannot drive junk pivots
      const double enter_tol = bland_ ? 10.0 * options_.feas_tol : options_.feas_tol;
      double d = 0.0;
      if (pos_[j] == Pos::AtLower && dj_[j] < -enter_tol)
        d = -dj_[j];
      else if (pos_[j] == Pos::AtUpper && dj_[j] > enter_tol)
        d = dj_[j];
      else
        continue;
      if (bland_) return j;  // lowest index eligible
      const double score = d * d / weight_[j];
      if (score > best_score + 1e-12 * best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  // One simplex phase. Returns Optimal when no entering variable remains.
  LpStatus run_phase(bool phase1) {
    set_phase_costs(phase1);
    bland_ = false;
    stall_ = 0;
    double last_obj = phase_objective(phase1);

    while (true) {
      if (iterations_ >= options_.max_iterations) return LpStatus::IterationLimit;
      const int e = pick_entering();
      if (e < 0) return LpStatus::Optimal;

      const double dir = (pos_[e] == Pos::AtLower) ? 1.0 : -1.0;
      double col_max = 0.0;
      for (int i = 0; i < m_; ++i) {
        col_scratch_[i] = tab(i, e);
        col_max = std::max(col_max, std::fabs(col_scratch_[i]));
      }

      // Harris two-pass ratio test. Pass 1 finds the largest step that keeps
      // every basic variable within a hair of its bound; pass 2 picks the
      // largest pivot element among the rows whose strict ratio fits under
      // that step. When even the relaxed window only offers pivots far below
      // the column's magnitude, the window widens to the full feasibility
      // tolerance once — tiny pivots in columns spanning ten orders of
      // magnitude would otherwise shred the tableau.
      const double flip_t = up_[e] - lo_[e];
      auto relaxed_step = [&](double slack_tol) {
        double t = flip_t;
        for (int i = 0; i < m_; ++i) {
          const double g = col_scratch_[i];
          if (std::fabs(g) <= options_.pivot_tol) continue;
          const double delta = dir * g;  // xb decreases by delta * t
          const int bv = basis_[i];
          double slack;
          if (delta > 0.0) {
            slack = xb_[i] - lo_[bv];
          } else {
            if (std::isinf(up_[bv])) continue;
            slack = up_[bv] - xb_[i];
          }
          if (slack < 0.0) slack = 0.0;
          t = std::min(t, (slack + slack_tol) / std::fabs(delta));
        }
        return t;
      };

      int leave_row = -1;
      bool leave_to_upper = false;
      double best_pivot = 0.0;
      double t_best = flip_t;
      auto pick_leaving = [&](double t_relaxed) {
        leave_row = -1;
        leave_to_upper = false;
        best_pivot = 0.0;
        t_best = flip_t;
        for (int i = 0; i < m_; ++i) {
          const double g = col_scratch_[i];
          if (std::fabs(g) <= options_.pivot_tol) continue;
          const double delta = dir * g;
          const int bv = basis_[i];
          double t_i;
          bool to_upper;
          if (delta > 0.0) {
            t_i = (xb_[i] - lo_[bv]) / delta;
            to_upper = false;
          } else {
            if (std::isinf(up_[bv])) continue;
            t_i = (up_[bv] - xb_[i]) / (-delta);
            to_upper = true;
          }
          if (t_i < 0.0) t_i = 0.0;
          if (t_i > t_relaxed) continue;
          bool better;
          if (leave_row < 0) {
            better = true;
          } else if (bland_) {
            // anti-cycling: lowest variable index among usable pivots
            const bool stable = std::fabs(g) >= 0.01 * best_pivot;
            better = stable && bv < basis_[leave_row];
            if (std::fabs(g) > 100.0 * best_pivot) better = true;
          } else {
            better = std::fabs(g) > best_pivot + 1e-12 ||
                     (std::fabs(g) > best_pivot - 1e-12 && bv < basis_[leave_row]);
          }
          if (better) {
            leave_row = i;
            leave_to_upper = to_upper;
            best_pivot = std::fabs(g);
            t_best = t_i;
          }
        }
      };

      const double t_tight = relaxed_step(1e-9);
      if (std::isinf(t_tight)) return LpStatus::Unbounded;
      pick_leaving(t_tight);
      if (leave_row >= 0 && best_pivot < 1e-6 * col_max) pick_leaving(relaxed_step(options_.feas_tol));
      if (leave_row < 0) t_best = flip_t;
      ++iterations_;

      if (leave_row < 0) {
        // bound flip, no basis change
        const double t = t_best;
        for (int i = 0; i < m_; ++i) xb_[i] -= t * dir * col_scratch_[i];
        pos_[e] = (pos_[e] == Pos::AtLower) ? Pos::AtUpper : Pos::AtLower;
      } else {
        const double t = t_best;
        const double enter_value = ((dir > 0.0) ? lo_[e] : up_[e]) + dir * t;
        for (int i = 0; i < m_; ++i) xb_[i] -= t * dir * col_scratch_[i];

        const int lv = basis_[leave_row];
        pos_[lv] = leave_to_upper ? Pos::AtUpper : Pos::AtLower;
        if (lv >= first_art_) lo_[lv] = up_[lv] = 0.0;  // artificials never re-enter
        basis_[leave_row] = e;
        pos_[e] = Pos::Basic;
        xb_[leave_row] = enter_value;

        // pivot the tableau and the reduced-cost row; only the pivot row's
        // nonzero columns change, and early tableaus are very sparse
        double* prow = &tableau_[static_cast<std::size_t>(leave_row) * n_tot_];
        const double p = prow[e];
        const double inv = 1.0 / p;
        nz_scratch_.clear();
        for (int j = 0; j < n_tot_; ++j) {
          if (prow[j] == 0.0) continue;
          prow[j] *= inv;
          nz_scratch_.push_back(j);
        }
        prow[e] = 1.0;
        for (int i = 0; i < m_; ++i) {
          if (i == leave_row) continue;
          const double g = col_scratch_[i];
          if (g == 0.0) continue;
          double* row = &tableau_[static_cast<std::size_t>(i) * n_tot_];
          for (int j : nz_scratch_) row[j] -= g * prow[j];
          row[e] = 0.0;
        }
        const double dg = dj_[e];
        if (dg != 0.0) {
          for (int j : nz_scratch_) dj_[j] -= dg * prow[j];
          dj_[e] = 0.0;
        }
        const double we = weight_[e];
        for (int j : nz_scratch_) {
          const double cand = prow[j] * prow[j] * we;
          if (cand > weight_[j]) weight_[j] = cand;
        }
        weight_[lv] = std::max(we / (p * p), 1.0);
      }

      const double obj = phase_objective(phase1);
      if (obj < last_obj - 1e-12 * (1.0 + std::fabs(last_obj))) {
        stall_ = 0;
        bland_ = false;
      } else if (++stall_ >= options_.stall_threshold && !bland_) {
        bland_ = true;
        refresh_reduced_costs();  // enter the anti-cycling phase on clean numbers
      }
      if (iterations_ % 1024 == 0) refresh_reduced_costs();
      last_obj = obj;
    }
  }

  // Pivot basic artificials out at a degenerate step; rows where no
  // structural pivot exists are redundant and keep a fixed artificial.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      double* prow = &tableau_[static_cast<std::size_t>(i) * n_tot_];
      int enter = -1;
      for (int j = 0; j < first_art_; ++j) {
        if (pos_[j] == Pos::Basic) continue;
        if (std::fabs(prow[j]) > options_.pivot_tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) {
        up_[basis_[i]] = 0.0;  // redundant row
        continue;
      }
      const int art = basis_[i];
      for (int r = 0; r < m_; ++r) col_scratch_[r] = tab(r, enter);
      const double p = prow[enter];
      const double inv = 1.0 / p;
      nz_scratch_.clear();
      for (int j = 0; j < n_tot_; ++j) {
        if (prow[j] == 0.0) continue;
        prow[j] *= inv;
        nz_scratch_.push_back(j);
      }
      prow[enter] = 1.0;
      for (int r = 0; r < m_; ++r) {
        if (r == i) continue;
        const double g = col_scratch_[r];
        if (g == 0.0) continue;
        double* row = &tableau_[static_cast<std::size_t>(r) * n_tot_];
        for (int j : nz_scratch_) row[j] -= g * prow[j];
        row[enter] = 0.0;
      }
      const double entering_value =
          (pos_[enter] == Pos::AtLower) ? lo_[enter] : up_[enter];
      basis_[i] = enter;
      pos_[enter] = Pos::Basic;
      pos_[art] = Pos::AtLower;
      lo_[art] = up_[art] = 0.0;
      xb_[i] = entering_value;  // degenerate pivot, value unchanged at its bound
    }
  }

  void solve_unconstrained(LpSolution& sol) {
    sol.values.assign(model_.n_vars(), 0.0);
    std::vector<double> red_cost(n_red_, 0.0);
    for (const LinearTerm& t : model_.objective) {
      const int j = red_of_model_[t.var];
      if (j >= 0) red_cost[j] += t.coef;
    }
    for (int j = 0; j < model_.n_vars(); ++j) {
      if (pre_.fixed[j]) {
        sol.values[j] = pre_.lo[j];
      } else {
        const int rj = red_of_model_[j];
        sol.values[j] = red_cost[rj] > 0.0 ? pre_.lo[j] : (red_cost[rj] < 0.0 ? pre_.up[j] : pre_.lo[j]);
      }
    }
    sol.status = LpStatus::Optimal;
    sol.objective = 0.0;
    for (const LinearTerm& t : model_.objective) sol.objective += t.coef * sol.values[t.var];
    sol.iterations = 0;
  }

  void extract(LpSolution& sol) {
    std::vector<double> red_values(n_tot_, 0.0);
    for (int j = 0; j < n_tot_; ++j)
      red_values[j] = (pos_[j] == Pos::AtUpper) ? up_[j] : lo_[j];
    for (int i = 0; i < m_; ++i) red_values[basis_[i]] = xb_[i];

    sol.values.assign(model_.n_vars(), 0.0);
    for (int j = 0; j < model_.n_vars(); ++j) {
      if (pre_.fixed[j]) {
        sol.values[j] = pre_.lo[j];
      } else {
        double v = red_values[red_of_model_[j]];
        // clean sub-tolerance drift against the variable's own bounds
        v = std::min(std::max(v, pre_.lo[j]), pre_.up[j]);
        sol.values[j] = v;
      }
    }
    sol.objective = 0.0;
    for (const LinearTerm& t : model_.objective) sol.objective += t.coef * sol.values[t.var];
  }

  bool verify(const LpSolution& sol) const {
    for (const Constraint& r : model_.constraints) {
      double lhs = 0.0;
      for (const LinearTerm& t : r.terms) lhs += t.coef * sol.values[t.var];
      const double tol = options_.feas_tol + 1e-9 * std::fabs(r.rhs);
      switch (r.rel) {
        case Relation::LessEq:
          if (lhs > r.rhs + tol) return false;
          break;
        case Relation::GreaterEq:
          if (lhs < r.rhs - tol) return false;
          break;
        case Relation::Equal:
          if (std::fabs(lhs - r.rhs) > tol) return false;
          break;
      }
    }
    return true;
  }
};

}  // namespace

LpSolution solve_lp(const MilpModel& model, const std::vector<double>& lower,
                    const std::vector<double>& upper, const LpOptions& options) {
  // A failed verification or iteration cap surfaces as IterationLimit; retry
  // from scratch with progressively more conservative pivoting before
  // passing that verdict on. Fresh builds carry no accumulated drift, and
  // early Bland phases pivot far more gently on big-M rows.
  LpOptions opts = options;
  LpSolution sol = Simplex(model, lower, upper, opts).solve();
  if (sol.status != LpStatus::IterationLimit) return sol;
  opts.stall_threshold = std::min(options.stall_threshold, 40);
  sol = Simplex(model, lower, upper, opts).solve();
  if (sol.status != LpStatus::IterationLimit) return sol;
  opts.stall_threshold = 2;
  opts.max_iterations = 4 * options.max_iterations;
  return Simplex(model, lower, upper, opts).solve();
}

LpSolution solve_lp(const MilpModel& model, const LpOptions& options) {
  std::vector<double> lower(model.n_vars()), upper(model.n_vars());
  for (int j = 0; j < model.n_vars(); ++j) {
    lower[j] = model.variables[j].lower;
    upper[j] = model.variables[j].upper;
  }
  return solve_lp(model, lower, upper, options);
}

}  // namespace pisr
