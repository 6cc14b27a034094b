#include "byzmac/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace byzmac {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-10;
constexpr double kLexTol = 1e-12;

struct ScaledRow {
  std::vector<KernelTerm> terms;  // deduplicated, scaled
  double rhs = 0.0;
  double scale = 1.0;
};

// Merge duplicate terms, drop vanishing rows, and normalize each row by its
// largest magnitude so that residuals are relative and the verdict does not
// depend on an overall rescaling of the constraints.
std::vector<ScaledRow> scale_rows(const FeasibilityProblem& p) {
  std::vector<ScaledRow> rows;
  rows.reserve(p.equalities.size());
  for (const LinearEquality& eq : p.equalities) {
    std::map<std::tuple<int, int, int>, double> merged;
    for (const KernelTerm& t : eq.terms) {
      if (t.kernel < 0 || t.kernel >= static_cast<int>(p.kernel_shapes.size()))
        throw Error(Errc::ShapeMismatch, "equality references kernel " + std::to_string(t.kernel));
      const Kernel& k = p.kernel_shapes[t.kernel];
      if (t.row < 0 || t.row >= k.input_rows() || t.out < 0 || t.out >= k.output_size)
        throw Error(Errc::ShapeMismatch, "equality references entry out of kernel range");
      if (!std::isfinite(t.coeff)) throw Error(Errc::ShapeMismatch, "non-finite coefficient");
      merged[{t.kernel, t.row, t.out}] += t.coeff;
    }
    ScaledRow r;
    double scale = std::abs(eq.rhs);
    for (const auto& [key, c] : merged) scale = std::max(scale, std::abs(c));
    if (scale < 1e-300) continue;  // 0 = 0
    r.scale = scale;
    r.rhs = eq.rhs / scale;
    for (const auto& [key, c] : merged) {
      if (c == 0.0) continue;
      r.terms.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c / scale});
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

// Dense phase-1 simplex: min sum(s+ + s-) + sum(a)
//   s.t.  A q + s+ - s- = b   (one pair per scaled equality)
//         R q + a = 1         (one row-sum constraint per kernel row)
//         q, s+, s-, a >= 0.
// Columns for s- are not stored; they are the negations of the s+ columns.
class PhaseOneSimplex {
 public:
  PhaseOneSimplex(const std::vector<ScaledRow>& rows, const std::vector<Kernel>& shapes) {
    nq_ = 0;
    kernel_offset_.reserve(shapes.size());
    for (const Kernel& k : shapes) {
      kernel_offset_.push_back(nq_);
      nq_ += k.input_rows() * k.output_size;
      nrows_sum_ += k.input_rows();
    }
    ne_ = static_cast<int>(rows.size());
    m_ = ne_ + nrows_sum_;
    ncols_ = nq_ + ne_ + nrows_sum_;  // q | s+ | a
    tab_.assign(static_cast<size_t>(m_ + 1) * (ncols_ + 1), 0.0);

    // Equality rows.
    for (int r = 0; r < ne_; ++r) {
      for (const KernelTerm& t : rows[r].terms) {
        const Kernel& k = shapes[t.kernel];
        int q = kernel_offset_[t.kernel] + t.row * k.output_size + t.out;
        at(r, q) += t.coeff;
      }
      at(r, nq_ + r) = 1.0;  // s+
      at(r, ncols_) = rows[r].rhs;
    }
    // Row-sum rows.
    int rr = ne_;
    for (size_t ki = 0; ki < shapes.size(); ++ki) {
      const Kernel& k = shapes[ki];
      for (int row = 0; row < k.input_rows(); ++row, ++rr) {
        for (int out = 0; out < k.output_size; ++out)
          at(rr, kernel_offset_[ki] + row * k.output_size + out) = 1.0;
        at(rr, nq_ + ne_ + (rr - ne_)) = 1.0;  // artificial
        at(rr, ncols_) = 1.0;
      }
    }

    // Initial basis: s+ or s- for equalities (sign of b), artificials for sums.
    basis_.resize(m_);
    colsign_.assign(ne_ + nrows_sum_, 1.0);
    for (int r = 0; r < ne_; ++r) {
      if (at(r, ncols_) < 0) {
        scale_row(r, -1.0);
        basis_[r] = id_sminus(r);
        colsign_[r] = -1.0;
      } else {
        basis_[r] = id_splus(r);
      }
    }
    for (int r = ne_; r < m_; ++r) basis_[r] = id_artificial(r - ne_);

    // Objective row: reduced costs. All basic variables have cost 1, so the
    // objective row is (cost of column) - sum over rows of that column.
    for (int j = 0; j <= ncols_; ++j) {
      double colsum = 0;
      for (int i = 0; i < m_; ++i) colsum += at(i, j);
      double cost = (j < nq_) ? 0.0 : 1.0;  // q costs 0; s+ and a cost 1
      if (j == ncols_) cost = 0.0;
      at(m_, j) = cost - colsum;
    }
    // Note: whenever basis_[r] is a virtual s-, the stored s+ column for r was
    // negated by scale_row above, so the tableau is consistent as stored.
  }

  void solve(int max_iters) {
    for (iters_ = 0; iters_ < max_iters; ++iters_) {
      auto [enter_id, enter_rc] = pick_entering();
      if (enter_id < 0) {
        optimal_ = true;
        break;
      }
      std::vector<double> col = materialize_column(enter_id);
      int leave = ratio_test(col);
      if (leave < 0) break;  // unbounded cannot happen here; guard anyway
      pivot(enter_id, leave, col);
    }
  }

  double objective() const { return -at(m_, ncols_); }
  int iterations() const { return iters_; }
  bool proven_optimal() const { return optimal_; }

  std::vector<double> extract_q() const {
    std::vector<double> q(nq_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < nq_) q[basis_[i]] = at(i, ncols_);
    return q;
  }

 private:
  int id_splus(int r) const { return nq_ + r; }
  int id_sminus(int r) const { return nq_ + ne_ + r; }
  int id_artificial(int i) const { return nq_ + 2 * ne_ + i; }
  bool is_sminus(int id) const { return id >= nq_ + ne_ && id < nq_ + 2 * ne_; }
  int phys_col(int id) const {
    if (id < nq_ + ne_) return id;                     // q or s+
    if (is_sminus(id)) return id - ne_;                // shares s+ column, negated
    return id - ne_;                                   // artificial
  }

  double& at(int i, int j) { return tab_[static_cast<size_t>(i) * (ncols_ + 1) + j]; }
  double at(int i, int j) const { return tab_[static_cast<size_t>(i) * (ncols_ + 1) + j]; }

  void scale_row(int r, double f) {
    double* row = &tab_[static_cast<size_t>(r) * (ncols_ + 1)];
    for (int j = 0; j <= ncols_; ++j) row[j] *= f;
  }

  double reduced_cost(int id) const {
    if (is_sminus(id)) return 2.0 - at(m_, phys_col(id));
    return at(m_, phys_col(id));
  }

  // Returns {id, reduced cost} of the entering variable (most negative reduced
  // cost, ties to the smallest id), or {-1, 0} at optimality.
  std::pair<int, double> pick_entering() const {
    int best = -1;
    double best_rc = -kCostTol;
    auto consider = [&](int id, double rc) {
      if (rc < best_rc) {
        best = id;
        best_rc = rc;
      }
    };
    for (int j = 0; j < ncols_; ++j) consider(j < nq_ + ne_ ? j : j + ne_, at(m_, j));
    for (int r = 0; r < ne_; ++r) consider(id_sminus(r), 2.0 - at(m_, nq_ + r));
    return {best, best_rc};
  }

  std::vector<double> materialize_column(int id) const {
    std::vector<double> col(m_ + 1);
    int pc = phys_col(id);
    double sign = is_sminus(id) ? -1.0 : 1.0;
    for (int i = 0; i < m_; ++i) col[i] = sign * at(i, pc);
    col[m_] = reduced_cost(id);
    return col;
  }

  // Lexicographic ratio test. The s+ and artificial columns jointly carry a
  // signed copy of B^-1, so comparing (rhs, sign-corrected identity block)/col
  // lexicographically breaks degenerate ties in a way that cannot cycle under
  // any entering rule.
  int ratio_test(const std::vector<double>& col) const {
    std::vector<int> cand;
    double best = 0;
    for (int i = 0; i < m_; ++i) {
      if (col[i] <= kPivotTol) continue;
      double rhs = at(i, ncols_);
      double ratio = (rhs > 0 ? rhs : 0.0) / col[i];
      if (cand.empty() || ratio < best - kLexTol * (1 + std::abs(best))) {
        cand.assign(1, i);
        best = ratio;
      } else if (ratio <= best + kLexTol * (1 + std::abs(best))) {
        if (ratio < best) best = ratio;
        cand.push_back(i);
      }
    }
    if (cand.empty()) return -1;
    for (int c = 0; c < ne_ + nrows_sum_ && cand.size() > 1; ++c) {
      int jcol = nq_ + c;
      double cbest = 0;
      std::vector<int> keep;
      for (int i : cand) {
        double v = colsign_[c] * at(i, jcol) / col[i];
        if (keep.empty() || v < cbest - kLexTol * (1 + std::abs(cbest))) {
          keep.assign(1, i);
          cbest = v;
        } else if (v <= cbest + kLexTol * (1 + std::abs(cbest))) {
          if (v < cbest) cbest = v;
          keep.push_back(i);
        }
      }
      cand.swap(keep);
    }
    return cand.front();
  }

  void pivot(int enter_id, int pr, const std::vector<double>& col) {
    double piv = col[pr];
    scale_row(pr, 1.0 / piv);
    double* prow = &tab_[static_cast<size_t>(pr) * (ncols_ + 1)];
    for (int i = 0; i <= m_; ++i) {
      if (i == pr) continue;
      double f = (i == m_) ? col[m_] : col[i];
      if (f == 0.0) continue;
      double* row = &tab_[static_cast<size_t>(i) * (ncols_ + 1)];
      for (int j = 0; j <= ncols_; ++j) row[j] -= f * prow[j];
    }
    basis_[pr] = enter_id;
  }

  int nq_ = 0, ne_ = 0, nrows_sum_ = 0, m_ = 0, ncols_ = 0, iters_ = 0;
  bool optimal_ = false;
  std::vector<int> kernel_offset_;
  std::vector<double> tab_;
  std::vector<int> basis_;
  std::vector<double> colsign_;
};

}  // namespace

FeasibilityOutcome solve_linear_feasibility(const FeasibilityProblem& problem, double tol) {
  if (problem.kernel_shapes.empty())
    throw Error(Errc::Degenerate, "feasibility problem has no kernel variables");
  if (tol <= 0) throw Error(Errc::ShapeMismatch, "tol must be positive");
  for (const Kernel& k : problem.kernel_shapes)
    if (k.output_size <= 0) throw Error(Errc::ShapeMismatch, "kernel with empty output alphabet");

  std::vector<ScaledRow> rows = scale_rows(problem);
  PhaseOneSimplex lp(rows, problem.kernel_shapes);
  int m = static_cast<int>(rows.size());
  for (const Kernel& k : problem.kernel_shapes) m += k.input_rows();
  lp.solve(500 * m + 20000);

  // Read off the kernels and recompute the achieved violation by direct
  // substitution; the tableau's objective cell is not trusted after many
  // pivots.
  std::vector<Kernel> kernels;
  {
    std::vector<double> q = lp.extract_q();
    size_t off = 0;
    for (const Kernel& shape : problem.kernel_shapes) {
      Kernel k = shape;
      k.k.assign(q.begin() + off, q.begin() + off + static_cast<size_t>(k.input_rows()) * k.output_size);
      off += k.k.size();
      for (int r = 0; r < k.input_rows(); ++r) {
        double s = 0;
        for (int o = 0; o < k.output_size; ++o) {
          double& v = k.at(r, o);
          if (v < 0 && v > -1e-9) v = 0;
          s += v;
        }
        if (s > 0)
          for (int o = 0; o < k.output_size; ++o) k.at(r, o) /= s;
        else
          k.at(r, 0) = 1.0;
      }
      kernels.push_back(std::move(k));
    }
  }
  double achieved = 0;  // total violation of the solution actually in hand
  for (const ScaledRow& r : rows) {
    double lhs = 0;
    for (const KernelTerm& t : r.terms) lhs += t.coeff * kernels[t.kernel](t.row, t.out);
    achieved += std::abs(lhs - r.rhs);
  }

  FeasibilityOutcome out;
  out.iterations = lp.iterations();
  if (achieved <= tol) {
    out.verdict = Verdict::FEASIBLE;
    out.certificate = std::move(kernels);
    out.violation = verify_certificate(problem, out.certificate);
    out.margin = 0.0;
  } else {
    out.margin = achieved;
    // An INFEASIBLE claim needs the minimum, not just some point; only make it
    // when the simplex proved optimality.
    if (lp.proven_optimal() && achieved > 10.0 * tol)
      out.verdict = Verdict::INFEASIBLE;
    else
      out.verdict = Verdict::INCONCLUSIVE;
  }
  return out;
}

double verify_certificate(const FeasibilityProblem& problem, const std::vector<Kernel>& kernels) {
  if (kernels.size() != problem.kernel_shapes.size())
    throw Error(Errc::ShapeMismatch, "certificate has wrong number of kernels");
  for (size_t i = 0; i < kernels.size(); ++i) {
    if (kernels[i].input_shape != problem.kernel_shapes[i].input_shape ||
        kernels[i].output_size != problem.kernel_shapes[i].output_size)
      throw Error(Errc::ShapeMismatch, "certificate kernel " + std::to_string(i) + " has wrong shape");
  }
  double worst = 0;
  for (const ScaledRow& r : scale_rows(problem)) {
    double lhs = 0;
    for (const KernelTerm& t : r.terms) lhs += t.coeff * kernels[t.kernel](t.row, t.out);
    worst = std::max(worst, std::abs(lhs - r.rhs));
  }
  for (const Kernel& k : kernels) worst = std::max(worst, k.stochasticity_deviation());
  return worst;
}

}  // namespace byzmac
