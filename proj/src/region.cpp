#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "byzmac/info.hpp"
#include "byzmac/region.hpp"
#include "byzmac/rng.hpp"

namespace byzmac {

namespace {

// ---- dense linear algebra helpers (problems here are tiny) ----

struct Matrix {
  int rows = 0, cols = 0;
  std::vector<double> a;
  double& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

// Solves the SPD system M x = r in place via Cholesky; M is factored once.
struct Cholesky {
  int nn = 0;
  std::vector<double> l;
  explicit Cholesky(const Matrix& m) : nn(m.rows), l(static_cast<size_t>(m.rows) * m.rows, 0.0) {
    for (int i = 0; i < nn; ++i)
      for (int j = 0; j <= i; ++j) {
        double s = m.at(i, j);
        for (int k = 0; k < j; ++k) s -= l[i * nn + k] * l[j * nn + k];
        if (i == j)
          l[i * nn + i] = std::sqrt(std::max(s, 1e-300));
        else
          l[i * nn + j] = s / l[j * nn + j];
      }
  }
  void solve(std::vector<double>& x) const {
    for (int i = 0; i < nn; ++i) {
      double s = x[i];
      for (int k = 0; k < i; ++k) s -= l[i * nn + k] * x[k];
      x[i] = s / l[i * nn + i];
    }
    for (int i = nn - 1; i >= 0; --i) {
      double s = x[i];
      for (int k = i + 1; k < nn; ++k) s -= l[k * nn + i] * x[k];
      x[i] = s / l[i * nn + i];
    }
  }
};

// ---- inner bound machinery ----

// Joint distribution over (X, Y, X~, Y~, Z), row-major in that order.
struct InnerProblem {
  int nx, ny, nz;
  size_t cells;
  std::vector<int> sizes;
  Matrix A;  // equality constraints A p = b
  std::vector<double> b;
  Cholesky* chol = nullptr;
  std::vector<double> honest;  // always-feasible start

  size_t idx(int x, int y, int xt, int yt, int z) const {
    return ((((static_cast<size_t>(x) * ny + y) * nx + xt) * ny + yt) * nz + z);
  }
};

InnerProblem build_inner_problem(const Mac& ch, const DistributionVector& p1,
                                 const DistributionVector& p2, bool independent_xy) {
  if (p1.size() != ch.nx || p2.size() != ch.ny)
    throw Error(Errc::ShapeMismatch, "compositions do not match channel alphabets");
  p1.validate();
  p2.validate();
  InnerProblem ip;
  ip.nx = ch.nx;
  ip.ny = ch.ny;
  ip.nz = ch.nz;
  ip.sizes = {ch.nx, ch.ny, ch.nx, ch.ny, ch.nz};
  ip.cells = static_cast<size_t>(ch.nx) * ch.ny * ch.nx * ch.ny * ch.nz;

  int rows = ch.nx * ch.ny * ch.nz * 2 + 1 + (independent_xy ? ch.nx * ch.ny : 0);
  ip.A.rows = rows;
  ip.A.cols = static_cast<int>(ip.cells);
  ip.A.a.assign(static_cast<size_t>(rows) * ip.cells, 0.0);
  ip.b.assign(rows, 0.0);

  int r = 0;
  // marginal over (X, Y~, Z) equals P1 x P_Y~ x W, with P_Y~ a marginal of p
  for (int x = 0; x < ch.nx; ++x)
    for (int yt = 0; yt < ch.ny; ++yt)
      for (int z = 0; z < ch.nz; ++z, ++r) {
        double c = p1.probs[x] * ch(x, yt, z);
        for (int xx = 0; xx < ch.nx; ++xx)
          for (int y = 0; y < ch.ny; ++y)
            for (int xt = 0; xt < ch.nx; ++xt)
              for (int yy = 0; yy < ch.ny; ++yy)
                for (int zz = 0; zz < ch.nz; ++zz) {
                  double v = 0;
                  if (xx == x && yy == yt && zz == z) v += 1.0;
                  if (yy == yt) v -= c;
                  if (v != 0) ip.A.at(r, static_cast<int>(ip.idx(xx, y, xt, yy, zz))) += v;
                }
      }
  // marginal over (X~, Y, Z) equals P_X~ x P2 x W
  for (int xt = 0; xt < ch.nx; ++xt)
    for (int y = 0; y < ch.ny; ++y)
      for (int z = 0; z < ch.nz; ++z, ++r) {
        double c = p2.probs[y] * ch(xt, y, z);
        for (int xx = 0; xx < ch.nx; ++xx)
          for (int yy = 0; yy < ch.ny; ++yy)
            for (int xtt = 0; xtt < ch.nx; ++xtt)
              for (int yt = 0; yt < ch.ny; ++yt)
                for (int zz = 0; zz < ch.nz; ++zz) {
                  double v = 0;
                  if (xtt == xt && yy == y && zz == z) v += 1.0;
                  if (xtt == xt) v -= c;
                  if (v != 0) ip.A.at(r, static_cast<int>(ip.idx(xx, yy, xtt, yt, zz))) += v;
                }
      }
  // total mass
  for (size_t c = 0; c < ip.cells; ++c) ip.A.at(r, static_cast<int>(c)) = 1.0;
  ip.b[r] = 1.0;
  ++r;
  if (independent_xy) {
    for (int x = 0; x < ch.nx; ++x)
      for (int y = 0; y < ch.ny; ++y, ++r) {
        for (int xt = 0; xt < ch.nx; ++xt)
          for (int yt = 0; yt < ch.ny; ++yt)
            for (int z = 0; z < ch.nz; ++z) ip.A.at(r, static_cast<int>(ip.idx(x, y, xt, yt, z))) = 1.0;
        ip.b[r] = p1.probs[x] * p2.probs[y];
      }
  }

  // honest joint: X ~ P1, Y ~ P2 independent, X~ = X, Y~ = Y, Z ~ W(X,Y)
  ip.honest.assign(ip.cells, 0.0);
  for (int x = 0; x < ch.nx; ++x)
    for (int y = 0; y < ch.ny; ++y)
      for (int z = 0; z < ch.nz; ++z)
        ip.honest[ip.idx(x, y, x, y, z)] = p1.probs[x] * p2.probs[y] * ch(x, y, z);
  return ip;
}

struct AffineProjector {
  const InnerProblem& ip;
  Cholesky chol;
  explicit AffineProjector(const InnerProblem& p) : ip(p), chol(gram(p)) {}

  static Matrix gram(const InnerProblem& p) {
    Matrix m;
    m.rows = m.cols = p.A.rows;
    m.a.assign(static_cast<size_t>(m.rows) * m.cols, 0.0);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j <= i; ++j) {
        double s = 0;
        for (size_t c = 0; c < p.cells; ++c) s += p.A.at(i, static_cast<int>(c)) * p.A.at(j, static_cast<int>(c));
        m.at(i, j) = m.at(j, i) = s + (i == j ? 1e-12 : 0.0);
      }
    return m;
  }

  double residual(const std::vector<double>& p) const {
    double worst = 0;
    for (int i = 0; i < ip.A.rows; ++i) {
      double s = -ip.b[i];
      for (size_t c = 0; c < ip.cells; ++c) s += ip.A.at(i, static_cast<int>(c)) * p[c];
      worst = std::max(worst, std::abs(s));
    }
    return worst;
  }

  void project_affine(std::vector<double>& p) const {
    std::vector<double> r(ip.A.rows);
    for (int i = 0; i < ip.A.rows; ++i) {
      double s = -ip.b[i];
      for (size_t c = 0; c < ip.cells; ++c) s += ip.A.at(i, static_cast<int>(c)) * p[c];
      r[i] = s;
    }
    chol.solve(r);
    for (size_t c = 0; c < ip.cells; ++c) {
      double adj = 0;
      for (int i = 0; i < ip.A.rows; ++i) adj += ip.A.at(i, static_cast<int>(c)) * r[i];
      p[c] -= adj;
    }
  }

  // Alternating projections onto {A p = b} and the nonnegative orthant.
  bool make_feasible(std::vector<double>& p, int rounds = 2000, double tol = 1e-11) const {
    for (int it = 0; it < rounds; ++it) {
      project_affine(p);
      bool clipped = false;
      for (double& v : p)
        if (v < 0) {
          v = 0;
          clipped = true;
        }
      if (!clipped && residual(p) <= tol) return true;
    }
    project_affine(p);
    double worst = residual(p);
    for (double v : p) worst = std::max(worst, -v);
    return worst <= tol * 10;
  }
};

struct Objective {
  // +/- entropy terms over coordinate subsets
  struct Term {
    double sign;
    std::vector<int> coords;
  };
  std::vector<Term> terms;

  static Objective conditional_mi(const std::vector<int>& a, const std::vector<int>& b,
                                  const std::vector<int>& c) {
    Objective o;
    auto join = [](std::vector<int> u, const std::vector<int>& v) {
      u.insert(u.end(), v.begin(), v.end());
      return u;
    };
    o.terms.push_back({+1.0, join(a, c)});
    o.terms.push_back({+1.0, join(b, c)});
    if (!c.empty()) o.terms.push_back({-1.0, c});
    o.terms.push_back({-1.0, join(join(a, b), c)});
    return o;
  }
};

double eval_objective(const Objective& obj, const std::vector<double>& p,
                      const std::vector<int>& sizes) {
  double v = 0;
  for (const auto& t : obj.terms) {
    // marginal over t.coords
    size_t mcells = 1;
    for (int c : t.coords) mcells *= sizes[c];
    std::vector<double> m(mcells, 0.0);
    std::vector<int> idx(sizes.size(), 0);
    for (size_t flat = 0; flat < p.size(); ++flat) {
      if (p[flat] > 0) {
        size_t mf = 0;
        for (int c : t.coords) mf = mf * sizes[c] + idx[c];
        m[mf] += p[flat];
      }
      for (int j = static_cast<int>(sizes.size()) - 1; j >= 0; --j) {
        if (++idx[j] < sizes[j]) break;
        idx[j] = 0;
      }
    }
    v += t.sign * entropy_bits(m);
  }
  return v < 0 ? 0.0 : v;
}

std::vector<double> eval_gradient(const Objective& obj, const std::vector<double>& p,
                                  const std::vector<int>& sizes) {
  std::vector<double> g(p.size(), 0.0);
  const double inv_ln2 = 1.0 / std::log(2.0);
  for (const auto& t : obj.terms) {
    size_t mcells = 1;
    for (int c : t.coords) mcells *= sizes[c];
    std::vector<double> m(mcells, 0.0);
    std::vector<int> idx(sizes.size(), 0);
    std::vector<size_t> cell_to_m(p.size());
    for (size_t flat = 0; flat < p.size(); ++flat) {
      size_t mf = 0;
      for (int c : t.coords) mf = mf * sizes[c] + idx[c];
      cell_to_m[flat] = mf;
      if (p[flat] > 0) m[mf] += p[flat];
      for (int j = static_cast<int>(sizes.size()) - 1; j >= 0; --j) {
        if (++idx[j] < sizes[j]) break;
        idx[j] = 0;
      }
    }
    for (size_t flat = 0; flat < p.size(); ++flat) {
      double mass = std::max(m[cell_to_m[flat]], 1e-18);
      g[flat] += t.sign * (-(std::log2(mass) + inv_ln2));
    }
  }
  return g;
}

// Projected gradient descent from one start; returns the best objective value.
double minimize_from(const InnerProblem& ip, const AffineProjector& proj, const Objective& obj,
                     std::vector<double> p, int max_iters, double tol) {
  if (!proj.make_feasible(p)) return 1e300;
  double best = eval_objective(obj, p, ip.sizes);
  double step = 0.25;
  for (int it = 0; it < max_iters; ++it) {
    std::vector<double> g = eval_gradient(obj, p, ip.sizes);
    bool improved = false;
    while (step > 1e-9) {
      std::vector<double> q = p;
      for (size_t c = 0; c < q.size(); ++c) q[c] -= step * g[c];
      if (!proj.make_feasible(q, 300)) {
        step /= 2;
        continue;
      }
      double v = eval_objective(obj, q, ip.sizes);
      if (v < best - tol) {
        p = std::move(q);
        best = v;
        improved = true;
        step = std::min(step * 1.5, 1.0);
        break;
      }
      step /= 2;
    }
    if (!improved) break;
  }
  return best;
}

double minimize_mi(const Mac& ch, const DistributionVector& p1, const DistributionVector& p2,
                   bool independent_xy, const Objective& obj, const InnerSearchConfig& cfg) {
  InnerProblem ip = build_inner_problem(ch, p1, p2, independent_xy);
  AffineProjector proj(ip);
  if (proj.residual(ip.honest) > 1e-9)
    throw Error(Errc::InfeasibleConstraintSet, "no joint distribution satisfies the marginal constraints");

  double best = minimize_from(ip, proj, obj, ip.honest, cfg.max_iters, cfg.tol);
  Rng rng(cfg.seed);
  for (int s = 1; s < cfg.starts; ++s) {
    std::vector<double> p(ip.cells);
    double tot = 0;
    for (double& v : p) tot += (v = -std::log(std::max(rng.next_double(), 1e-12)));
    for (double& v : p) v /= tot;
    double v = minimize_from(ip, proj, obj, std::move(p), cfg.max_iters, cfg.tol);
    best = std::min(best, v);
  }
  return best;
}

}  // namespace

InnerCornerResult inner_bound_corner(const Mac& ch, const DistributionVector& comp1,
                                     const DistributionVector& comp2, InnerForm form,
                                     const InnerSearchConfig& cfg) {
  // coordinates (X, Y, X~, Y~, Z) = (0, 1, 2, 3, 4)
  Objective i_x_z = Objective::conditional_mi({0}, {4}, {});
  Objective i_y_z = Objective::conditional_mi({1}, {4}, {});
  Objective i_y_z_given_x = Objective::conditional_mi({1}, {4}, {0});
  Objective i_x_z_given_y = Objective::conditional_mi({0}, {4}, {1});

  InnerCornerResult res;
  res.starts_used = cfg.starts;
  if (form == InnerForm::R1Form) {
    res.point.r1 = minimize_mi(ch, comp1, comp2, false, i_x_z, cfg);
    res.point.r2 = minimize_mi(ch, comp1, comp2, true, i_y_z_given_x, cfg);
  } else {
    res.point.r1 = minimize_mi(ch, comp1, comp2, true, i_x_z_given_y, cfg);
    res.point.r2 = minimize_mi(ch, comp1, comp2, false, i_y_z, cfg);
  }
  return res;
}

std::pair<RatePoint, RatePoint> erasure_inner_bound_exact(double delta) {
  if (!(delta > 0 && delta < 0.5))
    throw Error(Errc::ShapeMismatch, "delta must lie strictly between 0 and 0.5");
  std::vector<double> p1 = {0.5 - delta, 0.5 + delta};
  std::vector<double> p2 = {0.5 + delta, 0.5 - delta};
  std::vector<int> sizes = {2, 2, 3};
  std::vector<double> joint(12, 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) joint[(x * 2 + y) * 3 + (x + y)] = p1[x] * p2[y];

  RatePoint corner1{mutual_information(joint, sizes, {0}, {2}),
                    mutual_information(joint, sizes, {1}, {2}, {0})};
  RatePoint corner2{mutual_information(joint, sizes, {0}, {2}, {1}),
                    mutual_information(joint, sizes, {1}, {2})};
  return {corner1, corner2};
}

namespace {

// Gaussian elimination with partial pivoting on an augmented system;
// returns {solvable, unique} and the solution when unique.
struct GaussResult {
  bool consistent = false;
  bool unique = false;
  std::vector<double> x;
};

GaussResult solve_unique(std::vector<std::vector<double>> rows, int nvars) {
  const double tol = 1e-11;
  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < nvars && rank < static_cast<int>(rows.size()); ++col) {
    int best = -1;
    double bv = tol;
    for (int i = rank; i < static_cast<int>(rows.size()); ++i)
      if (std::abs(rows[i][col]) > bv) {
        bv = std::abs(rows[i][col]);
        best = i;
      }
    if (best < 0) continue;
    std::swap(rows[rank], rows[best]);
    double piv = rows[rank][col];
    for (int j = col; j <= nvars; ++j) rows[rank][j] /= piv;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == rank) continue;
      double f = rows[i][col];
      if (f == 0) continue;
      for (int j = col; j <= nvars; ++j) rows[i][j] -= f * rows[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  GaussResult res;
  res.consistent = true;
  for (int i = rank; i < static_cast<int>(rows.size()); ++i)
    if (std::abs(rows[i][nvars]) > 1e-9) {
      res.consistent = false;
      return res;
    }
  res.unique = (rank == nvars);
  if (res.unique) {
    res.x.assign(nvars, 0.0);
    for (int i = 0; i < rank; ++i) res.x[pivot_col[i]] = rows[i][nvars];
  }
  return res;
}

}  // namespace

std::vector<PolytopeVertex> attack_polytope_vertices(const Mac& ch, uint64_t budget) {
  const int vx = ch.nx * ch.nx, vy = ch.ny * ch.ny;
  const int nv = vx + vy;
  if (nv >= 63 || (uint64_t(1) << nv) > budget)
    throw Error(Errc::BudgetExceeded, "polytope enumeration needs 2^" + std::to_string(nv) +
                                          " active-set candidates");

  // base equalities: channel agreement + row sums
  std::vector<std::vector<double>> base;
  for (int x = 0; x < ch.nx; ++x)
    for (int y = 0; y < ch.ny; ++y)
      for (int z = 0; z < ch.nz; ++z) {
        std::vector<double> row(nv + 1, 0.0);
        for (int xp = 0; xp < ch.nx; ++xp) row[x * ch.nx + xp] += ch(xp, y, z);
        for (int yp = 0; yp < ch.ny; ++yp) row[vx + y * ch.ny + yp] -= ch(x, yp, z);
        base.push_back(std::move(row));
      }
  for (int x = 0; x < ch.nx; ++x) {
    std::vector<double> row(nv + 1, 0.0);
    for (int xp = 0; xp < ch.nx; ++xp) row[x * ch.nx + xp] = 1.0;
    row[nv] = 1.0;
    base.push_back(std::move(row));
  }
  for (int y = 0; y < ch.ny; ++y) {
    std::vector<double> row(nv + 1, 0.0);
    for (int yp = 0; yp < ch.ny; ++yp) row[vx + y * ch.ny + yp] = 1.0;
    row[nv] = 1.0;
    base.push_back(std::move(row));
  }

  auto residual_ok = [&](const std::vector<double>& v) {
    for (double e : v)
      if (e < -1e-9) return false;
    for (const auto& row : base) {
      double s = -row[nv];
      for (int j = 0; j < nv; ++j) s += row[j] * v[j];
      if (std::abs(s) > 1e-9) return false;
    }
    return true;
  };

  std::vector<PolytopeVertex> out;
  std::vector<std::vector<double>> seen;
  for (uint64_t mask = 0; mask < (uint64_t(1) << nv); ++mask) {
    std::vector<std::vector<double>> rows = base;
    for (int bit = 0; bit < nv; ++bit)
      if (mask & (uint64_t(1) << bit)) {
        std::vector<double> row(nv + 1, 0.0);
        row[bit] = 1.0;
        rows.push_back(std::move(row));
      }
    GaussResult g = solve_unique(std::move(rows), nv);
    if (!g.consistent || !g.unique) continue;
    if (!residual_ok(g.x)) continue;
    bool dup = false;
    for (const auto& s : seen) {
      double diff = 0;
      for (int j = 0; j < nv; ++j) diff = std::max(diff, std::abs(s[j] - g.x[j]));
      if (diff <= 1e-6) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    seen.push_back(g.x);

    PolytopeVertex v;
    v.qx.input_shape = {ch.nx};
    v.qx.output_size = ch.nx;
    v.qx.k.assign(g.x.begin(), g.x.begin() + vx);
    v.qy.input_shape = {ch.ny};
    v.qy.output_size = ch.ny;
    v.qy.k.assign(g.x.begin() + vx, g.x.end());
    for (double& e : v.qx.k) e = std::max(e, 0.0);
    for (double& e : v.qy.k) e = std::max(e, 0.0);

    std::vector<double> w(static_cast<size_t>(ch.nx) * ch.ny * ch.nz, 0.0);
    for (int x = 0; x < ch.nx; ++x)
      for (int y = 0; y < ch.ny; ++y)
        for (int z = 0; z < ch.nz; ++z) {
          double s = 0;
          for (int xp = 0; xp < ch.nx; ++xp) s += v.qx(x, xp) * ch(xp, y, z);
          w[(static_cast<size_t>(x) * ch.ny + y) * ch.nz + z] = s;
        }
    v.induced = validate_mac(ch.nx, ch.ny, ch.nz, w, "induced");
    out.push_back(std::move(v));
  }
  return out;
}

AvMac avmac_from_states(const std::vector<Mac>& states, const std::string& label) {
  if (states.empty()) throw Error(Errc::ShapeMismatch, "empty state family");
  AvMac av;
  av.nx = states[0].nx;
  av.ny = states[0].ny;
  av.nz = states[0].nz;
  av.ns = static_cast<int>(states.size());
  av.label = label;
  av.w.assign(static_cast<size_t>(av.nx) * av.ny * av.ns * av.nz, 0.0);
  for (int s = 0; s < av.ns; ++s) {
    const Mac& m = states[s];
    if (m.nx != av.nx || m.ny != av.ny || m.nz != av.nz)
      throw Error(Errc::ShapeMismatch, "state channels have mismatched alphabets");
    for (int x = 0; x < av.nx; ++x)
      for (int y = 0; y < av.ny; ++y)
        for (int z = 0; z < av.nz; ++z) av.at(x, y, s, z) = m(x, y, z);
  }
  validate_avmac(av);
  return av;
}

namespace {

void simplex_grid(int dims, int resolution, std::vector<std::vector<double>>& out) {
  std::vector<int> counts(dims, 0);
  std::function<void(int, int)> rec = [&](int coord, int remaining) {
    if (coord == dims - 1) {
      counts[coord] = remaining;
      std::vector<double> p(dims);
      for (int i = 0; i < dims; ++i) p[i] = static_cast<double>(counts[i]) / resolution;
      out.push_back(std::move(p));
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[coord] = c;
      rec(coord + 1, remaining - c);
    }
  };
  rec(0, resolution);
}

}  // namespace

std::vector<JahnGridPoint> avmac_rate_region(const AvMac& ch, int input_grid, int state_grid) {
  validate_avmac(ch);
  if (input_grid < 1 || state_grid < 1) throw Error(Errc::ShapeMismatch, "grid resolution must be >= 1");
  if (input_grid < 2 || state_grid < 2)
    std::fprintf(stderr, "warning: rate-region grid is very coarse (resolution < 2)\n");

  std::vector<std::vector<double>> pxs, pys, pss;
  simplex_grid(ch.nx, input_grid, pxs);
  simplex_grid(ch.ny, input_grid, pys);
  simplex_grid(ch.ns, state_grid, pss);

  const std::vector<int> sizes = {ch.nx, ch.ny, ch.nz};
  std::vector<JahnGridPoint> out;
  out.reserve(pxs.size() * pys.size());
  for (const auto& px : pxs)
    for (const auto& py : pys) {
      JahnGridPoint g;
      g.px = px;
      g.py = py;
      double best1 = 1e300, best2 = 1e300, bestsum = 1e300;
      for (const auto& ps : pss) {
        std::vector<double> joint(static_cast<size_t>(ch.nx) * ch.ny * ch.nz, 0.0);
        for (int x = 0; x < ch.nx; ++x)
          for (int y = 0; y < ch.ny; ++y)
            for (int z = 0; z < ch.nz; ++z) {
              double mix = 0;
              for (int s = 0; s < ch.ns; ++s) mix += ps[s] * ch(x, y, s, z);
              joint[(static_cast<size_t>(x) * ch.ny + y) * ch.nz + z] = px[x] * py[y] * mix;
            }
        best1 = std::min(best1, mutual_information(joint, sizes, {0}, {2}, {1}));
        best2 = std::min(best2, mutual_information(joint, sizes, {1}, {2}, {0}));
        bestsum = std::min(bestsum, mutual_information(joint, sizes, {0, 1}, {2}));
      }
      g.r1 = best1;
      g.r2 = best2;
      g.rsum = bestsum;
      out.push_back(std::move(g));
    }
  return out;
}

}  // namespace byzmac
