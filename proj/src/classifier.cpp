#include "byzmac/classifier.hpp"

namespace byzmac {

namespace {
Kernel shape(std::vector<int> in, int out) {
  Kernel k;
  k.input_shape = std::move(in);
  k.output_size = out;
  k.k.assign(static_cast<size_t>(k.input_rows()) * out, 0.0);
  return k;
}
}  // namespace

FeasibilityProblem spoofable_problem(const Mac& ch, int user) {
  if (user != 1 && user != 2) throw Error(Errc::ShapeMismatch, "user must be 1 or 2");
  FeasibilityProblem p;
  if (user == 1) {
    p.label = "spoofable_1";
    p.kernel_shapes = {shape({ch.nx, ch.ny}, ch.ny), shape({ch.nx, ch.nx}, ch.nx)};
    for (int xp = 0; xp < ch.nx; ++xp)
      for (int xt = 0; xt < ch.nx; ++xt)
        for (int yt = 0; yt < ch.ny; ++yt)
          for (int z = 0; z < ch.nz; ++z) {
            LinearEquality e12, e13;
            for (int y = 0; y < ch.ny; ++y) {
              e12.terms.push_back({0, xt * ch.ny + yt, y, ch(xp, y, z)});
              e12.terms.push_back({0, xp * ch.ny + yt, y, -ch(xt, y, z)});
              e13.terms.push_back({0, xt * ch.ny + yt, y, ch(xp, y, z)});
            }
            for (int x = 0; x < ch.nx; ++x) e13.terms.push_back({1, xt * ch.nx + xp, x, -ch(x, yt, z)});
            p.equalities.push_back(std::move(e12));
            p.equalities.push_back(std::move(e13));
          }
  } else {
    p.label = "spoofable_2";
    p.kernel_shapes = {shape({ch.nx, ch.ny}, ch.nx), shape({ch.ny, ch.ny}, ch.ny)};
    for (int xt = 0; xt < ch.nx; ++xt)
      for (int yt = 0; yt < ch.ny; ++yt)
        for (int yp = 0; yp < ch.ny; ++yp)
          for (int z = 0; z < ch.nz; ++z) {
            LinearEquality e12, e13;
            for (int x = 0; x < ch.nx; ++x) {
              e12.terms.push_back({0, xt * ch.ny + yt, x, ch(x, yp, z)});
              e12.terms.push_back({0, xt * ch.ny + yp, x, -ch(x, yt, z)});
              e13.terms.push_back({0, xt * ch.ny + yt, x, ch(x, yp, z)});
            }
            for (int y = 0; y < ch.ny; ++y) e13.terms.push_back({1, yt * ch.ny + yp, y, -ch(xt, y, z)});
            p.equalities.push_back(std::move(e12));
            p.equalities.push_back(std::move(e13));
          }
  }
  return p;
}

FeasibilityProblem symmetrizable_problem(const Mac& ch, int user) {
  if (user != 1 && user != 2) throw Error(Errc::ShapeMismatch, "user must be 1 or 2");
  FeasibilityProblem p;
  if (user == 2) {
    p.label = "symmetrizable_2";
    p.kernel_shapes = {shape({ch.ny}, ch.nx)};  // P_{X|Y}
    for (int y = 0; y < ch.ny; ++y)
      for (int yp = y + 1; yp < ch.ny; ++yp)
        for (int z = 0; z < ch.nz; ++z) {
          LinearEquality e;
          for (int x = 0; x < ch.nx; ++x) {
            e.terms.push_back({0, yp, x, ch(x, y, z)});
            e.terms.push_back({0, y, x, -ch(x, yp, z)});
          }
          p.equalities.push_back(std::move(e));
        }
  } else {
    p.label = "symmetrizable_1";
    p.kernel_shapes = {shape({ch.nx}, ch.ny)};  // P_{Y|X}
    for (int x = 0; x < ch.nx; ++x)
      for (int xp = x + 1; xp < ch.nx; ++xp)
        for (int z = 0; z < ch.nz; ++z) {
          LinearEquality e;
          for (int y = 0; y < ch.ny; ++y) {
            e.terms.push_back({0, xp, y, ch(x, y, z)});
            e.terms.push_back({0, x, y, -ch(xp, y, z)});
          }
          p.equalities.push_back(std::move(e));
        }
  }
  return p;
}

FeasibilityProblem overwritable_problem(const Mac& ch, int user) {
  if (user != 1 && user != 2) throw Error(Errc::ShapeMismatch, "user must be 1 or 2");
  FeasibilityProblem p;
  if (user == 2) {
    p.label = "overwritable_2";
    p.kernel_shapes = {shape({ch.nx, ch.ny}, ch.nx)};  // P_{X'|XY}
    for (int x = 0; x < ch.nx; ++x)
      for (int y = 0; y < ch.ny; ++y)
        for (int yp = 0; yp < ch.ny; ++yp)
          for (int z = 0; z < ch.nz; ++z) {
            LinearEquality e;
            for (int xp = 0; xp < ch.nx; ++xp) e.terms.push_back({0, x * ch.ny + y, xp, ch(xp, yp, z)});
            e.rhs = ch(x, y, z);
            p.equalities.push_back(std::move(e));
          }
  } else {
    p.label = "overwritable_1";
    p.kernel_shapes = {shape({ch.nx, ch.ny}, ch.ny)};  // P_{Y'|XY}
    for (int x = 0; x < ch.nx; ++x)
      for (int y = 0; y < ch.ny; ++y)
        for (int xp = 0; xp < ch.nx; ++xp)
          for (int z = 0; z < ch.nz; ++z) {
            LinearEquality e;
            for (int yp = 0; yp < ch.ny; ++yp) e.terms.push_back({0, x * ch.ny + y, yp, ch(xp, yp, z)});
            e.rhs = ch(x, y, z);
            p.equalities.push_back(std::move(e));
          }
  }
  return p;
}

FeasibilityProblem avmac_symmetrizable_problem(const AvMac& ch, AvSymKind kind) {
  FeasibilityProblem p;
  switch (kind) {
    case AvSymKind::X: {
      p.label = "avmac_symmetrizable_X";
      p.kernel_shapes = {shape({ch.nx}, ch.ns)};  // U(s|x)
      for (int x = 0; x < ch.nx; ++x)
        for (int xp = x + 1; xp < ch.nx; ++xp)
          for (int y = 0; y < ch.ny; ++y)
            for (int z = 0; z < ch.nz; ++z) {
              LinearEquality e;
              for (int s = 0; s < ch.ns; ++s) {
                e.terms.push_back({0, xp, s, ch(x, y, s, z)});
                e.terms.push_back({0, x, s, -ch(xp, y, s, z)});
              }
              p.equalities.push_back(std::move(e));
            }
      break;
    }
    case AvSymKind::Y: {
      p.label = "avmac_symmetrizable_Y";
      p.kernel_shapes = {shape({ch.ny}, ch.ns)};  // U(s|y)
      for (int y = 0; y < ch.ny; ++y)
        for (int yp = y + 1; yp < ch.ny; ++yp)
          for (int x = 0; x < ch.nx; ++x)
            for (int z = 0; z < ch.nz; ++z) {
              LinearEquality e;
              for (int s = 0; s < ch.ns; ++s) {
                e.terms.push_back({0, yp, s, ch(x, y, s, z)});
                e.terms.push_back({0, y, s, -ch(x, yp, s, z)});
              }
              p.equalities.push_back(std::move(e));
            }
      break;
    }
    case AvSymKind::XY: {
      p.label = "avmac_symmetrizable_XY";
      p.kernel_shapes = {shape({ch.nx, ch.ny}, ch.ns)};  // U(s|x,y)
      for (int x = 0; x < ch.nx; ++x)
        for (int y = 0; y < ch.ny; ++y)
          for (int xp = 0; xp < ch.nx; ++xp)
            for (int yp = 0; yp < ch.ny; ++yp) {
              if (x * ch.ny + y >= xp * ch.ny + yp) continue;  // skip self and mirror duplicates
              for (int z = 0; z < ch.nz; ++z) {
                LinearEquality e;
                for (int s = 0; s < ch.ns; ++s) {
                  e.terms.push_back({0, xp * ch.ny + yp, s, ch(x, y, s, z)});
                  e.terms.push_back({0, x * ch.ny + y, s, -ch(xp, yp, s, z)});
                }
                p.equalities.push_back(std::move(e));
              }
            }
      break;
    }
  }
  return p;
}

FeasibilityOutcome check_spoofable_1(const Mac& ch, double tol) {
  return solve_linear_feasibility(spoofable_problem(ch, 1), tol);
}
FeasibilityOutcome check_spoofable_2(const Mac& ch, double tol) {
  return solve_linear_feasibility(spoofable_problem(ch, 2), tol);
}
FeasibilityOutcome check_symmetrizable(const Mac& ch, int user, double tol) {
  return solve_linear_feasibility(symmetrizable_problem(ch, user), tol);
}
FeasibilityOutcome check_overwritable(const Mac& ch, int user, double tol) {
  return solve_linear_feasibility(overwritable_problem(ch, user), tol);
}
FeasibilityOutcome check_avmac_symmetrizable(const AvMac& ch, AvSymKind kind, double tol) {
  return solve_linear_feasibility(avmac_symmetrizable_problem(ch, kind), tol);
}

ClassificationReport classify(const Mac& ch, double tol) {
  ClassificationReport r;
  r.spoofable_1 = check_spoofable_1(ch, tol);
  r.spoofable_2 = check_spoofable_2(ch, tol);
  r.symmetrizable_1 = check_symmetrizable(ch, 1, tol);
  r.symmetrizable_2 = check_symmetrizable(ch, 2, tol);
  r.overwritable_1 = check_overwritable(ch, 1, tol);
  r.overwritable_2 = check_overwritable(ch, 2, tol);

  auto implies = [&](const FeasibilityOutcome& a, const FeasibilityOutcome& b, const char* what) {
    if (a.verdict == Verdict::INCONCLUSIVE || b.verdict == Verdict::INCONCLUSIVE) {
      r.notes += std::string(what) + ": skipped (inconclusive); ";
      return;
    }
    if (a.verdict == Verdict::FEASIBLE && b.verdict != Verdict::FEASIBLE) {
      r.hierarchy_consistent = false;
      r.notes += std::string(what) + ": violated; ";
    }
  };
  implies(r.overwritable_1, r.spoofable_1, "overwritable_1 => spoofable_1");
  implies(r.overwritable_2, r.spoofable_2, "overwritable_2 => spoofable_2");
  implies(r.spoofable_1, r.symmetrizable_1, "spoofable_1 => symmetrizable_1");
  implies(r.spoofable_2, r.symmetrizable_2, "spoofable_2 => symmetrizable_2");
  return r;
}

std::pair<Kernel, Kernel> spoof2_pair_from_overwrite(const Mac& ch, const Kernel& p_xprime_xy,
                                                     const DistributionVector& q_y) {
  if (p_xprime_xy.input_shape != std::vector<int>{ch.nx, ch.ny} || p_xprime_xy.output_size != ch.nx)
    throw Error(Errc::ShapeMismatch, "overwriting attack has wrong shape");
  if (q_y.size() != ch.ny) throw Error(Errc::ShapeMismatch, "q_y has wrong alphabet");

  Kernel qa;  // Q_{X|X~Y~}(x|x~,y~) = sum_y q_y(y) P_{X'|XY}(x|x~,y), independent of y~
  qa.input_shape = {ch.nx, ch.ny};
  qa.output_size = ch.nx;
  qa.k.assign(static_cast<size_t>(ch.nx) * ch.ny * ch.nx, 0.0);
  for (int xt = 0; xt < ch.nx; ++xt)
    for (int yt = 0; yt < ch.ny; ++yt)
      for (int x = 0; x < ch.nx; ++x) {
        double v = 0;
        for (int y = 0; y < ch.ny; ++y) v += q_y.probs[y] * p_xprime_xy(xt * ch.ny + y, x);
        qa.at(xt * ch.ny + yt, x) = v;
      }

  Kernel qb = Kernel::constant_row({ch.ny, ch.ny}, q_y.probs);  // Q_{Y|Y~Y'}(y|y~,y') = q_y(y)
  return {qa, qb};
}

Kernel symmetrize2_from_spoof2(const Mac& ch, const Kernel& q_x_xtyt, int xt) {
  if (q_x_xtyt.input_shape != std::vector<int>{ch.nx, ch.ny} || q_x_xtyt.output_size != ch.nx)
    throw Error(Errc::ShapeMismatch, "spoofing kernel has wrong shape");
  Kernel p;  // P_{X|Y}(x|y) = Q_{X|X~Y~}(x|xt, y)
  p.input_shape = {ch.ny};
  p.output_size = ch.nx;
  p.k.resize(static_cast<size_t>(ch.ny) * ch.nx);
  for (int y = 0; y < ch.ny; ++y)
    for (int x = 0; x < ch.nx; ++x) p.at(y, x) = q_x_xtyt(xt * ch.ny + y, x);
  return p;
}

}  // namespace byzmac
