#include "byzmac/classifier.hpp"
#include "byzmac/feasibility.hpp"
#include "byzmac/rng.hpp"
#include "doctest.h"

using namespace byzmac;

namespace {
Kernel shape2x2() {
  Kernel k;
  k.input_shape = {2};
  k.output_size = 2;
  k.k.assign(4, 0.0);
  return k;
}
}  // namespace

TEST_CASE("unconstrained problem is feasible with zero violation") {
  FeasibilityProblem p;
  p.kernel_shapes = {shape2x2()};
  FeasibilityOutcome out = solve_linear_feasibility(p);
  CHECK(out.verdict == Verdict::FEASIBLE);
  CHECK(out.violation <= 1e-12);
  REQUIRE(out.certificate.size() == 1);
  CHECK(out.certificate[0].stochasticity_deviation() <= 1e-12);
}

TEST_CASE("contradictory equalities are infeasible with margin") {
  FeasibilityProblem p;
  p.kernel_shapes = {shape2x2()};
  p.equalities.push_back({{{0, 0, 0, 1.0}}, 1.0});
  p.equalities.push_back({{{0, 0, 0, 1.0}}, 0.0});
  FeasibilityOutcome out = solve_linear_feasibility(p);
  CHECK(out.verdict == Verdict::INFEASIBLE);
  CHECK(out.margin >= 0.5);
}

TEST_CASE("empty problem raises Degenerate") {
  FeasibilityProblem p;
  CHECK_THROWS_AS(solve_linear_feasibility(p), Error);
}

TEST_CASE("erasure symmetrizability instance accepts the identity certificate") {
  Mac e = builtin_channel("erasure");
  FeasibilityProblem p = symmetrizable_problem(e, 2);
  CHECK(verify_certificate(p, {Kernel::identity(2)}) <= 1e-15);

  FeasibilityOutcome out = solve_linear_feasibility(p);
  CHECK(out.verdict == Verdict::FEASIBLE);
  CHECK(verify_certificate(p, out.certificate) <= 1e-9);
}

TEST_CASE("xor spoof1 instance accepts the uniform certificate and rejects a perturbed one") {
  Mac x = builtin_channel("xor");
  FeasibilityProblem p = spoofable_problem(x, 1);
  Kernel qy = Kernel::uniform({2, 2}, 2);
  Kernel qx = Kernel::uniform({2, 2}, 2);
  CHECK(verify_certificate(p, {qy, qx}) <= 1e-15);

  Kernel bad = qy;  // one entry +0.1, row renormalized
  bad.at(0, 0) += 0.1;
  double s = bad.at(0, 0) + bad.at(0, 1);
  bad.at(0, 0) /= s;
  bad.at(0, 1) /= s;
  CHECK(verify_certificate(p, {bad, qx}) > 0.01);

  Kernel wrong_shape = Kernel::uniform({2}, 2);
  CHECK_THROWS_AS(verify_certificate(p, {wrong_shape, qx}), Error);
}

TEST_CASE("round trip: feasible outcomes verify within tol") {
  for (const char* name : {"xor", "erasure", "parallel_ex3"}) {
    Mac ch = builtin_channel(name);
    for (int user : {1, 2}) {
      FeasibilityProblem p = symmetrizable_problem(ch, user);
      FeasibilityOutcome out = solve_linear_feasibility(p);
      if (out.verdict == Verdict::FEASIBLE) CHECK(verify_certificate(p, out.certificate) <= 1e-9);
    }
  }
}

TEST_CASE("monotonicity: adding constraints never turns INFEASIBLE into FEASIBLE") {
  Rng rng(2024);
  for (int rep = 0; rep < 25; ++rep) {
    FeasibilityProblem p;
    p.kernel_shapes = {shape2x2()};
    int ne = 2 + static_cast<int>(rng.next_below(4));
    for (int i = 0; i < ne; ++i) {
      LinearEquality e;
      int nt = 1 + static_cast<int>(rng.next_below(3));
      for (int t = 0; t < nt; ++t)
        e.terms.push_back({0, static_cast<int>(rng.next_below(2)), static_cast<int>(rng.next_below(2)),
                           rng.next_double() * 4 - 2});
      e.rhs = rng.next_double() * 2 - 1;
      p.equalities.push_back(std::move(e));
    }
    FeasibilityOutcome base = solve_linear_feasibility(p);
    FeasibilityProblem more = p;
    more.equalities.push_back({{{0, 1, 0, 1.0}}, rng.next_double()});
    FeasibilityOutcome extended = solve_linear_feasibility(more);
    if (base.verdict == Verdict::INFEASIBLE) CHECK(extended.verdict == Verdict::INFEASIBLE);
    CHECK(extended.margin >= base.margin - 1e-9);
  }
}

TEST_CASE("scaling rows leaves the verdict unchanged") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    FeasibilityProblem p;
    p.kernel_shapes = {shape2x2()};
    int ne = 1 + static_cast<int>(rng.next_below(4));
    for (int i = 0; i < ne; ++i) {
      LinearEquality e;
      for (int t = 0; t < 2; ++t)
        e.terms.push_back({0, static_cast<int>(rng.next_below(2)), static_cast<int>(rng.next_below(2)),
                           rng.next_double() * 2 - 1});
      e.rhs = rng.next_double() - 0.5;
      p.equalities.push_back(std::move(e));
    }
    double c = 0.001 + 500 * rng.next_double();
    FeasibilityProblem scaled = p;
    for (LinearEquality& e : scaled.equalities) {
      for (KernelTerm& t : e.terms) t.coeff *= c;
      e.rhs *= c;
    }
    CHECK(solve_linear_feasibility(p).verdict == solve_linear_feasibility(scaled).verdict);
  }
}
