#include "byzmac/classifier.hpp"
#include "byzmac/rng.hpp"
#include "doctest.h"

using namespace byzmac;

namespace {

Mac random_channel(Rng& rng, int nx, int ny, int nz) {
  Mac ch;
  ch.nx = nx;
  ch.ny = ny;
  ch.nz = nz;
  ch.w.resize(static_cast<size_t>(nx) * ny * nz);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      double s = 0;
      for (int z = 0; z < nz; ++z) s += (ch.at(x, y, z) = rng.next_double() + 1e-3);
      for (int z = 0; z < nz; ++z) ch.at(x, y, z) /= s;
    }
  return ch;
}

}  // namespace

TEST_CASE("xor: spoofable both ways, not overwritable") {
  Mac x = builtin_channel("xor");
  CHECK(check_spoofable_1(x).verdict == Verdict::FEASIBLE);
  CHECK(check_spoofable_2(x).verdict == Verdict::FEASIBLE);
  CHECK(check_overwritable(x, 1).verdict == Verdict::INFEASIBLE);
  CHECK(check_overwritable(x, 2).verdict == Verdict::INFEASIBLE);
  CHECK(check_symmetrizable(x, 1).verdict == Verdict::FEASIBLE);
  CHECK(check_symmetrizable(x, 2).verdict == Verdict::FEASIBLE);
}

TEST_CASE("erasure: symmetrizable only") {
  Mac e = builtin_channel("erasure");
  CHECK(check_symmetrizable(e, 1).verdict == Verdict::FEASIBLE);
  CHECK(check_symmetrizable(e, 2).verdict == Verdict::FEASIBLE);
  CHECK(check_spoofable_1(e).verdict == Verdict::INFEASIBLE);
  CHECK(check_spoofable_2(e).verdict == Verdict::INFEASIBLE);
  CHECK(check_overwritable(e, 1).verdict == Verdict::INFEASIBLE);
  CHECK(check_overwritable(e, 2).verdict == Verdict::INFEASIBLE);
}

TEST_CASE("parallel example: symmetrizable, not overwritable, not spoofable") {
  Mac p = builtin_channel("parallel_ex3");
  CHECK(check_symmetrizable(p, 1).verdict == Verdict::FEASIBLE);
  CHECK(check_symmetrizable(p, 2).verdict == Verdict::FEASIBLE);
  CHECK(check_overwritable(p, 1).verdict == Verdict::INFEASIBLE);
  CHECK(check_overwritable(p, 2).verdict == Verdict::INFEASIBLE);
  // The identity kernel over the four input symbols symmetrizes it.
  CHECK(verify_certificate(symmetrizable_problem(p, 2), {Kernel::identity(4)}) <= 1e-15);
  // Its capacity region equals the erasure MAC's, whose interior is nonempty,
  // so neither direction is spoofable.
  CHECK(check_spoofable_1(p).verdict == Verdict::INFEASIBLE);
  CHECK(check_spoofable_2(p).verdict == Verdict::INFEASIBLE);
}

TEST_CASE("single-user-irrelevant channel is 2-spoofable") {
  // W(z|x,y) = V(z|x): user 2 has no influence.
  Rng rng(5);
  Mac ch;
  ch.nx = 2;
  ch.ny = 2;
  ch.nz = 3;
  ch.w.resize(12);
  for (int x = 0; x < 2; ++x) {
    double row[3], s = 0;
    for (int z = 0; z < 3; ++z) s += (row[z] = rng.next_double() + 0.05);
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 3; ++z) ch.at(x, y, z) = row[z] / s;
  }
  CHECK(check_spoofable_2(ch).verdict == Verdict::FEASIBLE);

  // Kernel pair named in the construction: Q_{X|X~Y~} = identity in x~, any Q_{Y|Y~Y'}.
  Kernel qa;
  qa.input_shape = {2, 2};
  qa.output_size = 2;
  qa.k.assign(8, 0.0);
  for (int xt = 0; xt < 2; ++xt)
    for (int yt = 0; yt < 2; ++yt) qa.at(xt * 2 + yt, xt) = 1.0;
  CHECK(verify_certificate(spoofable_problem(ch, 2), {qa, Kernel::uniform({2, 2}, 2)}) <= 1e-12);
}

TEST_CASE("symmetrizable check: channel ignoring user 2, any y-independent P_{X|Y}") {
  Mac ch;  // Z = X
  ch.nx = 2;
  ch.ny = 2;
  ch.nz = 2;
  ch.w.assign(8, 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) ch.at(x, y, x) = 1.0;
  FeasibilityProblem p = symmetrizable_problem(ch, 2);
  CHECK(verify_certificate(p, {Kernel::constant_row({2}, {0.5, 0.5})}) <= 1e-15);
  CHECK(solve_linear_feasibility(p).verdict == Verdict::FEASIBLE);
}

TEST_CASE("constant-output channel is overwritable") {
  Mac ch;
  ch.nx = 2;
  ch.ny = 2;
  ch.nz = 2;
  ch.w.assign(8, 0.5);
  CHECK(check_overwritable(ch, 1).verdict == Verdict::FEASIBLE);
  CHECK(check_overwritable(ch, 2).verdict == Verdict::FEASIBLE);
}

TEST_CASE("classification reports for the worked examples") {
  ClassificationReport er = classify(builtin_channel("erasure"));
  CHECK(er.symmetrizable_1.verdict == Verdict::FEASIBLE);
  CHECK(er.symmetrizable_2.verdict == Verdict::FEASIBLE);
  CHECK(er.spoofable_1.verdict == Verdict::INFEASIBLE);
  CHECK(er.spoofable_2.verdict == Verdict::INFEASIBLE);
  CHECK(er.overwritable_1.verdict == Verdict::INFEASIBLE);
  CHECK(er.overwritable_2.verdict == Verdict::INFEASIBLE);
  CHECK(er.hierarchy_consistent);

  ClassificationReport xr = classify(builtin_channel("xor"));
  CHECK(xr.spoofable_1.verdict == Verdict::FEASIBLE);
  CHECK(xr.spoofable_2.verdict == Verdict::FEASIBLE);
  CHECK(xr.symmetrizable_1.verdict == Verdict::FEASIBLE);
  CHECK(xr.symmetrizable_2.verdict == Verdict::FEASIBLE);
  CHECK(xr.overwritable_1.verdict == Verdict::INFEASIBLE);
  CHECK(xr.overwritable_2.verdict == Verdict::INFEASIBLE);
  CHECK(xr.hierarchy_consistent);
}

TEST_CASE("avmac symmetrizability") {
  // |S| = 1 wrapping the erasure MAC degenerates to W(z|x,y) = W(z|x',y).
  Mac e = builtin_channel("erasure");
  AvMac single;
  single.nx = 2;
  single.ny = 2;
  single.ns = 1;
  single.nz = 3;
  single.w = e.w;
  CHECK(check_avmac_symmetrizable(single, AvSymKind::X).verdict == Verdict::INFEASIBLE);

  // Two-state family {XOR, NOT-XOR}.
  Mac x0 = builtin_channel("xor");
  Mac x1 = builtin_channel("not_xor");
  AvMac two;
  two.nx = 2;
  two.ny = 2;
  two.ns = 2;
  two.nz = 2;
  two.w.resize(16);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) {
        two.at(x, y, 0, z) = x0(x, y, z);
        two.at(x, y, 1, z) = x1(x, y, z);
      }
  validate_avmac(two);
  FeasibilityOutcome kx = check_avmac_symmetrizable(two, AvSymKind::X);
  CHECK(kx.verdict == Verdict::FEASIBLE);
  // The construction U(s|x) = 1{s=x} certifies it.
  CHECK(verify_certificate(avmac_symmetrizable_problem(two, AvSymKind::X), {Kernel::identity(2)}) <=
        1e-15);
  CHECK(check_avmac_symmetrizable(two, AvSymKind::Y).verdict == Verdict::FEASIBLE);
  CHECK(check_avmac_symmetrizable(two, AvSymKind::XY).verdict == Verdict::FEASIBLE);
}

TEST_CASE("user relabeling symmetry on random channels") {
  Rng rng(31);
  for (int rep = 0; rep < 8; ++rep) {
    Mac ch = random_channel(rng, 2, 2, 2 + static_cast<int>(rng.next_below(2)));
    Mac tr = ch.transposed();
    CHECK(check_spoofable_1(ch).verdict == check_spoofable_2(tr).verdict);
    CHECK(check_symmetrizable(ch, 1).verdict == check_symmetrizable(tr, 2).verdict);
    CHECK(check_overwritable(ch, 1).verdict == check_overwritable(tr, 2).verdict);
  }
}
