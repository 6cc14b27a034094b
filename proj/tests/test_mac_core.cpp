#include <cmath>

#include "byzmac/info.hpp"
#include "byzmac/mac.hpp"
#include "byzmac/rng.hpp"
#include "doctest.h"

using namespace byzmac;

TEST_CASE("validate_mac accepts the worked deterministic channels") {
  Mac x = builtin_channel("xor");
  CHECK(validate_mac(x.nx, x.ny, x.nz, x.w).nz == 2);
  Mac e = builtin_channel("erasure");
  CHECK(e(1, 1, 2) == 1.0);
  CHECK(e(0, 1, 1) == 1.0);
  CHECK(validate_mac(e.nx, e.ny, e.nz, e.w).nz == 3);
}

TEST_CASE("validate_mac rejects bad tables") {
  std::vector<double> bad = {0.5, 0.4, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  CHECK_THROWS_AS(validate_mac(2, 2, 2, bad), Error);
  std::vector<double> neg = {1.2, -0.2, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  CHECK_THROWS_AS(validate_mac(2, 2, 2, neg), Error);
  CHECK_THROWS_AS(validate_mac(2, 2, 2, std::vector<double>(7, 0.5)), Error);
}

TEST_CASE("builtin channels") {
  CHECK(builtin_channel("xor")(1, 1, 0) == 1.0);
  CHECK(builtin_channel("erasure")(1, 1, 2) == 1.0);
  Mac p = builtin_channel("parallel_ex3");
  CHECK(p.nx == 4);
  CHECK(p.ny == 4);
  CHECK(p.nz == 6);
  CHECK(p(ex3_input(1, 1), ex3_input(1, 1), ex3_output(2, 0)) == 1.0);
  CHECK_THROWS_AS(builtin_channel("nonsense"), Error);
}

TEST_CASE("product channel probability") {
  Mac x = builtin_channel("xor");
  CHECK(product_channel_prob(x, {0, 1}, {1, 1}, {1, 0}) == 1.0);
  CHECK(product_channel_prob(x, {0, 1}, {1, 1}, {0, 0}) == 0.0);

  Mac half = validate_mac(2, 2, 2, std::vector<double>(8, 0.5));
  CHECK(product_channel_prob(half, {0, 1, 0}, {1, 1, 0}, {0, 1, 1}) == doctest::Approx(0.125));

  CHECK_THROWS_AS(product_channel_prob(x, {0, 1}, {1}, {1, 0}), Error);
  CHECK_THROWS_AS(product_channel_prob(x, {0, 2}, {1, 1}, {1, 0}), Error);
}

TEST_CASE("product channel output distribution sums to one") {
  Rng rng(7);
  Mac ch;
  ch.nx = 2;
  ch.ny = 2;
  ch.nz = 3;
  ch.w.resize(12);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double s = 0;
      for (int z = 0; z < 3; ++z) s += (ch.at(x, y, z) = rng.next_double() + 0.01);
      for (int z = 0; z < 3; ++z) ch.at(x, y, z) /= s;
    }
  const int n = 5;
  Word xv(n), yv(n);
  for (int t = 0; t < n; ++t) {
    xv[t] = static_cast<Symbol>(rng.next_below(2));
    yv[t] = static_cast<Symbol>(rng.next_below(2));
  }
  double total = 0;
  Word zv(n, 0);
  for (int flat = 0; flat < 243; ++flat) {
    int f = flat;
    for (int t = 0; t < n; ++t) {
      zv[t] = f % 3;
      f /= 3;
    }
    total += product_channel_prob(ch, xv, yv, zv);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("joint_type basics") {
  Word x = {0, 1}, y = {1, 1};
  JointType t = joint_type({x, y}, {2, 2});
  CHECK(t.counts[0 * 2 + 1] == 1);
  CHECK(t.counts[1 * 2 + 1] == 1);
  CHECK(t.counts[0] == 0);

  Word solo = {0, 0, 0};
  JointType s = joint_type({solo}, {2});
  CHECK(s.counts[0] == 3);

  Word a = {0, 1, 0, 1}, z = {0, 1, 0, 1};
  JointType az = joint_type({a, z}, {2, 2});
  CHECK(mutual_information(az, {0}, {1}) == doctest::Approx(1.0));

  Word shorter = {0};
  CHECK_THROWS_AS(joint_type({x, shorter}, {2, 2}), Error);
}

TEST_CASE("joint_type marginalization commutes with sub-tuple types") {
  Rng rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 6;
    Word a(n), b(n), c(n);
    for (int t = 0; t < n; ++t) {
      a[t] = static_cast<Symbol>(rng.next_below(2));
      b[t] = static_cast<Symbol>(rng.next_below(3));
      c[t] = static_cast<Symbol>(rng.next_below(2));
    }
    JointType full = joint_type({a, b, c}, {2, 3, 2});
    JointType sub = joint_type({a, c}, {2, 2});
    CHECK(full.marginal({0, 2}).counts == sub.counts);
  }
}

TEST_CASE("divergence") {
  std::vector<double> p = {0.5, 0.5}, q = {0.25, 0.75};
  CHECK(divergence(p, p).bits == doctest::Approx(0.0));
  // two-term formula: 0.5*log2(2) + 0.5*log2(2/3)
  double expected = 0.5 * std::log2(0.5 / 0.25) + 0.5 * std::log2(0.5 / 0.75);
  CHECK(expected == doctest::Approx(0.20752).epsilon(1e-4));
  CHECK(divergence(p, q).bits == doctest::Approx(expected).epsilon(1e-12));

  std::vector<double> zero_q = {1.0, 0.0};
  CHECK_FALSE(divergence(p, zero_q).finite);
  CHECK_FALSE(divergence(p, zero_q).leq(1e9));
  CHECK_THROWS_AS(divergence(p, std::vector<double>{1.0}), Error);
}

TEST_CASE("mutual information on xor joint") {
  // X,Y independent uniform, Z = X xor Y.
  std::vector<double> probs(8, 0.0);
  std::vector<int> sizes = {2, 2, 2};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) probs[(x * 2 + y) * 2 + (x ^ y)] = 0.25;
  CHECK(mutual_information(probs, sizes, {0}, {2}) == doctest::Approx(0.0));
  CHECK(mutual_information(probs, sizes, {0}, {2}, {1}) == doctest::Approx(1.0));
  CHECK(mutual_information(probs, sizes, {0}, {1, 2}) ==
        doctest::Approx(mutual_information(probs, sizes, {1, 2}, {0})).epsilon(1e-12));
  CHECK_THROWS_AS(mutual_information(probs, sizes, {0, 1}, {1}), Error);
}

TEST_CASE("tv distance") {
  CHECK(tv_distance({0.5, 0.5}, {0.5, 0.5}) == 0.0);
  CHECK(tv_distance({1.0, 0.0}, {0.0, 1.0}) == 1.0);
  CHECK(tv_distance({0.7, 0.3}, {0.4, 0.6}) == doctest::Approx(0.3));
}

TEST_CASE("divergence_vs_channel matches direct formula") {
  Mac e = builtin_channel("erasure");
  Word x = {0, 1, 0, 1}, y = {0, 1, 1, 0}, z = {0, 2, 1, 1};
  JointType t = joint_type({x, y, z}, {2, 2, 3});
  Divergence d = divergence_vs_channel(t, e);
  // manual: P_XYZ vs P_X P_Y W
  std::vector<double> pxyz = t.probabilities();
  std::vector<double> ref(12);
  for (int xs = 0; xs < 2; ++xs)
    for (int ys = 0; ys < 2; ++ys)
      for (int zs = 0; zs < 3; ++zs) ref[(xs * 2 + ys) * 3 + zs] = 0.5 * 0.5 * e(xs, ys, zs);
  Divergence ref_d = divergence(pxyz, ref);
  CHECK(d.finite == ref_d.finite);
  CHECK(d.bits == doctest::Approx(ref_d.bits).epsilon(1e-12));

  Word zbad = {1, 2, 1, 1};  // first letter impossible for (0,0)
  CHECK_FALSE(divergence_vs_channel(joint_type({x, y, zbad}, {2, 2, 3}), e).finite);
}

TEST_CASE("product channel sums to one at blocklength 12") {
  Mac half = validate_mac(2, 2, 2, std::vector<double>(8, 0.5));
  Word xv(12, 0), yv(12, 1);
  double total = 0;
  for (int flat = 0; flat < (1 << 12); ++flat) {
    Word zv(12);
    for (int t = 0; t < 12; ++t) zv[t] = (flat >> t) & 1;
    total += product_channel_prob(half, xv, yv, zv);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}
