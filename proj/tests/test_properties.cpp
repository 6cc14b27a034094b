#include <cmath>

#include "byzmac/classifier.hpp"
#include "byzmac/codec.hpp"
#include "byzmac/info.hpp"
#include "byzmac/rng.hpp"
#include "doctest.h"

using namespace byzmac;

namespace {

std::vector<double> random_dist(Rng& rng, int k, double floor = 0.0) {
  std::vector<double> p(k);
  double s = 0;
  for (double& v : p) s += (v = -std::log(std::max(rng.next_double(), 1e-12)) + floor);
  for (double& v : p) v /= s;
  return p;
}

JointType random_joint_type(Rng& rng, int n, const std::vector<int>& sizes) {
  std::vector<Word> vectors(sizes.size(), Word(n));
  for (size_t j = 0; j < sizes.size(); ++j)
    for (int t = 0; t < n; ++t) vectors[j][t] = static_cast<Symbol>(rng.next_below(sizes[j]));
  return joint_type(vectors, sizes);
}

}  // namespace

TEST_CASE("pinsker inequality over 150 random pairs") {
  Rng rng(1001);
  int checked = 0;
  for (int rep = 0; rep < 150; ++rep) {
    int k = 2 + static_cast<int>(rng.next_below(4));
    std::vector<double> p = random_dist(rng, k);
    std::vector<double> q = random_dist(rng, k, 0.01);
    Divergence d = divergence(p, q);
    REQUIRE(d.finite);
    double tv = tv_distance(p, q);
    CHECK(d.bits >= tv * tv / std::log(2.0) - 1e-12);
    ++checked;
  }
  CHECK(checked == 150);
}

TEST_CASE("divergence vanishes exactly on equal distributions and only there") {
  Rng rng(1002);
  for (int rep = 0; rep < 100; ++rep) {
    int k = 2 + static_cast<int>(rng.next_below(3));
    std::vector<double> p = random_dist(rng, k, 0.01);
    CHECK(divergence(p, p).bits == doctest::Approx(0.0).epsilon(1e-14));
    std::vector<double> q = random_dist(rng, k, 0.01);
    if (tv_distance(p, q) > 1e-6) CHECK(divergence(p, q).bits > 0);
  }
}

TEST_CASE("mutual information: nonnegativity, symmetry and chain rule on 150 random types") {
  Rng rng(1003);
  for (int rep = 0; rep < 150; ++rep) {
    int n = 4 + static_cast<int>(rng.next_below(10));
    JointType t = random_joint_type(rng, n, {2, 3, 2});
    double iab = mutual_information(t, {0}, {1});
    CHECK(iab >= 0);
    CHECK(iab == doctest::Approx(mutual_information(t, {1}, {0})).epsilon(1e-12));
    // I(A;BC) = I(A;B) + I(A;C|B)
    double lhs = mutual_information(t, {0}, {1, 2});
    double rhs = mutual_information(t, {0}, {1}) + mutual_information(t, {0}, {2}, {1});
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("type class cardinality bounds on 120 random compositions") {
  Rng rng(1004);
  for (int rep = 0; rep < 120; ++rep) {
    int alphabet = 2 + static_cast<int>(rng.next_below(3));
    int n = 4 + static_cast<int>(rng.next_below(12));
    JointType t;
    t.n = n;
    t.var_sizes = {alphabet};
    t.counts.assign(alphabet, 0);
    for (int i = 0; i < n; ++i) ++t.counts[rng.next_below(alphabet)];
    double log_size = log2_type_class_size(t);
    double h = entropy_bits(t.probabilities());
    CHECK(log_size <= n * h + 1e-9);
    CHECK(log_size >= n * h - alphabet * std::log2(n + 1.0) - 1e-9);
  }
}

TEST_CASE("certificate round trips on 120 random feasibility problems") {
  Rng rng(1005);
  int feasible_seen = 0;
  for (int rep = 0; rep < 120; ++rep) {
    FeasibilityProblem p;
    Kernel shape;
    shape.input_shape = {2};
    shape.output_size = 2 + static_cast<int>(rng.next_below(2));
    shape.k.assign(static_cast<size_t>(shape.input_rows()) * shape.output_size, 0.0);
    p.kernel_shapes = {shape};
    // random consistent target: equalities sampled from a hidden kernel
    Kernel hidden = shape;
    for (int r = 0; r < hidden.input_rows(); ++r) {
      std::vector<double> row = random_dist(rng, hidden.output_size);
      for (int o = 0; o < hidden.output_size; ++o) hidden.at(r, o) = row[o];
    }
    int ne = 1 + static_cast<int>(rng.next_below(4));
    bool consistent = rng.next_below(2) == 0;
    for (int e = 0; e < ne; ++e) {
      LinearEquality eq;
      double lhs = 0;
      for (int t = 0; t < 2; ++t) {
        int r = static_cast<int>(rng.next_below(hidden.input_rows()));
        int o = static_cast<int>(rng.next_below(hidden.output_size));
        double c = rng.next_double() * 2 - 1;
        eq.terms.push_back({0, r, o, c});
        lhs += c * hidden(r, o);
      }
      eq.rhs = consistent ? lhs : rng.next_double() * 2 - 1;
      p.equalities.push_back(std::move(eq));
    }
    FeasibilityOutcome out = solve_linear_feasibility(p);
    if (consistent) CHECK(out.verdict == Verdict::FEASIBLE);
    if (out.verdict == Verdict::FEASIBLE) {
      ++feasible_seen;
      CHECK(verify_certificate(p, out.certificate) <= 1e-9);
    }
  }
  CHECK(feasible_seen >= 50);
}

TEST_CASE("proposition-1 constructions on 120 single-user channels") {
  // W(z|x,y) = V(z|x): always 2-overwritable (resend the input) and
  // 2-spoofable; the constructive implications must verify by substitution.
  Rng rng(1006);
  int done = 0;
  for (int rep = 0; rep < 120; ++rep) {
    int nz = 2 + static_cast<int>(rng.next_below(2));
    Mac ch;
    ch.nx = 2;
    ch.ny = 2;
    ch.nz = nz;
    ch.w.resize(static_cast<size_t>(4) * nz);
    for (int x = 0; x < 2; ++x) {
      std::vector<double> row = random_dist(rng, nz, 0.02);
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < nz; ++z) ch.at(x, y, z) = row[z];
    }

    FeasibilityOutcome over = check_overwritable(ch, 2);
    REQUIRE(over.verdict == Verdict::FEASIBLE);

    DistributionVector qy;
    qy.probs = random_dist(rng, 2);
    auto [qa, qb] = spoof2_pair_from_overwrite(ch, over.certificate[0], qy);
    CHECK(verify_certificate(spoofable_problem(ch, 2), {qa, qb}) <= 1e-9);

    Kernel pxy = symmetrize2_from_spoof2(ch, qa);
    CHECK(verify_certificate(symmetrizable_problem(ch, 2), {pxy}) <= 1e-9);
    ++done;
  }
  CHECK(done == 120);
}

TEST_CASE("proposition-1 construction from solver spoofing certificates") {
  // Channels that are 2-spoofable by the solver: the construction
  // P_{X|Y}(x|y) = Q_{X|X~Y~}(x|x~,y) symmetrizes them.
  std::vector<Mac> channels = {builtin_channel("xor")};
  Rng rng(1007);
  for (int rep = 0; rep < 30; ++rep) {  // x-only channels are 2-spoofable too
    int nz = 2 + static_cast<int>(rng.next_below(2));
    Mac ch;
    ch.nx = 2;
    ch.ny = 2;
    ch.nz = nz;
    ch.w.resize(static_cast<size_t>(4) * nz);
    for (int x = 0; x < 2; ++x) {
      std::vector<double> row = random_dist(rng, nz, 0.02);
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < nz; ++z) ch.at(x, y, z) = row[z];
    }
    channels.push_back(ch);
  }
  for (const Mac& ch : channels) {
    FeasibilityOutcome sp = check_spoofable_2(ch);
    REQUIRE(sp.verdict == Verdict::FEASIBLE);
    for (int xt = 0; xt < ch.nx; ++xt) {
      Kernel pxy = symmetrize2_from_spoof2(ch, sp.certificate[0], xt);
      CHECK(verify_certificate(symmetrizable_problem(ch, 2), {pxy}) <= 1e-9);
    }
  }
}

TEST_CASE("five-step chains shrink on random inputs") {
  Rng rng(1008);
  Mac ch = builtin_channel("erasure");
  DistributionVector half{{0.5, 0.5}};
  Codebook cb = generate_constant_composition_codebook(half, half, 4, 2, 2, 777);
  DecoderParams params = DecoderParams::from_eta(0.3);
  for (int rep = 0; rep < 100; ++rep) {
    Word z(4);
    for (int t = 0; t < 4; ++t) z[t] = static_cast<Symbol>(rng.next_below(3));
    DecoderOutput o = decode_five_step(cb, ch, z, params);
    CHECK(o.chain1[0] >= o.chain1[1]);
    CHECK(o.chain1[1] >= o.chain1[2]);
    CHECK(o.chain2[0] >= o.chain2[1]);
    CHECK(o.chain2[1] >= o.chain2[2]);
  }
}
