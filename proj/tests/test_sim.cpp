#include <cmath>

#include "byzmac/rng.hpp"
#include "byzmac/sim.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace byzmac;

namespace {

// Membership decoder for the identity channel: split z into the two input
// words and look both up in the codebook.
DecodeFn identity_decoder(const Codebook& cb) {
  return [cb](const Word& z) {
    Word x(z.size()), y(z.size());
    for (size_t t = 0; t < z.size(); ++t) {
      x[t] = z[t] / 2;
      y[t] = z[t] % 2;
    }
    int m1 = 0, m2 = 0;
    for (int m = 0; m < cb.N1; ++m)
      if (cb.words1[m] == x) m1 = m + 1;
    for (int m = 0; m < cb.N2; ++m)
      if (cb.words2[m] == y) m2 = m + 1;
    DecoderOutput o;
    if (m1 && m2) {
      o.kind = DecisionKind::Pair;
      o.m1 = m1;
      o.m2 = m2;
      o.d1 = {m1};
      o.d2 = {m2};
    } else if (!m1 && m2) {
      o.kind = DecisionKind::Blame1;
      o.d2 = {m2};
    } else if (m1 && !m2) {
      o.kind = DecisionKind::Blame2;
      o.d1 = {m1};
    } else {
      o.kind = DecisionKind::Pair;
      o.m1 = o.m2 = 1;
      o.fallback = true;
    }
    return o;
  };
}

Codebook identity_code_2x2() {
  Codebook cb;
  cb.n = 4;
  cb.N1 = 2;
  cb.N2 = 2;
  cb.words1 = {{0, 0, 1, 1}, {0, 1, 0, 1}};
  cb.words2 = {{0, 1, 0, 1}, {1, 0, 1, 0}};
  cb.comp1.probs = {0.5, 0.5};
  cb.comp2.probs = {0.5, 0.5};
  return cb;
}

}  // namespace

TEST_CASE("identity channel with a membership decoder has zero honest error") {
  Mac ch = testutil::identity_mac();
  Codebook cb = identity_code_2x2();
  ErrorReport r = exact_error_probabilities(cb, identity_decoder(cb), ch);
  CHECK(r.p_hon == 0.0);
  CHECK(r.p_mal1 == 0.0);  // any codeword attack is decoded with the honest message intact
  CHECK(r.p_mal2 == 0.0);
  CHECK(r.p_e == 0.0);
  CHECK(r.mode == "exact");
  CHECK(r.mal1_is_exact_max);
}

TEST_CASE("erasure example at n = 8: exact probabilities") {
  Mac ch = builtin_channel("erasure");
  ErasureExampleCode code = build_erasure_example_code(8);
  ErrorReport r = exact_error_probabilities(code.cb, code.decode, ch);
  // honest error: both users pick the same message other than (1,1)
  CHECK(r.p_hon == doctest::Approx(7.0 / 64).epsilon(1e-12));
  // worst attacks are weight-2 strings (user 1) and weight-(n-2) strings (user 2)
  CHECK(r.p_mal1 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.p_mal2 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.p_hon <= r.p_mal1 + r.p_mal2 + 1e-12);
  int weight1 = 0;
  for (Symbol s : r.worst_attack1) weight1 += s;
  CHECK(weight1 == 2);
}

TEST_CASE("honest error is at most the sum of the malicious ones") {
  Mac ch = builtin_channel("erasure");
  DistributionVector half{{0.5, 0.5}};
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    Codebook cb = generate_constant_composition_codebook(half, half, 4, 2, 2, seed);
    DecoderParams params = DecoderParams::from_eta(0.25);
    DecodeFn dec = [&](const Word& z) { return decode_feasibility(cb, ch, z, params); };
    ErrorReport r = exact_error_probabilities(cb, dec, ch);
    CHECK(r.p_hon <= r.p_mal1 + r.p_mal2 + 1e-12);
  }
}

TEST_CASE("supplied attack lists give a flagged lower bound") {
  Mac ch = builtin_channel("erasure");
  ErasureExampleCode code = build_erasure_example_code(6);
  std::vector<Word> only_zero = {Word(6, 0)};
  ErrorReport r = exact_error_probabilities(code.cb, code.decode, ch, &only_zero, nullptr);
  CHECK_FALSE(r.mal1_is_exact_max);
  CHECK(r.mal2_is_exact_max);
  ErrorReport full = exact_error_probabilities(code.cb, code.decode, ch);
  CHECK(r.p_mal1 <= full.p_mal1 + 1e-15);
}

TEST_CASE("message relabeling leaves the probabilities unchanged") {
  Mac ch = testutil::identity_mac();
  Codebook cb = identity_code_2x2();
  DecodeFn dec = identity_decoder(cb);
  ErrorReport base = exact_error_probabilities(cb, dec, ch);

  Codebook perm = cb;
  std::swap(perm.words1[0], perm.words1[1]);
  DecodeFn perm_dec = identity_decoder(perm);
  ErrorReport relabeled = exact_error_probabilities(perm, perm_dec, ch);
  CHECK(base.p_hon == doctest::Approx(relabeled.p_hon).epsilon(1e-15));
  CHECK(base.p_mal1 == doctest::Approx(relabeled.p_mal1).epsilon(1e-15));
  CHECK(base.p_mal2 == doctest::Approx(relabeled.p_mal2).epsilon(1e-15));
}

TEST_CASE("randomized attacks are dominated by deterministic ones") {
  Mac ch = builtin_channel("erasure");
  ErasureExampleCode code = build_erasure_example_code(6);
  ErrorReport full = exact_error_probabilities(code.cb, code.decode, ch);

  // error of a deterministic attack x, recomputed directly
  auto mal1_of = [&](const Word& x) {
    std::vector<Word> one = {x};
    return exact_error_probabilities(code.cb, code.decode, ch, &one, nullptr).p_mal1;
  };
  Rng rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    Word a(6), b(6);
    for (int t = 0; t < 6; ++t) {
      a[t] = static_cast<Symbol>(rng.next_below(2));
      b[t] = static_cast<Symbol>(rng.next_below(2));
    }
    double w = rng.next_double();
    double mixed = w * mal1_of(a) + (1 - w) * mal1_of(b);
    CHECK(mixed <= std::max(mal1_of(a), mal1_of(b)) + 1e-12);
    CHECK(mixed <= full.p_mal1 + 1e-12);
  }
}

TEST_CASE("monte carlo agrees with exact and is worker invariant") {
  Mac ch = builtin_channel("erasure");
  ErasureExampleCode code = build_erasure_example_code(8);
  ErrorReport exact = exact_error_probabilities(code.cb, code.decode, ch);

  ErrorReport hon = monte_carlo_error(code.cb, code.decode, ch, std::nullopt, 20000, 42);
  CHECK(hon.scenario == "honest");
  CHECK(std::abs(hon.p_hon - exact.p_hon) <= 3 * hon.half_width_hon + 1e-9);

  Attack a;
  a.user = 1;
  a.kind = Attack::Kind::DeterministicVector;
  a.vector = exact.worst_attack1;
  ErrorReport mal = monte_carlo_error(code.cb, code.decode, ch, a, 20000, 43);
  CHECK(mal.scenario == "mal1");
  CHECK(std::abs(mal.p_mal1 - exact.p_mal1) <= 3 * mal.half_width_mal1 + 1e-9);

  ErrorReport w1 = monte_carlo_error(code.cb, code.decode, ch, a, 9999, 7, 1);
  ErrorReport w4 = monte_carlo_error(code.cb, code.decode, ch, a, 9999, 7, 4);
  CHECK(w1.p_mal1 == w4.p_mal1);  // byte-identical by per-trial seeding

  // deterministic channel with an error-free code: estimate 0, half-width 0
  Mac idch = testutil::identity_mac();
  Codebook idcb = identity_code_2x2();
  ErrorReport zero = monte_carlo_error(idcb, identity_decoder(idcb), idch, std::nullopt, 5000, 5);
  CHECK(zero.p_hon == 0.0);
  CHECK(zero.half_width_hon == 0.0);
}

TEST_CASE("randomized code wrapper matches the deterministic evaluation") {
  Mac ch = testutil::identity_mac();
  Codebook cb = identity_code_2x2();
  DecodeFn dec = identity_decoder(cb);
  ErrorReport det = exact_error_probabilities(cb, dec, ch);
  RandomizedCode rc = RandomizedCode::from_deterministic(cb, dec);
  ErrorReport rnd = exact_error_probabilities_rand(rc, ch);
  CHECK(det.p_hon == doctest::Approx(rnd.p_hon).epsilon(1e-15));
  CHECK(det.p_mal1 == doctest::Approx(rnd.p_mal1).epsilon(1e-15));
  CHECK(det.p_mal2 == doctest::Approx(rnd.p_mal2).epsilon(1e-15));
}

TEST_CASE("derandomize: singleton and identical-encoder lists reproduce the original") {
  Mac ch = testutil::identity_mac();
  Codebook cb = identity_code_2x2();
  DecodeFn dec = identity_decoder(cb);
  RandomizedCode rc = RandomizedCode::from_deterministic(cb, dec);
  DerandomizeResult res = derandomize(rc, ch, 99);
  CHECK(res.reduced.L1() == 16);
  CHECK(res.reduced.L2() == 16);
  CHECK(res.before_hon == doctest::Approx(res.after_hon).epsilon(1e-12));
  CHECK(res.before_mal1 == doctest::Approx(res.after_mal1).epsilon(1e-12));
  CHECK(res.before_mal2 == doctest::Approx(res.after_mal2).epsilon(1e-12));
}

TEST_CASE("derandomize measures a two-encoder randomized code") {
  Mac ch = testutil::identity_mac();
  // two encoders per user: the base code and a swapped-codeword variant
  Codebook cb = identity_code_2x2();
  RandomizedCode rc;
  rc.n = 4;
  rc.N1 = rc.N2 = 2;
  rc.encoders1 = {cb.words1, {cb.words1[1], cb.words1[0]}};
  rc.encoders2 = {cb.words2, {cb.words2[1], cb.words2[0]}};
  rc.weights1.probs = {0.5, 0.5};
  rc.weights2.probs = {0.5, 0.5};
  rc.decode = [&ch](int l1, int l2, const Word& z) {
    Codebook view;
    view.n = 4;
    view.N1 = view.N2 = 2;
    view.comp1.probs = view.comp2.probs = {0.5, 0.5};
    Codebook base = identity_code_2x2();
    view.words1 = l1 == 0 ? base.words1 : std::vector<Word>{base.words1[1], base.words1[0]};
    view.words2 = l2 == 0 ? base.words2 : std::vector<Word>{base.words2[1], base.words2[0]};
    return identity_decoder(view)(z);
  };
  DerandomizeResult res = derandomize(rc, ch, 7);
  CHECK(res.before_hon == 0.0);
  CHECK(res.after_hon == 0.0);
  CHECK(res.after_mal1 >= 0.0);
  CHECK(res.reduced.L1() == 16);
}

TEST_CASE("two-phase composition") {
  Mac ch = testutil::identity_mac();

  // phase 2: blocklength 2, 4 encoders per user (n^2), 2 messages each
  RandomizedCode phase2;
  phase2.n = 2;
  phase2.N1 = phase2.N2 = 2;
  std::vector<std::vector<Word>> encs = {{{0, 0}, {1, 1}}, {{0, 1}, {1, 0}},
                                         {{1, 1}, {0, 0}}, {{1, 0}, {0, 1}}};
  phase2.encoders1 = encs;
  phase2.encoders2 = encs;
  phase2.weights1.probs = phase2.weights2.probs = {0.25, 0.25, 0.25, 0.25};
  phase2.decode = [encs](int l1, int l2, const Word& z) {
    Codebook view;
    view.n = 2;
    view.N1 = view.N2 = 2;
    view.comp1.probs = view.comp2.probs = {0.5, 0.5};
    view.words1 = encs[l1];
    view.words2 = encs[l2];
    return identity_decoder(view)(z);
  };

  // phase 1: blocklength 4, four balanced codewords per user (n^2 = 4)
  DeterministicCode phase1;
  phase1.cb.n = 4;
  phase1.cb.N1 = phase1.cb.N2 = 4;
  phase1.cb.words1 = {{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}};
  phase1.cb.words2 = phase1.cb.words1;
  phase1.cb.comp1.probs = {0.5, 0.5};
  phase1.cb.comp2.probs = {0.5, 0.5};
  phase1.decode = identity_decoder(phase1.cb);

  CompositeCode cc = compose_two_phase(phase1, phase2);
  CHECK(cc.M1 == 8);
  CHECK(cc.M2 == 8);

  // Composite decodes every honest message pair exactly (both phases error-free).
  CodeView view = CodeView::of(cc);
  ErrorReport r = exact_error_probabilities(view, ch, nullptr, nullptr, uint64_t(1) << 32);
  CHECK(r.p_hon == 0.0);

  // A blaming phase-1 verdict propagates regardless of the suffix.
  DeterministicCode blamer = phase1;
  blamer.decode = [](const Word&) {
    DecoderOutput o;
    o.kind = DecisionKind::Blame2;
    return o;
  };
  CompositeCode cc2 = compose_two_phase(blamer, phase2);
  CHECK(cc2.decode({0, 1, 0, 1}).kind == DecisionKind::Blame2);
  CHECK(cc2.decode({3, 3, 1, 0}).kind == DecisionKind::Blame2);

  // Mismatched phase-1 message count raises SizeMismatch.
  DeterministicCode wrong = phase1;
  wrong.cb.N1 = 3;
  wrong.cb.words1.pop_back();
  CHECK_THROWS_AS(compose_two_phase(wrong, phase2), Error);

  // Error decomposition: composite mal-2 error is at most the sum of the
  // phase errors, measured exactly with a deliberately poor phase-2 decoder.
  RandomizedCode sloppy = phase2;
  sloppy.decode = [](int, int, const Word&) {
    DecoderOutput o;
    o.kind = DecisionKind::Pair;
    o.m1 = o.m2 = 1;
    return o;
  };
  CompositeCode cc3 = compose_two_phase(phase1, sloppy);
  ErrorReport comp = exact_error_probabilities(CodeView::of(cc3), ch, nullptr, nullptr, uint64_t(1) << 32);
  ErrorReport p1 = exact_error_probabilities(phase1.cb, phase1.decode, ch);
  ErrorReport p2 = exact_error_probabilities_rand(sloppy, ch);
  CHECK(comp.p_mal2 <= p1.p_mal2 + p2.p_mal2 + 1e-12);
  CHECK(comp.p_mal1 <= p1.p_mal1 + p2.p_mal1 + 1e-12);
}
