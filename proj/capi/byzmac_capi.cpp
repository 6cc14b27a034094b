#include "byzmac.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>

#include "byzmac/json_io.hpp"

using namespace byzmac;

struct bz_channel {
  std::optional<Mac> mac;
  std::optional<AvMac> avmac;
};

struct bz_codebook {
  Codebook cb;
  bool erasure_example = false;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bz_status status_of(const Error& e) {
  switch (e.code()) {
    case Errc::TooLarge:
    case Errc::BudgetExceeded: return BZ_ERR_TOO_LARGE;
    case Errc::ParseError: return BZ_ERR_PARSE;
    default: return BZ_ERR_INVALID_ARGUMENT;
  }
}

template <typename Fn>
bz_status guarded(Fn&& fn) {
  try {
    fn();
    return BZ_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const Json::exception& e) {
    g_last_error = std::string("json: ") + e.what();
    return BZ_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BZ_ERR_INTERNAL;
  }
}

const Mac& need_mac(const bz_channel* ch) {
  if (!ch || !ch->mac) throw Error(Errc::ShapeMismatch, "a (non-AV) MAC handle is required");
  return *ch->mac;
}

const AvMac& need_avmac(const bz_channel* ch) {
  if (!ch || !ch->avmac) throw Error(Errc::ShapeMismatch, "an AV-MAC handle is required");
  return *ch->avmac;
}

Json parse_json(const char* text, const char* what) {
  if (!text) throw Error(Errc::ParseError, std::string(what) + ": null input");
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::ParseError, std::string(what) + ": invalid JSON");
  return j;
}

Word parse_csv_word(const char* csv) {
  if (!csv) throw Error(Errc::ParseError, "null symbol list");
  Word w;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    w.push_back(std::stoi(item));
  }
  if (w.empty()) throw Error(Errc::ParseError, "empty symbol list");
  return w;
}

DecodeFn build_decoder(const Mac& ch, const Codebook& cb, const Json& spec) {
  std::string type = spec.value("type", "feasibility");
  if (type == "erasure_example") {
    int n = cb.n;
    return [n](const Word& z) { return erasure_example_decode(n, z); };
  }
  DecoderParams params = DecoderParams::from_eta(spec.value("eta", 0.5));
  if (spec.contains("epsilon")) params.epsilon = spec["epsilon"].get<double>();
  if (spec.contains("delta")) params.delta = spec["delta"].get<double>();
  if (spec.contains("cell_budget")) params.cell_budget = spec["cell_budget"].get<uint64_t>();
  if (type == "feasibility") {
    return [cb, ch, params](const Word& z) { return decode_feasibility(cb, ch, z, params); };
  }
  if (type == "five_step") {
    StepOrder order = spec.value("order", "step2_first") == std::string("step3_first")
                          ? StepOrder::Step3First
                          : StepOrder::Step2First;
    return [cb, ch, params, order](const Word& z) {
      return decode_five_step(cb, ch, z, params, order);
    };
  }
  throw Error(Errc::ParseError, "unknown decoder type '" + type + "'");
}

std::optional<Attack> parse_attack(const char* attack_json) {
  if (!attack_json || !*attack_json) return std::nullopt;
  Json j = parse_json(attack_json, "attack");
  if (j.is_null()) return std::nullopt;
  Attack a;
  a.user = j.value("user", 1);
  std::string kind = j.value("kind", "vector");
  if (kind == "vector") {
    a.kind = Attack::Kind::DeterministicVector;
    a.vector = word_from_json(j.at("x"), "attack vector");
  } else if (kind == "iid") {
    a.kind = Attack::Kind::MemorylessKernel;
    std::vector<double> dist;
    for (const Json& v : j.at("dist")) dist.push_back(v.get<double>());
    a.letter_dist = Kernel::constant_row({}, dist);
  } else {
    throw Error(Errc::ParseError, "unknown attack kind '" + kind + "'");
  }
  return a;
}

// ---- reproduction payloads (shared with the CLI via the C surface) ----

Json reproduce_erasure_2n(int n) {
  Mac ch = builtin_channel("erasure");
  ErasureExampleCode code = build_erasure_example_code(n);
  // weight-2 attack by user 1; exact probability of "no 0 in the output"
  Word x2(n, 0);
  x2[0] = x2[1] = 1;
  int no_zero = 0;
  for (int k = 0; k < n; ++k) {
    Word z(n);
    for (int t = 0; t < n; ++t) z[t] = x2[t] + code.cb.words2[k][t];
    bool has_zero = false;
    for (Symbol s : z) has_zero |= (s == 0);
    if (!has_zero) ++no_zero;
  }
  double event_prob = static_cast<double>(no_zero) / n;
  ErrorReport exact = exact_error_probabilities(code.cb, code.decode, ch);
  return Json{{"n", n},
              {"no_zero_event_probability", event_prob},
              {"expected", 2.0 / n},
              {"exact", error_report_to_json(exact)}};
}

Json reproduce_spoof_uniform(int n) {
  Mac ch = builtin_channel("xor");
  DistributionVector half{{0.5, 0.5}};
  Codebook cb = generate_constant_composition_codebook(half, half, n, 2, 2, 1);
  SpoofPair pair;
  pair.user = 1;
  pair.sim_kernel = Kernel::uniform({2, 2}, 2);
  pair.own_kernel = Kernel::uniform({2, 2}, 2);
  double max_gap = 0, max_unif_dev = 0;
  const double u = std::pow(2.0, -n);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k) {
        SpoofDists d = spoof_output_dists(cb, ch, pair, i, j, k);
        for (size_t t = 0; t < d.p_ijk.size(); ++t) {
          max_gap = std::max(max_gap, std::abs(d.p_ijk[t] - d.p_jik[t]));
          max_gap = std::max(max_gap, std::abs(d.p_ijk[t] - d.q_ijk[t]));
          max_unif_dev = std::max(max_unif_dev, std::abs(d.p_ijk[t] - u));
          max_unif_dev = std::max(max_unif_dev, std::abs(d.q_ijk[t] - u));
        }
      }
  return Json{{"n", n},
              {"code", "2x2 constant-composition, seed 1"},
              {"max_pairwise_gap", max_gap},
              {"max_uniform_deviation", max_unif_dev},
              {"uniform_mass", u}};
}

Json reproduce_inner_corners() {
  Json table = Json::array();
  for (double d : {0.2, 0.1, 0.05, 0.02, 0.01}) {
    auto [c1, c2] = erasure_inner_bound_exact(d);
    table.push_back(Json{{"delta", d},
                         {"corner1_r1", c1.r1},
                         {"corner1_r2", c1.r2},
                         {"corner2_r1", c2.r1},
                         {"corner2_r2", c2.r2}});
  }
  InnerSearchConfig cfg;
  cfg.starts = 8;
  DistributionVector p1{{0.45, 0.55}}, p2{{0.55, 0.45}};
  InnerCornerResult heur = inner_bound_corner(builtin_channel("erasure"), p1, p2, InnerForm::R2Form, cfg);
  auto [c1, c2] = erasure_inner_bound_exact(0.05);
  return Json{{"limits", Json{{"corner1", {0.5, 1.0}}, {"corner2", {1.0, 0.5}}}},
              {"table", std::move(table)},
              {"heuristic_at_0.05",
               Json{{"r1", heur.point.r1},
                    {"r2", heur.point.r2},
                    {"analytic_r1", c2.r1},
                    {"analytic_r2", c2.r2},
                    {"flag", "HEURISTIC_UPPER_BOUND_ON_MIN"}}}};
}

Json reproduce_converse_112(int n) {
  Mac ch = builtin_channel("xor");
  DistributionVector half{{0.5, 0.5}};
  Codebook cb = generate_constant_composition_codebook(half, half, n, 2, 2, 1);
  DecoderParams params = DecoderParams::from_eta(0.3);
  DecodeFn dec = [cb, ch, params](const Word& z) { return decode_feasibility(cb, ch, z, params); };
  SpoofPair pair;
  pair.user = 1;
  pair.sim_kernel = Kernel::uniform({2, 2}, 2);
  pair.own_kernel = Kernel::uniform({2, 2}, 2);
  ConverseBoundReport conv = converse_bound_eval(cb, dec, ch, pair);
  ErrorReport exact = exact_error_probabilities(cb, dec, ch);
  return Json{{"n", n},
              {"converse", converse_report_to_json(conv)},
              {"exact", error_report_to_json(exact)},
              {"pe_at_least_one_twelfth", exact.p_e >= 1.0 / 12 - 1e-9}};
}

}  // namespace

extern "C" {

const char* bz_version(void) { return "0.1.0"; }

const char* bz_last_error(void) { return g_last_error.c_str(); }

void bz_string_free(char* s) { std::free(s); }

bz_status bz_channel_from_json(const char* json, bz_channel** out) {
  return guarded([&] {
    Json j = parse_json(json, "channel");
    auto ch = new bz_channel;
    if (json_is_avmac(j))
      ch->avmac = avmac_from_json(j);
    else
      ch->mac = mac_from_json(j);
    *out = ch;
  });
}

bz_status bz_channel_builtin(const char* name, bz_channel** out) {
  return guarded([&] {
    auto ch = new bz_channel;
    ch->mac = builtin_channel(name ? name : "");
    *out = ch;
  });
}

bz_status bz_channel_to_json(const bz_channel* ch, char** json_out) {
  return guarded([&] {
    if (!ch) throw Error(Errc::ShapeMismatch, "null channel");
    Json j = ch->mac ? mac_to_json(*ch->mac) : avmac_to_json(*ch->avmac);
    *json_out = dup_string(j.dump(2));
  });
}

int bz_channel_is_avmac(const bz_channel* ch) { return ch && ch->avmac ? 1 : 0; }

void bz_channel_free(bz_channel* ch) { delete ch; }

bz_status bz_codebook_from_json(const char* json, bz_codebook** out) {
  return guarded([&] {
    auto cb = new bz_codebook;
    cb->cb = codebook_from_json(parse_json(json, "codebook"));
    *out = cb;
  });
}

bz_status bz_codebook_generate(const char* params_json, bz_codebook** out) {
  return guarded([&] {
    Json j = parse_json(params_json, "codebook params");
    DistributionVector c1, c2;
    for (const Json& v : j.at("comp1")) c1.probs.push_back(v.get<double>());
    for (const Json& v : j.at("comp2")) c2.probs.push_back(v.get<double>());
    auto cb = new bz_codebook;
    cb->cb = generate_constant_composition_codebook(c1, c2, j.at("n").get<int>(),
                                                    j.at("N1").get<int>(), j.at("N2").get<int>(),
                                                    j.value("seed", uint64_t(1)));
    *out = cb;
  });
}

bz_status bz_codebook_erasure_example(int n, bz_codebook** out) {
  return guarded([&] {
    auto cb = new bz_codebook;
    cb->cb = build_erasure_example_code(n).cb;
    cb->erasure_example = true;
    *out = cb;
  });
}

bz_status bz_codebook_to_json(const bz_codebook* cb, char** json_out) {
  return guarded([&] {
    if (!cb) throw Error(Errc::ShapeMismatch, "null codebook");
    *json_out = dup_string(codebook_to_json(cb->cb).dump(2));
  });
}

void bz_codebook_free(bz_codebook* cb) { delete cb; }

bz_status bz_classify(const bz_channel* ch, double tol, char** report_json) {
  return guarded([&] {
    ClassificationReport r = classify(need_mac(ch), tol);
    *report_json = dup_string(classification_to_json(r).dump(2));
  });
}

bz_status bz_check_property(const bz_channel* ch, const char* property, double tol,
                            char** outcome_json) {
  return guarded([&] {
    std::string p = property ? property : "";
    FeasibilityOutcome out;
    if (p == "spoofable_1") out = check_spoofable_1(need_mac(ch), tol);
    else if (p == "spoofable_2") out = check_spoofable_2(need_mac(ch), tol);
    else if (p == "symmetrizable_1") out = check_symmetrizable(need_mac(ch), 1, tol);
    else if (p == "symmetrizable_2") out = check_symmetrizable(need_mac(ch), 2, tol);
    else if (p == "overwritable_1") out = check_overwritable(need_mac(ch), 1, tol);
    else if (p == "overwritable_2") out = check_overwritable(need_mac(ch), 2, tol);
    else if (p == "avmac_sym_x") out = check_avmac_symmetrizable(need_avmac(ch), AvSymKind::X, tol);
    else if (p == "avmac_sym_y") out = check_avmac_symmetrizable(need_avmac(ch), AvSymKind::Y, tol);
    else if (p == "avmac_sym_xy") out = check_avmac_symmetrizable(need_avmac(ch), AvSymKind::XY, tol);
    else throw Error(Errc::ParseError, "unknown property '" + p + "'");
    *outcome_json = dup_string(outcome_to_json(out).dump(2));
  });
}

bz_status bz_codebook_audit(const bz_codebook* cb, double epsilon, char** records_json) {
  return guarded([&] {
    if (!cb) throw Error(Errc::ShapeMismatch, "null codebook");
    *records_json = dup_string(audit_records_to_json(audit_codebook(cb->cb, epsilon)).dump(2));
  });
}

bz_status bz_decode(const bz_channel* ch, const bz_codebook* cb, const char* z_csv,
                    const char* decoder_json, char** output_json) {
  return guarded([&] {
    if (!cb) throw Error(Errc::ShapeMismatch, "null codebook");
    const Mac& mac = need_mac(ch);
    DecodeFn dec = build_decoder(mac, cb->cb, parse_json(decoder_json, "decoder"));
    DecoderOutput out = dec(parse_csv_word(z_csv));
    *output_json = dup_string(decoder_output_to_json(out).dump(2));
  });
}

bz_status bz_eta_search(const bz_channel* ch, const bz_codebook* cb, const char* params_json,
                        char** result_json) {
  return guarded([&] {
    if (!cb) throw Error(Errc::ShapeMismatch, "null codebook");
    Json j = params_json && *params_json ? parse_json(params_json, "params") : Json::object();
    double eta = eta_search(cb->cb, need_mac(ch), j.value("eta_start", 0.5),
                            j.value("max_steps", 20));
    *result_json = dup_string(Json{{"eta", eta}}.dump(2));
  });
}

bz_status bz_simulate_exact(const bz_channel* ch, const bz_codebook* cb, const char* decoder_json,
                            char** report_json) {
  return guarded([&] {
    if (!cb) throw Error(Errc::ShapeMismatch, "null codebook");
    const Mac& mac = need_mac(ch);
    DecodeFn dec = build_decoder(mac, cb->cb, parse_json(decoder_json, "decoder"));
    ErrorReport r = exact_error_probabilities(cb->cb, dec, mac);
    *report_json = dup_string(error_report_to_json(r).dump(2));
  });
}

bz_status bz_simulate_monte_carlo(const bz_channel* ch, const bz_codebook* cb,
                                  const char* decoder_json, const char* attack_json,
                                  uint64_t trials, uint64_t seed, int workers,
                                  char** report_json) {
  return guarded([&] {
    if (!cb) throw Error(Errc::ShapeMismatch, "null codebook");
    const Mac& mac = need_mac(ch);
    DecodeFn dec = build_decoder(mac, cb->cb, parse_json(decoder_json, "decoder"));
    ErrorReport r = monte_carlo_error(cb->cb, dec, mac, parse_attack(attack_json), trials, seed,
                                      workers);
    *report_json = dup_string(error_report_to_json(r).dump(2));
  });
}

bz_status bz_attack_demo(const bz_channel* ch, const bz_codebook* cb, const char* params_json,
                         char** report_json) {
  return guarded([&] {
    if (!cb) throw Error(Errc::ShapeMismatch, "null codebook");
    const Mac& mac = need_mac(ch);
    Json j = params_json && *params_json ? parse_json(params_json, "params") : Json::object();
    int user = j.value("user", 1);
    double tol = j.value("tol", 1e-9);
    FeasibilityOutcome fo = user == 1 ? check_spoofable_1(mac, tol) : check_spoofable_2(mac, tol);
    Json out{{"user", user}, {"spoofable", outcome_to_json(fo)}};
    if (fo.verdict == Verdict::FEASIBLE) {
      SpoofPair pair;
      pair.user = user;
      pair.sim_kernel = fo.certificate[0];
      pair.own_kernel = fo.certificate[1];
      int n_own = user == 1 ? cb->cb.N1 : cb->cb.N2;
      int n_other = user == 1 ? cb->cb.N2 : cb->cb.N1;
      double max_gap = 0;
      for (int i = 1; i <= n_own; ++i)
        for (int jj = 1; jj <= n_own; ++jj)
          for (int k = 1; k <= n_other; ++k) {
            SpoofDists d = spoof_output_dists(cb->cb, mac, pair, i, jj, k);
            for (size_t t = 0; t < d.p_ijk.size(); ++t) {
              max_gap = std::max(max_gap, std::abs(d.p_ijk[t] - d.p_jik[t]));
              max_gap = std::max(max_gap, std::abs(d.p_ijk[t] - d.q_ijk[t]));
            }
          }
      out["max_scenario_gap"] = max_gap;
      DecodeFn dec = build_decoder(mac, cb->cb,
                                   j.contains("decoder") ? j["decoder"]
                                                         : Json{{"type", "feasibility"}, {"eta", 0.3}});
      out["converse"] = converse_report_to_json(converse_bound_eval(cb->cb, dec, mac, pair));
    }
    *report_json = dup_string(out.dump(2));
  });
}

bz_status bz_region_inner(const bz_channel* ch, const char* params_json, char** result_json) {
  return guarded([&] {
    const Mac& mac = need_mac(ch);
    Json j = parse_json(params_json, "params");
    DistributionVector c1, c2;
    for (const Json& v : j.at("comp1")) c1.probs.push_back(v.get<double>());
    for (const Json& v : j.at("comp2")) c2.probs.push_back(v.get<double>());
    InnerForm form = j.value("form", "r2") == std::string("r1") ? InnerForm::R1Form : InnerForm::R2Form;
    InnerSearchConfig cfg;
    cfg.starts = j.value("starts", 32);
    cfg.seed = j.value("seed", uint64_t(1));
    InnerCornerResult r = inner_bound_corner(mac, c1, c2, form, cfg);
    *result_json = dup_string(Json{{"r1", r.point.r1},
                                   {"r2", r.point.r2},
                                   {"form", j.value("form", "r2")},
                                   {"flag", "HEURISTIC_UPPER_BOUND_ON_MIN"},
                                   {"starts", r.starts_used}}
                                  .dump(2));
  });
}

bz_status bz_region_erasure_exact(const char* deltas_csv, char** table_json) {
  return guarded([&] {
    Json table = Json::array();
    std::stringstream ss(deltas_csv ? deltas_csv : "0.2,0.1,0.05,0.02,0.01");
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      double d = std::stod(item);
      auto [c1, c2] = erasure_inner_bound_exact(d);
      table.push_back(Json{{"delta", d},
                           {"corner1_r1", c1.r1},
                           {"corner1_r2", c1.r2},
                           {"corner2_r1", c2.r1},
                           {"corner2_r2", c2.r2}});
    }
    *table_json = dup_string(table.dump(2));
  });
}

bz_status bz_region_polytope(const bz_channel* ch, char** result_json) {
  return guarded([&] {
    auto vertices = attack_polytope_vertices(need_mac(ch));
    *result_json = dup_string(polytope_to_json(vertices).dump(2));
  });
}

bz_status bz_region_jahn(const bz_channel* avmac, int input_grid, int state_grid,
                         char** table_json) {
  return guarded([&] {
    auto grid = avmac_rate_region(need_avmac(avmac), input_grid, state_grid);
    *table_json = dup_string(jahn_grid_to_json(grid).dump(2));
  });
}

bz_status bz_polytope_avmac(const bz_channel* ch, char** avmac_json) {
  return guarded([&] {
    auto vertices = attack_polytope_vertices(need_mac(ch));
    std::vector<Mac> states;
    for (const auto& v : vertices) states.push_back(v.induced);
    AvMac av = avmac_from_states(states, "attack-polytope AV-MAC");
    *avmac_json = dup_string(avmac_to_json(av).dump(2));
  });
}

bz_status bz_examples_reproduce(const char* which, const char* params_json, char** result_json) {
  return guarded([&] {
    std::string w = which ? which : "";
    Json params = params_json && *params_json ? parse_json(params_json, "params") : Json::object();
    Json out;
    if (w == "erasure-2n")
      out = reproduce_erasure_2n(params.value("n", 8));
    else if (w == "spoof-uniform")
      out = reproduce_spoof_uniform(params.value("n", 6));
    else if (w == "inner-corners")
      out = reproduce_inner_corners();
    else if (w == "converse-112")
      out = reproduce_converse_112(params.value("n", 4));
    else
      throw Error(Errc::ParseError, "unknown example '" + w + "'");
    *result_json = dup_string(out.dump(2));
  });
}

}  // extern "C"
