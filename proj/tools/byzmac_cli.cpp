// Command-line frontend for the byzantine-MAC toolkit. All computation goes
// through the shared C API (byzmac.h); this tool owns argument parsing, file
// I/O and the report envelope.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "byzmac.h"
#include "json.hpp"

using nlohmann::json;

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTooLarge = 3;
constexpr int kExitInconclusive = 4;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) { throw CliError{code, message}; }

void check(bz_status st, const std::string& what) {
  if (st == BZ_OK) return;
  int code = (st == BZ_ERR_TOO_LARGE) ? kExitTooLarge : kExitError;
  fail(code, what + ": " + bz_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kExitError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// RAII helpers for C API resources.
struct Channel {
  bz_channel* h = nullptr;
  ~Channel() { bz_channel_free(h); }
};
struct Code {
  bz_codebook* h = nullptr;
  ~Code() { bz_codebook_free(h); }
};
struct CStr {
  char* s = nullptr;
  ~CStr() { bz_string_free(s); }
  json parse() const { return json::parse(s); }
};

void load_channel(const std::string& spec, Channel& ch) {
  if (spec.rfind("builtin:", 0) == 0) {
    check(bz_channel_builtin(spec.substr(8).c_str(), &ch.h), "builtin channel");
  } else {
    check(bz_channel_from_json(read_file(spec).c_str(), &ch.h), "channel " + spec);
  }
}

void load_code(const std::string& spec, Code& cb) {
  if (spec.rfind("erasure-example:", 0) == 0) {
    int n = std::stoi(spec.substr(16));
    check(bz_codebook_erasure_example(n, &cb.h), "erasure example code");
  } else {
    check(bz_codebook_from_json(read_file(spec).c_str(), &cb.h), "code " + spec);
  }
}

json parse_comp(const std::string& csv) {
  json arr = json::array();
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) arr.push_back(std::stod(item));
  return arr;
}

struct Emitter {
  std::string subcommand;
  json inputs = json::object();
  json params = json::object();
  std::string out_path;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void write(const json& result) const {
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json envelope = {{"schema_version", 1},
                     {"manifest",
                      {{"tool", "byzmac"},
                       {"version", bz_version()},
                       {"subcommand", subcommand},
                       {"inputs", inputs},
                       {"params", params},
                       {"wall_clock_ms", ms}}},
                     {"result", result}};
    if (!out_path.empty()) {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) fail(kExitError, "cannot write " + out_path);
      out << envelope.dump(2) << "\n";
    }
  }
};

void print_num(const char* name, double v) { std::printf("  %-24s %.12g\n", name, v); }

json decoder_spec(const std::string& type, double eta, double epsilon, double delta,
                  const std::string& order) {
  if (type == "erasure_example") return json{{"type", "erasure_example"}};
  json spec{{"type", type}, {"eta", eta}};
  if (epsilon > 0) spec["epsilon"] = epsilon;
  if (delta > 0) spec["delta"] = delta;
  if (type == "five_step") spec["order"] = order;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"byzmac - byzantine multiple-access channel toolkit"};
  app.require_subcommand(1);

  std::string channel_spec, code_spec, out_path, received, order = "step2_first";
  std::string which, adversary_path, decoder_type = "feasibility", deltas = "0.2,0.1,0.05,0.02,0.01";
  std::string comp1_csv = "0.5,0.5", comp2_csv = "0.5,0.5", form = "r2";
  double tol = 1e-9, eta = 0.5, epsilon = -1, delta = -1, audit_eps = 0.1;
  int n = 8, user = 1, N1 = 2, N2 = 2, input_grid = 4, state_grid = 4, workers = 1, starts = 32;
  uint64_t seed = 1, trials = 0;
  bool exact = false, five_step = false, require_decisive = false;
  std::string emit_avmac;

  auto* classify = app.add_subcommand("classify", "channel classification with certificates");
  classify->add_option("--channel", channel_spec)->required();
  classify->add_option("--tol", tol);
  classify->add_flag("--require-decisive", require_decisive,
                     "exit 4 if any verdict is INCONCLUSIVE");
  classify->add_option("--out", out_path);

  auto* attack_demo = app.add_subcommand("attack-demo", "spoofing identity and converse bound");
  attack_demo->add_option("--channel", channel_spec)->required();
  attack_demo->add_option("--code", code_spec);
  attack_demo->add_option("--n", n);
  attack_demo->add_option("--user", user);
  attack_demo->add_option("--tol", tol);
  attack_demo->add_option("--out", out_path);

  auto* decode = app.add_subcommand("decode", "run a decoder on a received vector");
  decode->add_option("--channel", channel_spec)->required();
  decode->add_option("--code", code_spec)->required();
  decode->add_option("--received", received)->required();
  decode->add_option("--eta", eta);
  decode->add_flag("--five-step", five_step);
  decode->add_option("--order", order)->check(CLI::IsMember({"step2_first", "step3_first"}));
  decode->add_option("--epsilon", epsilon);
  decode->add_option("--delta", delta);
  decode->add_option("--out", out_path);

  auto* simulate = app.add_subcommand("simulate", "exact or Monte Carlo error probabilities");
  simulate->add_option("--channel", channel_spec)->required();
  simulate->add_option("--code", code_spec)->required();
  simulate->add_flag("--exact", exact);
  simulate->add_option("--trials", trials);
  simulate->add_option("--seed", seed);
  simulate->add_option("--workers", workers);
  simulate->add_option("--decoder", decoder_type)
      ->check(CLI::IsMember({"feasibility", "five_step", "erasure_example"}));
  simulate->add_option("--eta", eta);
  simulate->add_option("--adversary", adversary_path, "attack JSON file, or 'honest'");
  simulate->add_option("--out", out_path);

  auto* codebook = app.add_subcommand("codebook", "generate or audit codebooks");
  auto* cb_gen = codebook->add_subcommand("gen", "constant-composition random codebook");
  cb_gen->add_option("--n", n)->required();
  cb_gen->add_option("--N1", N1)->required();
  cb_gen->add_option("--N2", N2)->required();
  cb_gen->add_option("--comp1", comp1_csv);
  cb_gen->add_option("--comp2", comp2_csv);
  cb_gen->add_option("--seed", seed);
  cb_gen->add_option("--out", out_path)->required();
  auto* cb_audit = codebook->add_subcommand("audit", "evaluate the ten codebook properties");
  cb_audit->add_option("--code", code_spec)->required();
  cb_audit->add_option("--epsilon", audit_eps);
  cb_audit->add_option("--out", out_path);

  auto* region = app.add_subcommand("region", "rate-region computations");
  auto* region_inner = region->add_subcommand("inner", "heuristic inner-bound corner");
  region_inner->add_option("--channel", channel_spec)->required();
  region_inner->add_option("--comp1", comp1_csv);
  region_inner->add_option("--comp2", comp2_csv);
  region_inner->add_option("--form", form)->check(CLI::IsMember({"r1", "r2"}));
  region_inner->add_option("--starts", starts);
  region_inner->add_option("--seed", seed);
  region_inner->add_option("--out", out_path);
  auto* region_erasure = region->add_subcommand("erasure-exact", "analytic erasure corners");
  region_erasure->add_option("--deltas", deltas);
  region_erasure->add_option("--out", out_path);
  auto* region_polytope = region->add_subcommand("polytope", "attack polytope vertices");
  region_polytope->add_option("--channel", channel_spec)->required();
  region_polytope->add_option("--emit-avmac", emit_avmac, "write the induced AV-MAC to a file");
  region_polytope->add_option("--out", out_path);
  auto* region_jahn = region->add_subcommand("jahn", "AV-MAC rate-region grid");
  region_jahn->add_option("--channel", channel_spec)->required();
  region_jahn->add_option("--input-grid", input_grid);
  region_jahn->add_option("--state-grid", state_grid);
  region_jahn->add_option("--out", out_path);

  auto* examples = app.add_subcommand("examples", "reproduce the worked examples");
  auto* reproduce = examples->add_subcommand("reproduce");
  reproduce->add_option("--which", which)
      ->required()
      ->check(CLI::IsMember({"erasure-2n", "spoof-uniform", "inner-corners", "converse-112"}));
  reproduce->add_option("--n", n);
  reproduce->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    Emitter emit;
    emit.out_path = out_path;

    if (*classify) {
      emit.subcommand = "classify";
      emit.inputs["channel"] = channel_spec;
      emit.params = {{"tol", tol}};
      Channel ch;
      load_channel(channel_spec, ch);
      CStr report;
      check(bz_classify(ch.h, tol, &report.s), "classify");
      json r = report.parse();
      std::printf("classification of %s\n", channel_spec.c_str());
      bool any_inconclusive = false;
      for (const char* key : {"spoofable_1", "spoofable_2", "symmetrizable_1", "symmetrizable_2",
                              "overwritable_1", "overwritable_2"}) {
        std::string verdict = r[key]["verdict"];
        any_inconclusive |= verdict == "INCONCLUSIVE";
        std::printf("  %-16s %-13s margin %.12g\n", key, verdict.c_str(),
                    r[key]["margin"].get<double>());
      }
      std::printf("  hierarchy_consistent: %s\n", r["hierarchy_consistent"].get<bool>() ? "yes" : "no");
      emit.write(r);
      if (require_decisive && any_inconclusive) return kExitInconclusive;
      return 0;
    }

    if (*attack_demo) {
      emit.subcommand = "attack-demo";
      emit.inputs["channel"] = channel_spec;
      emit.params = {{"user", user}, {"tol", tol}, {"n", n}};
      Channel ch;
      load_channel(channel_spec, ch);
      Code cb;
      if (!code_spec.empty()) {
        load_code(code_spec, cb);
        emit.inputs["code"] = code_spec;
      } else {
        json gen{{"n", n}, {"N1", 2}, {"N2", 2}, {"comp1", {0.5, 0.5}}, {"comp2", {0.5, 0.5}},
                 {"seed", 1}};
        check(bz_codebook_generate(gen.dump().c_str(), &cb.h), "default code");
        emit.inputs["code"] = "generated 2x2 (seed 1)";
      }
      json params{{"user", user}, {"tol", tol}};
      CStr report;
      check(bz_attack_demo(ch.h, cb.h, params.dump().c_str(), &report.s), "attack demo");
      json r = report.parse();
      std::printf("attack demo (user %d)\n", user);
      std::printf("  spoofable verdict: %s\n", r["spoofable"]["verdict"].get<std::string>().c_str());
      if (r.contains("max_scenario_gap")) {
        print_num("max_scenario_gap", r["max_scenario_gap"].get<double>());
        print_num("converse lhs", r["converse"]["lhs"].get<double>());
        print_num("converse rhs", r["converse"]["rhs"].get<double>());
        print_num("pe_lower", r["converse"]["pe_lower"].get<double>());
      }
      emit.write(r);
      return 0;
    }

    if (*decode) {
      emit.subcommand = "decode";
      emit.inputs = {{"channel", channel_spec}, {"code", code_spec}, {"received", received}};
      json spec = decoder_spec(five_step ? "five_step" : decoder_type, eta, epsilon, delta, order);
      emit.params = spec;
      Channel ch;
      load_channel(channel_spec, ch);
      Code cb;
      load_code(code_spec, cb);
      CStr out;
      check(bz_decode(ch.h, cb.h, received.c_str(), spec.dump().c_str(), &out.s), "decode");
      json r = out.parse();
      std::printf("decoder output: %s", r["kind"].get<std::string>().c_str());
      if (r["kind"] == "pair") std::printf(" (%d, %d)", r["m1"].get<int>(), r["m2"].get<int>());
      if (r.value("fallback", false)) std::printf(" [fallback]");
      std::printf("\n");
      emit.write(r);
      return 0;
    }

    if (*simulate) {
      emit.subcommand = "simulate";
      emit.inputs = {{"channel", channel_spec}, {"code", code_spec}};
      json spec = decoder_spec(decoder_type, eta, epsilon, delta, order);
      Channel ch;
      load_channel(channel_spec, ch);
      Code cb;
      load_code(code_spec, cb);
      CStr report;
      if (exact) {
        emit.params = {{"mode", "exact"}, {"decoder", spec}};
        check(bz_simulate_exact(ch.h, cb.h, spec.dump().c_str(), &report.s), "simulate");
      } else {
        if (trials == 0) fail(kExitUsage, "--exact or --trials is required");
        std::string attack;
        if (!adversary_path.empty() && adversary_path != "honest") attack = read_file(adversary_path);
        emit.params = {{"mode", "monte_carlo"}, {"decoder", spec},     {"trials", trials},
                       {"seed", seed},          {"workers", workers},  {"adversary", adversary_path}};
        check(bz_simulate_monte_carlo(ch.h, cb.h, spec.dump().c_str(),
                                      attack.empty() ? nullptr : attack.c_str(), trials, seed,
                                      workers, &report.s),
              "simulate");
      }
      json r = report.parse();
      std::printf("error probabilities (%s)\n", r["mode"].get<std::string>().c_str());
      print_num("p_hon", r["p_hon"].get<double>());
      print_num("p_mal1", r["p_mal1"].get<double>());
      print_num("p_mal2", r["p_mal2"].get<double>());
      print_num("p_e", r["p_e"].get<double>());
      emit.write(r);
      return 0;
    }

    if (*cb_gen) {
      emit.subcommand = "codebook gen";
      emit.params = {{"n", n},          {"N1", N1},   {"N2", N2}, {"comp1", comp1_csv},
                     {"comp2", comp2_csv}, {"seed", seed}};
      json gen{{"n", n},
               {"N1", N1},
               {"N2", N2},
               {"comp1", parse_comp(comp1_csv)},
               {"comp2", parse_comp(comp2_csv)},
               {"seed", seed}};
      Code cb;
      check(bz_codebook_generate(gen.dump().c_str(), &cb.h), "codebook gen");
      CStr out;
      check(bz_codebook_to_json(cb.h, &out.s), "codebook serialize");
      emit.write(out.parse());
      std::printf("wrote codebook to %s\n", out_path.c_str());
      return 0;
    }

    if (*cb_audit) {
      emit.subcommand = "codebook audit";
      emit.inputs["code"] = code_spec;
      emit.params = {{"epsilon", audit_eps}};
      Code cb;
      load_code(code_spec, cb);
      CStr out;
      check(bz_codebook_audit(cb.h, audit_eps, &out.s), "codebook audit");
      json records = out.parse();
      for (const json& rec : records)
        std::printf("  %-14s %-8s worst_ratio %.12g\n", rec["property"].get<std::string>().c_str(),
                    rec["verdict"].get<std::string>().c_str(), rec["worst_ratio"].get<double>());
      emit.write(records);
      return 0;
    }

    if (*region_inner) {
      emit.subcommand = "region inner";
      emit.inputs["channel"] = channel_spec;
      emit.params = {{"comp1", comp1_csv}, {"comp2", comp2_csv}, {"form", form},
                     {"starts", starts},   {"seed", seed}};
      Channel ch;
      load_channel(channel_spec, ch);
      json params{{"comp1", parse_comp(comp1_csv)},
                  {"comp2", parse_comp(comp2_csv)},
                  {"form", form},
                  {"starts", starts},
                  {"seed", seed}};
      CStr out;
      check(bz_region_inner(ch.h, params.dump().c_str(), &out.s), "region inner");
      json r = out.parse();
      r["provenance"] = form == "r1" ? "inner_corner_1" : "inner_corner_2";
      print_num("r1", r["r1"].get<double>());
      print_num("r2", r["r2"].get<double>());
      std::printf("  flag: %s\n", r["flag"].get<std::string>().c_str());
      emit.write(r);
      return 0;
    }

    if (*region_erasure) {
      emit.subcommand = "region erasure-exact";
      emit.params = {{"deltas", deltas}};
      CStr out;
      check(bz_region_erasure_exact(deltas.c_str(), &out.s), "region erasure-exact");
      json r = json{{"provenance", "erasure_exact"}, {"rows", out.parse()}};
      for (const json& row : r["rows"])
        std::printf("  delta %.12g: corner1 (%.12g, %.12g)  corner2 (%.12g, %.12g)\n",
                    row["delta"].get<double>(), row["corner1_r1"].get<double>(),
                    row["corner1_r2"].get<double>(), row["corner2_r1"].get<double>(),
                    row["corner2_r2"].get<double>());
      emit.write(r);
      return 0;
    }

    if (*region_polytope) {
      emit.subcommand = "region polytope";
      emit.inputs["channel"] = channel_spec;
      Channel ch;
      load_channel(channel_spec, ch);
      CStr out;
      check(bz_region_polytope(ch.h, &out.s), "region polytope");
      json r = out.parse();
      std::printf("  %zu vertices\n", r.size());
      if (!emit_avmac.empty()) {
        CStr av;
        check(bz_polytope_avmac(ch.h, &av.s), "induced AV-MAC");
        std::ofstream f(emit_avmac, std::ios::binary);
        if (!f) fail(kExitError, "cannot write " + emit_avmac);
        f << av.s << "\n";
        std::printf("  induced AV-MAC written to %s\n", emit_avmac.c_str());
      }
      emit.write(r);
      return 0;
    }

    if (*region_jahn) {
      emit.subcommand = "region jahn";
      emit.inputs["channel"] = channel_spec;
      emit.params = {{"input_grid", input_grid}, {"state_grid", state_grid}};
      Channel ch;
      load_channel(channel_spec, ch);
      CStr out;
      check(bz_region_jahn(ch.h, input_grid, state_grid, &out.s), "region jahn");
      json r = json{{"provenance", "jahn"}, {"rows", out.parse()}};
      std::printf("  %zu grid points\n", r["rows"].size());
      emit.write(r);
      return 0;
    }

    if (*reproduce) {
      emit.subcommand = "examples reproduce";
      emit.params = {{"which", which}, {"n", n}};
      json params{{"n", n}};
      CStr out;
      check(bz_examples_reproduce(which.c_str(), params.dump().c_str(), &out.s), "reproduce");
      json r = out.parse();
      if (which == "erasure-2n") {
        std::printf("%.12g\n", r["no_zero_event_probability"].get<double>());
      } else if (which == "spoof-uniform") {
        print_num("max_pairwise_gap", r["max_pairwise_gap"].get<double>());
        print_num("max_uniform_deviation", r["max_uniform_deviation"].get<double>());
      } else if (which == "converse-112") {
        print_num("lhs", r["converse"]["lhs"].get<double>());
        print_num("rhs", r["converse"]["rhs"].get<double>());
        print_num("pe_lower", r["converse"]["pe_lower"].get<double>());
        print_num("exact p_e", r["exact"]["p_e"].get<double>());
      } else {
        std::printf("%s\n", r.dump(2).c_str());
      }
      emit.write(r);
      return 0;
    }

    fail(kExitUsage, "no subcommand selected");
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
}
