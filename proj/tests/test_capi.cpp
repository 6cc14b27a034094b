#include <string>

#include "byzmac.h"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Str {
  char* s = nullptr;
  ~Str() { bz_string_free(s); }
  json parse() const { return json::parse(s); }
};

}  // namespace

TEST_CASE("builtin channels and round trips") {
  bz_channel* ch = nullptr;
  REQUIRE(bz_channel_builtin("xor", &ch) == BZ_OK);
  CHECK(bz_channel_is_avmac(ch) == 0);
  Str js;
  REQUIRE(bz_channel_to_json(ch, &js.s) == BZ_OK);
  json j = js.parse();
  CHECK(j["nx"] == 2);
  CHECK(j["w"][1][1][0] == 1.0);

  bz_channel* back = nullptr;
  REQUIRE(bz_channel_from_json(js.s, &back) == BZ_OK);
  Str js2;
  REQUIRE(bz_channel_to_json(back, &js2.s) == BZ_OK);
  CHECK(std::string(js.s) == js2.s);
  bz_channel_free(ch);
  bz_channel_free(back);

  bz_channel* bad = nullptr;
  CHECK(bz_channel_builtin("nope", &bad) == BZ_ERR_INVALID_ARGUMENT);
  CHECK(std::string(bz_last_error()).find("nope") != std::string::npos);
  CHECK(bz_channel_from_json("{not json", &bad) == BZ_ERR_PARSE);
}

TEST_CASE("classification through the C surface") {
  bz_channel* ch = nullptr;
  REQUIRE(bz_channel_builtin("erasure", &ch) == BZ_OK);
  Str report;
  REQUIRE(bz_classify(ch, 1e-9, &report.s) == BZ_OK);
  json r = report.parse();
  CHECK(r["symmetrizable_1"]["verdict"] == "FEASIBLE");
  CHECK(r["spoofable_1"]["verdict"] == "INFEASIBLE");
  CHECK(r["hierarchy_consistent"] == true);

  Str outcome;
  REQUIRE(bz_check_property(ch, "symmetrizable_2", 1e-9, &outcome.s) == BZ_OK);
  CHECK(outcome.parse()["verdict"] == "FEASIBLE");
  Str bad;
  CHECK(bz_check_property(ch, "wat", 1e-9, &bad.s) == BZ_ERR_PARSE);
  bz_channel_free(ch);
}

TEST_CASE("codebook lifecycle, decode and simulation") {
  bz_channel* ch = nullptr;
  REQUIRE(bz_channel_builtin("erasure", &ch) == BZ_OK);
  json gen{{"n", 4}, {"N1", 2}, {"N2", 2}, {"comp1", {0.5, 0.5}}, {"comp2", {0.5, 0.5}}, {"seed", 5}};
  bz_codebook* cb = nullptr;
  REQUIRE(bz_codebook_generate(gen.dump().c_str(), &cb) == BZ_OK);

  Str cb_json;
  REQUIRE(bz_codebook_to_json(cb, &cb_json.s) == BZ_OK);
  bz_codebook* cb2 = nullptr;
  REQUIRE(bz_codebook_from_json(cb_json.s, &cb2) == BZ_OK);
  Str cb_json2;
  REQUIRE(bz_codebook_to_json(cb2, &cb_json2.s) == BZ_OK);
  CHECK(std::string(cb_json.s) == cb_json2.s);

  json spec{{"type", "feasibility"}, {"eta", 0.25}};
  Str decoded;
  REQUIRE(bz_decode(ch, cb, "0,1,2,1", spec.dump().c_str(), &decoded.s) == BZ_OK);
  json d = decoded.parse();
  CHECK(d.contains("kind"));
  CHECK(d.contains("d1"));

  Str exact;
  REQUIRE(bz_simulate_exact(ch, cb, spec.dump().c_str(), &exact.s) == BZ_OK);
  json e = exact.parse();
  CHECK(e["mode"] == "exact");
  CHECK(e["p_hon"].get<double>() <= e["p_mal1"].get<double>() + e["p_mal2"].get<double>() + 1e-12);

  Str mc;
  REQUIRE(bz_simulate_monte_carlo(ch, cb, spec.dump().c_str(), nullptr, 500, 1, 2, &mc.s) == BZ_OK);
  CHECK(mc.parse()["mode"] == "monte_carlo");

  Str eta;
  REQUIRE(bz_eta_search(ch, cb, "{}", &eta.s) == BZ_OK);
  CHECK(eta.parse()["eta"].get<double>() <= 0.5);

  Str audit;
  REQUIRE(bz_codebook_audit(cb, 0.1, &audit.s) == BZ_OK);
  CHECK(audit.parse().size() == 10);

  bz_codebook_free(cb);
  bz_codebook_free(cb2);
  bz_channel_free(ch);
}

TEST_CASE("attack demo and reproduction payloads") {
  bz_channel* ch = nullptr;
  REQUIRE(bz_channel_builtin("xor", &ch) == BZ_OK);
  json gen{{"n", 4}, {"N1", 2}, {"N2", 2}, {"comp1", {0.5, 0.5}}, {"comp2", {0.5, 0.5}}, {"seed", 1}};
  bz_codebook* cb = nullptr;
  REQUIRE(bz_codebook_generate(gen.dump().c_str(), &cb) == BZ_OK);

  Str demo;
  REQUIRE(bz_attack_demo(ch, cb, "{\"user\":1}", &demo.s) == BZ_OK);
  json d = demo.parse();
  CHECK(d["spoofable"]["verdict"] == "FEASIBLE");
  CHECK(d["converse"]["holds"] == true);

  Str rep;
  REQUIRE(bz_examples_reproduce("erasure-2n", "{\"n\":8}", &rep.s) == BZ_OK);
  CHECK(rep.parse()["no_zero_event_probability"].get<double>() == 0.25);

  Str conv;
  REQUIRE(bz_examples_reproduce("converse-112", "{\"n\":4}", &conv.s) == BZ_OK);
  CHECK(conv.parse()["converse"]["holds"] == true);

  Str bad;
  CHECK(bz_examples_reproduce("unknown", nullptr, &bad.s) == BZ_ERR_PARSE);

  bz_codebook_free(cb);
  bz_channel_free(ch);
}

TEST_CASE("regions through the C surface") {
  bz_channel* ch = nullptr;
  REQUIRE(bz_channel_builtin("xor", &ch) == BZ_OK);

  Str poly;
  REQUIRE(bz_region_polytope(ch, &poly.s) == BZ_OK);
  CHECK(poly.parse().size() == 2);

  Str avj;
  REQUIRE(bz_polytope_avmac(ch, &avj.s) == BZ_OK);
  bz_channel* av = nullptr;
  REQUIRE(bz_channel_from_json(avj.s, &av) == BZ_OK);
  CHECK(bz_channel_is_avmac(av) == 1);

  Str jahn;
  REQUIRE(bz_region_jahn(av, 2, 2, &jahn.s) == BZ_OK);
  for (const json& g : jahn.parse()) {
    CHECK(g["r1"].get<double>() <= 1e-12);
    CHECK(g["rsum"].get<double>() <= 1e-12);
  }

  // jahn on a plain MAC handle is a usage error
  Str err;
  CHECK(bz_region_jahn(ch, 2, 2, &err.s) == BZ_ERR_INVALID_ARGUMENT);

  Str table;
  REQUIRE(bz_region_erasure_exact("0.1,0.05", &table.s) == BZ_OK);
  CHECK(table.parse().size() == 2);

  bz_channel_free(av);
  bz_channel_free(ch);
}
