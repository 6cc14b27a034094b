#include "byzmac/json_io.hpp"

namespace byzmac {

namespace {

double get_num(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw Error(Errc::ParseError, std::string("missing numeric field '") + key + "'");
  return j[key].get<double>();
}

int get_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw Error(Errc::ParseError, std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

const Json& get_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw Error(Errc::ParseError, std::string("missing array field '") + key + "'");
  return j[key];
}

}  // namespace

Json mac_to_json(const Mac& ch) {
  Json w = Json::array();
  for (int x = 0; x < ch.nx; ++x) {
    Json row_x = Json::array();
    for (int y = 0; y < ch.ny; ++y) {
      Json row_y = Json::array();
      for (int z = 0; z < ch.nz; ++z) row_y.push_back(ch(x, y, z));
      row_x.push_back(std::move(row_y));
    }
    w.push_back(std::move(row_x));
  }
  return Json{{"label", ch.label}, {"nx", ch.nx}, {"ny", ch.ny}, {"nz", ch.nz}, {"w", std::move(w)}};
}

Mac mac_from_json(const Json& j) {
  int nx = get_int(j, "nx"), ny = get_int(j, "ny"), nz = get_int(j, "nz");
  const Json& w = get_array(j, "w");
  std::vector<double> table;
  table.reserve(static_cast<size_t>(nx) * ny * nz);
  if (static_cast<int>(w.size()) != nx) throw Error(Errc::ParseError, "w has wrong x dimension");
  for (const Json& row_x : w) {
    if (static_cast<int>(row_x.size()) != ny) throw Error(Errc::ParseError, "w has wrong y dimension");
    for (const Json& row_y : row_x) {
      if (static_cast<int>(row_y.size()) != nz) throw Error(Errc::ParseError, "w has wrong z dimension");
      for (const Json& v : row_y) table.push_back(v.get<double>());
    }
  }
  return validate_mac(nx, ny, nz, table, j.value("label", std::string()));
}

bool json_is_avmac(const Json& j) { return j.contains("ns"); }

Json avmac_to_json(const AvMac& ch) {
  Json w = Json::array();
  for (int x = 0; x < ch.nx; ++x) {
    Json jx = Json::array();
    for (int y = 0; y < ch.ny; ++y) {
      Json jy = Json::array();
      for (int s = 0; s < ch.ns; ++s) {
        Json js = Json::array();
        for (int z = 0; z < ch.nz; ++z) js.push_back(ch(x, y, s, z));
        jy.push_back(std::move(js));
      }
      jx.push_back(std::move(jy));
    }
    w.push_back(std::move(jx));
  }
  return Json{{"label", ch.label}, {"nx", ch.nx}, {"ny", ch.ny}, {"ns", ch.ns},
              {"nz", ch.nz},       {"w", std::move(w)}};
}

AvMac avmac_from_json(const Json& j) {
  AvMac ch;
  ch.nx = get_int(j, "nx");
  ch.ny = get_int(j, "ny");
  ch.ns = get_int(j, "ns");
  ch.nz = get_int(j, "nz");
  ch.label = j.value("label", std::string());
  const Json& w = get_array(j, "w");
  ch.w.reserve(static_cast<size_t>(ch.nx) * ch.ny * ch.ns * ch.nz);
  if (static_cast<int>(w.size()) != ch.nx) throw Error(Errc::ParseError, "w has wrong x dimension");
  for (const Json& jx : w)
    for (const Json& jy : jx)
      for (const Json& js : jy)
        for (const Json& v : js) ch.w.push_back(v.get<double>());
  if (ch.w.size() != static_cast<size_t>(ch.nx) * ch.ny * ch.ns * ch.nz)
    throw Error(Errc::ParseError, "w has wrong total size");
  validate_avmac(ch);
  return ch;
}

Json kernel_to_json(const Kernel& k) {
  Json rows = Json::array();
  for (int r = 0; r < k.input_rows(); ++r) {
    Json row = Json::array();
    for (int o = 0; o < k.output_size; ++o) row.push_back(k(r, o));
    rows.push_back(std::move(row));
  }
  return Json{{"input_shape", k.input_shape}, {"output_size", k.output_size}, {"k", std::move(rows)}};
}

Kernel kernel_from_json(const Json& j) {
  Kernel k;
  for (const Json& v : get_array(j, "input_shape")) k.input_shape.push_back(v.get<int>());
  k.output_size = get_int(j, "output_size");
  for (const Json& row : get_array(j, "k"))
    for (const Json& v : row) k.k.push_back(v.get<double>());
  validate_kernel(k, 1e-9);
  return k;
}

Word word_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(Errc::ParseError, std::string(what) + " must be an array");
  Word w;
  for (const Json& v : j) w.push_back(v.get<int>());
  return w;
}

Json codebook_to_json(const Codebook& cb) {
  return Json{{"n", cb.n},           {"N1", cb.N1},          {"N2", cb.N2},
              {"words1", cb.words1}, {"words2", cb.words2},  {"comp1", cb.comp1.probs},
              {"comp2", cb.comp2.probs}};
}

Codebook codebook_from_json(const Json& j) {
  Codebook cb;
  cb.n = get_int(j, "n");
  cb.N1 = get_int(j, "N1");
  cb.N2 = get_int(j, "N2");
  for (const Json& w : get_array(j, "words1")) cb.words1.push_back(word_from_json(w, "codeword"));
  for (const Json& w : get_array(j, "words2")) cb.words2.push_back(word_from_json(w, "codeword"));
  for (const Json& v : get_array(j, "comp1")) cb.comp1.probs.push_back(v.get<double>());
  for (const Json& v : get_array(j, "comp2")) cb.comp2.probs.push_back(v.get<double>());
  cb.validate();
  return cb;
}

Json randomized_code_to_json(const RandomizedCode& rc) {
  return Json{{"n", rc.n},
              {"N1", rc.N1},
              {"N2", rc.N2},
              {"encoders1", rc.encoders1},
              {"encoders2", rc.encoders2},
              {"weights1", rc.weights1.probs},
              {"weights2", rc.weights2.probs}};
}

RandomizedCode randomized_code_from_json(const Json& j) {
  RandomizedCode rc;
  rc.n = get_int(j, "n");
  rc.N1 = get_int(j, "N1");
  rc.N2 = get_int(j, "N2");
  for (const Json& enc : get_array(j, "encoders1")) {
    std::vector<Word> words;
    for (const Json& w : enc) words.push_back(word_from_json(w, "encoder word"));
    rc.encoders1.push_back(std::move(words));
  }
  for (const Json& enc : get_array(j, "encoders2")) {
    std::vector<Word> words;
    for (const Json& w : enc) words.push_back(word_from_json(w, "encoder word"));
    rc.encoders2.push_back(std::move(words));
  }
  for (const Json& v : get_array(j, "weights1")) rc.weights1.probs.push_back(v.get<double>());
  for (const Json& v : get_array(j, "weights2")) rc.weights2.probs.push_back(v.get<double>());
  return rc;
}

Json outcome_to_json(const FeasibilityOutcome& out) {
  Json j{{"verdict", verdict_name(out.verdict)},
         {"violation", out.violation},
         {"margin", out.margin},
         {"iterations", out.iterations}};
  Json certs = Json::array();
  for (const Kernel& k : out.certificate) certs.push_back(kernel_to_json(k));
  j["certificate"] = std::move(certs);
  return j;
}

Json classification_to_json(const ClassificationReport& r) {
  return Json{{"spoofable_1", outcome_to_json(r.spoofable_1)},
              {"spoofable_2", outcome_to_json(r.spoofable_2)},
              {"symmetrizable_1", outcome_to_json(r.symmetrizable_1)},
              {"symmetrizable_2", outcome_to_json(r.symmetrizable_2)},
              {"overwritable_1", outcome_to_json(r.overwritable_1)},
              {"overwritable_2", outcome_to_json(r.overwritable_2)},
              {"hierarchy_consistent", r.hierarchy_consistent},
              {"notes", r.notes}};
}

Json decoder_output_to_json(const DecoderOutput& o) {
  Json j;
  switch (o.kind) {
    case DecisionKind::Pair:
      j["kind"] = "pair";
      j["m1"] = o.m1;
      j["m2"] = o.m2;
      break;
    case DecisionKind::Blame1: j["kind"] = "blame1"; break;
    case DecisionKind::Blame2: j["kind"] = "blame2"; break;
  }
  j["fallback"] = o.fallback;
  j["fallback_ambiguous"] = o.fallback_ambiguous;
  j["d1"] = o.d1;
  j["d2"] = o.d2;
  if (!o.chain1.empty()) {
    j["chain1"] = o.chain1;
    j["chain2"] = o.chain2;
  }
  return j;
}

Json error_report_to_json(const ErrorReport& r) {
  Json j{{"p_hon", r.p_hon}, {"p_mal1", r.p_mal1}, {"p_mal2", r.p_mal2},
         {"p_e", r.p_e},     {"mode", r.mode}};
  if (r.mode == "exact") {
    j["mal1_is_exact_max"] = r.mal1_is_exact_max;
    j["mal2_is_exact_max"] = r.mal2_is_exact_max;
    j["worst_attack1"] = r.worst_attack1;
    j["worst_attack2"] = r.worst_attack2;
  } else {
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["scenario"] = r.scenario;
    j["half_width_hon"] = r.half_width_hon;
    j["half_width_mal1"] = r.half_width_mal1;
    j["half_width_mal2"] = r.half_width_mal2;
  }
  return j;
}

ErrorReport error_report_from_json(const Json& j) {
  ErrorReport r;
  r.p_hon = get_num(j, "p_hon");
  r.p_mal1 = get_num(j, "p_mal1");
  r.p_mal2 = get_num(j, "p_mal2");
  r.mode = j.value("mode", std::string("exact"));
  if (r.mode == "exact") {
    r.mal1_is_exact_max = j.value("mal1_is_exact_max", true);
    r.mal2_is_exact_max = j.value("mal2_is_exact_max", true);
    if (j.contains("worst_attack1")) r.worst_attack1 = word_from_json(j["worst_attack1"]);
    if (j.contains("worst_attack2")) r.worst_attack2 = word_from_json(j["worst_attack2"]);
  } else {
    r.trials = j.value("trials", uint64_t(0));
    r.seed = j.value("seed", uint64_t(0));
    r.scenario = j.value("scenario", std::string());
    r.half_width_hon = j.value("half_width_hon", 0.0);
    r.half_width_mal1 = j.value("half_width_mal1", 0.0);
    r.half_width_mal2 = j.value("half_width_mal2", 0.0);
  }
  r.finalize();
  return r;
}

Json audit_records_to_json(const std::vector<AuditRecord>& records) {
  Json arr = Json::array();
  for (const AuditRecord& r : records) {
    arr.push_back(Json{{"property", r.property},
                       {"verdict", r.vacuous ? "vacuous" : (r.pass ? "pass" : "fail")},
                       {"worst_ratio", r.worst_ratio},
                       {"worst_lhs", r.worst_lhs},
                       {"worst_threshold", r.worst_threshold},
                       {"worst_instance", r.worst_instance}});
  }
  return arr;
}

Json converse_report_to_json(const ConverseBoundReport& r) {
  return Json{{"mal2_scenario_a", r.mal2_scenario_a},
              {"mal2_scenario_b", r.mal2_scenario_b},
              {"mal1_scenario", r.mal1_scenario},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"pe_lower", r.pe_lower},
              {"holds", r.holds}};
}

Json polytope_to_json(const std::vector<PolytopeVertex>& vertices) {
  Json arr = Json::array();
  for (const PolytopeVertex& v : vertices)
    arr.push_back(Json{{"qx", kernel_to_json(v.qx)},
                       {"qy", kernel_to_json(v.qy)},
                       {"induced", mac_to_json(v.induced)}});
  return arr;
}

Json jahn_grid_to_json(const std::vector<JahnGridPoint>& grid) {
  Json arr = Json::array();
  for (const JahnGridPoint& g : grid)
    arr.push_back(Json{{"px", g.px}, {"py", g.py}, {"r1", g.r1}, {"r2", g.r2}, {"rsum", g.rsum}});
  return arr;
}

}  // namespace byzmac
