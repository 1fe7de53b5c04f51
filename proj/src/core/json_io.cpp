#include "json_io.hpp"

#include <fstream>
#include <sstream>

namespace asymwalk {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::invalid_argument, what); }

const Json& require(const Json& j, const char* key, const char* where) {
  if (!j.is_object()) bad(std::string(where) + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string(where) + ": missing field '" + key + "'");
  return *it;
}

int read_rank(const Json& j, const char* where) {
  const Json& r = require(j, "rank", where);
  if (!r.is_number_integer() || r.get<int>() < 1 || r.get<int>() > 26) {
    bad(std::string(where) + ": rank must be an integer in 1..26");
  }
  return r.get<int>();
}

std::string read_string(const Json& j, const char* where) {
  if (!j.is_string()) bad(std::string(where) + ": expected a string");
  return j.get<std::string>();
}

double read_number(const Json& j, const char* where) {
  if (!j.is_number()) bad(std::string(where) + ": expected a number");
  return j.get<double>();
}

std::vector<std::string> read_strings(const Json& j, const char* where) {
  if (!j.is_array()) bad(std::string(where) + ": expected an array of words");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(read_string(e, where));
  return out;
}

}  // namespace

void reject_unknown_keys(const Json& j, std::span<const char* const> allowed, const char* where) {
  if (!j.is_object()) bad(std::string(where) + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) bad(std::string(where) + ": unknown field '" + key + "'");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad("'" + path + "' is not valid JSON: " + e.what());
  }
}

// ---- weights ------------------------------------------------------------------

WeightScheme weights_from_json(const Json& j) {
  reject_unknown_keys(j, {"rank", "weights"}, "weights");
  const int rank = read_rank(j, "weights");
  const Json& w = require(j, "weights", "weights");
  if (!w.is_object()) bad("weights.weights: expected an object keyed by letter");
  std::vector<Rational> values(static_cast<std::size_t>(2 * rank));
  std::vector<bool> seen(values.size(), false);
  for (const auto& [key, v] : w.items()) {
    if (key.size() != 1) bad("weights: '" + key + "' is not a single letter");
    Letter l = 0;
    try {
      l = char_letter(key[0]);
    } catch (const Error&) {
      bad("weights: '" + key + "' is not a letter");
    }
    if (std::abs(l) > rank) bad("weights: letter '" + key + "' exceeds the rank");
    const std::size_t slot = l > 0 ? static_cast<std::size_t>(2 * (l - 1)) : static_cast<std::size_t>(2 * (-l - 1) + 1);
    if (v.is_array()) {
      if (v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
        bad("weights: rational for '" + key + "' must be [p, q] with integers");
      }
      values[slot] = Rational{v[0].get<std::int64_t>(), v[1].get<std::int64_t>()};
      if (values[slot].den <= 0) bad("weights: denominator for '" + key + "' must be positive");
    } else {
      values[slot] = rational_approximation(read_number(v, "weights"));
      if (!(v.get<double>() > 0)) bad("weights: weight for '" + key + "' must be positive");
    }
    seen[slot] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      const Letter l = i % 2 == 0 ? static_cast<Letter>(i / 2 + 1) : -static_cast<Letter>(i / 2 + 1);
      bad(std::string("weights: missing weight for '") + letter_char(l) + "'");
    }
  }
  return WeightScheme::from_rationals(rank, values);
}

Json weights_to_json(const WeightScheme& ws) {
  Json w = Json::object();
  for (int g = 1; g <= ws.rank(); ++g) {
    for (Letter l : {g, -g}) {
      const Rational r = ws.rational(l);
      w[std::string(1, letter_char(l))] = r.den == 1 ? Json(r.num) : Json::array({r.num, r.den});
    }
  }
  return Json{{"rank", ws.rank()}, {"weights", w}};
}

// ---- measures -----------------------------------------------------------------

MeasureSpec measure_from_json(const Json& j) {
  reject_unknown_keys(j, {"rank", "support", "probabilities"}, "measure");
  const int rank = read_rank(j, "measure");
  std::vector<Word> support;
  for (const auto& s : read_strings(require(j, "support", "measure"), "measure.support")) {
    support.push_back(Word::parse(rank, s));
  }
  std::vector<double> probs;
  if (const auto it = j.find("probabilities"); it != j.end()) {
    if (!it->is_array()) bad("measure.probabilities: expected an array");
    for (const auto& p : *it) probs.push_back(read_number(p, "measure.probabilities"));
  }
  return MeasureSpec::create(rank, std::move(support), std::move(probs));
}

Json measure_to_json(const MeasureSpec& mu) {
  Json support = Json::array();
  for (const auto& w : mu.support()) support.push_back(w.str());
  return Json{{"rank", mu.rank()}, {"support", support}, {"probabilities", mu.probabilities()}};
}

// ---- Schottky sets --------------------------------------------------------------

Json schottky_to_json(const SchottkySet& S) {
  Json seqs = Json::array();
  for (const auto& t : S.sequences) {
    Json steps = Json::array();
    for (const auto& w : t) steps.push_back(w.str());
    seqs.push_back(steps);
  }
  const CalibrationLog& l = S.log;
  return Json{{"rank", S.rank},
              {"K0", S.K0},
              {"M0", S.M0},
              {"sequences", seqs},
              {"constants", {{"D0", S.D0}, {"D1", S.D1}, {"E0", S.E0}}},
              {"calibrated", S.calibrated},
              {"calibration",
               {{"seed", l.seed},
                {"sample_budget", l.sample_budget},
                {"d0_samples", l.d0_samples},
                {"d1_samples", l.d1_samples},
                {"e0_samples", l.e0_samples},
                {"dichotomy_samples", l.behrstock_samples},
                {"d0_measured", l.d0_measured},
                {"d1_measured", l.d1_measured},
                {"e0_measured", l.e0_measured},
                {"grid", l.grid},
                {"test_points", l.test_points},
                {"test_ball_radius", l.test_ball_radius},
                {"candidates_examined", l.candidates_examined}}}};
}

SchottkySet schottky_from_json(const Json& j) {
  reject_unknown_keys(j, {"rank", "K0", "M0", "sequences", "constants", "calibrated", "calibration"}, "schottky");
  SchottkySet S;
  S.rank = read_rank(j, "schottky");
  S.K0 = read_number(require(j, "K0", "schottky"), "schottky.K0");
  const Json& seqs = require(j, "sequences", "schottky");
  if (!seqs.is_array() || seqs.empty()) bad("schottky.sequences: expected a non-empty array");
  for (const auto& t : seqs) {
    StepTuple steps;
    for (const auto& s : read_strings(t, "schottky.sequences")) steps.push_back(Word::parse(S.rank, s));
    S.sequences.push_back(std::move(steps));
  }
  S.M0 = S.sequences.front().size();
  for (const auto& t : S.sequences) {
    if (t.size() != S.M0) bad("schottky.sequences: all sequences must have the same length");
  }
  if (const auto it = j.find("M0"); it != j.end() && it->get<std::size_t>() != S.M0) {
    bad("schottky.M0 does not match the sequence length");
  }
  if (const auto it = j.find("constants"); it != j.end()) {
    reject_unknown_keys(*it, {"D0", "D1", "E0"}, "schottky.constants");
    S.D0 = read_number(require(*it, "D0", "schottky.constants"), "D0");
    S.D1 = read_number(require(*it, "D1", "schottky.constants"), "D1");
    S.E0 = read_number(require(*it, "E0", "schottky.constants"), "E0");
  }
  if (const auto it = j.find("calibrated"); it != j.end()) {
    if (!it->is_boolean()) bad("schottky.calibrated: expected a boolean");
    S.calibrated = it->get<bool>();
  }
  if (S.calibrated && !(S.D0 > 0 && S.D0 <= S.D1 && S.D1 <= S.E0)) {
    bad("schottky.constants: calibrated sets need 0 < D0 <= D1 <= E0");
  }
  if (const auto it = j.find("calibration"); it != j.end()) {
    const Json& c = *it;
    CalibrationLog& l = S.log;
    auto get = [&](const char* key, auto& field) {
      if (const auto f = c.find(key); f != c.end()) field = f->get<std::remove_reference_t<decltype(field)>>();
    };
    get("seed", l.seed);
    get("sample_budget", l.sample_budget);
    get("d0_samples", l.d0_samples);
    get("d1_samples", l.d1_samples);
    get("e0_samples", l.e0_samples);
    get("dichotomy_samples", l.behrstock_samples);
    get("d0_measured", l.d0_measured);
    get("d1_measured", l.d1_measured);
    get("e0_measured", l.e0_measured);
    get("grid", l.grid);
    get("test_points", l.test_points);
    get("test_ball_radius", l.test_ball_radius);
    get("candidates_examined", l.candidates_examined);
  }
  return S;
}

// ---- automorphisms ------------------------------------------------------------

std::vector<Automorphism> automorphisms_from_json(int rank, const Json& j) {
  if (!j.is_array() || j.empty()) bad("generators: expected a non-empty array");
  std::vector<Automorphism> out;
  for (const auto& e : j) {
    reject_unknown_keys(e, {"name", "images", "inverse_images"}, "generator");
    std::string name;
    if (const auto it = e.find("name"); it != e.end()) name = read_string(*it, "generator.name");
    out.push_back(Automorphism::parse(rank, read_strings(require(e, "images", "generator"), "generator.images"),
                                      read_strings(require(e, "inverse_images", "generator"),
                                                   "generator.inverse_images"),
                                      name));
  }
  return out;
}

Json automorphisms_to_json(const std::vector<Automorphism>& list) {
  Json out = Json::array();
  for (const auto& a : list) {
    Json images = Json::array(), inverse = Json::array();
    for (const auto& w : a.images()) images.push_back(w.str());
    for (const auto& w : a.inverse_images()) inverse.push_back(w.str());
    out.push_back({{"name", a.name()}, {"images", images}, {"inverse_images", inverse}});
  }
  return out;
}

}  // namespace asymwalk
