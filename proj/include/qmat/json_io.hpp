#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "json.hpp"

#include "qmat/derivations.hpp"
#include "qmat/error.hpp"
#include "qmat/qmatrix.hpp"
#include "qmat/rational_function.hpp"
#include "qmat/torus.hpp"
#include "qmat/tower.hpp"

namespace qmat::io {

using json = nlohmann::ordered_json;

[[noreturn]] inline void parse_error(const std::string& what) { fail(ErrorKind::ParseError, what); }

// Integers that fit in 53 bits are written as JSON numbers, larger ones as decimal strings.
inline json int_to_json(const BigInt& v) {
  static const BigInt limit = BigInt(1) << 53;
  if (v < limit && v > -limit) return static_cast<long long>(v);
  return v.str();
}

inline BigInt int_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_number_unsigned()) return BigInt(j.get<unsigned long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t k = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (k == s.size()) parse_error("empty integer string");
    for (std::size_t i = k; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') parse_error("not an integer: \"" + s + "\"");
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  }
  parse_error("expected an integer, got " + j.dump());
}

inline json poly_to_json(const IntPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(int_to_json(c));
  if (a.empty()) a.push_back(0);
  return a;
}

inline IntPoly poly_from_json(const json& j) {
  if (!j.is_array()) parse_error("polynomial must be an array of coefficients");
  std::vector<BigInt> c;
  for (const auto& x : j) c.push_back(int_from_json(x));
  return IntPoly(std::move(c));
}

inline json rf_to_json(const RationalFunction& r) {
  return json{{"num", poly_to_json(r.numerator())}, {"den", poly_to_json(r.denominator())}};
}

/// Accepts {"num": [...], "den": [...]} (den defaults to [1]) or a bare integer.
inline RationalFunction rf_from_json(const json& j) {
  if (j.is_number_integer() || j.is_string()) return RationalFunction(int_from_json(j));
  if (!j.is_object() || !j.contains("num")) parse_error("rational function must be {\"num\": [...], \"den\": [...]}");
  const IntPoly num = poly_from_json(j.at("num"));
  const IntPoly den = j.contains("den") ? poly_from_json(j.at("den")) : IntPoly::one();
  if (den.is_zero()) parse_error("zero denominator");
  return RationalFunction::from_polys(num, den);
}

template <class Tag>
const char* alg_name() {
  if constexpr (std::is_same_v<Tag, MqTag>) return "Mq";
  else return "torus";
}

template <class Tag>
json element_to_json(const SparseElement<Tag>& x, int n) {
  json terms = json::array();
  for (const auto& [e, c] : x) {
    json exp = json::array();
    for (int s = 0; s < e.size(); ++s) {
      if (e[s] == 0) continue;
      const GeneratorIndex g = GeneratorIndex::from_slot(n, s);
      exp.push_back(json::array({g.row, g.col, e[s]}));
    }
    terms.push_back(json{{"exp", exp}, {"coeff", rf_to_json(c)}});
  }
  return json{{"alg", alg_name<Tag>()}, {"n", n}, {"terms", terms}};
}

inline json to_json(const MatrixElement& x, int n) { return element_to_json(x, n); }
inline json to_json(const TorusElement& x, int n) { return element_to_json(x, n); }

inline int n_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.at("n").is_number_integer()) parse_error("element needs an integer field \"n\"");
  const int n = j.at("n").get<int>();
  check_dimension(n);
  return n;
}

/// Elements share one term schema; Mq additionally requires nonnegative exponents.
template <class Tag>
SparseElement<Tag> element_from_json(const json& j, int expected_n = 0) {
  const int n = n_from_json(j);
  if (expected_n && n != expected_n)
    fail(ErrorKind::DimensionMismatch, "element over n=" + std::to_string(n) + ", expected n=" + std::to_string(expected_n));
  if (!j.contains("terms") || !j.at("terms").is_array()) parse_error("element needs an array field \"terms\"");
  SparseElement<Tag> x(n);
  for (const auto& t : j.at("terms")) {
    if (!t.is_object() || !t.contains("exp")) parse_error("term needs \"exp\"");
    ExponentVector e(n);
    const json& exp = t.at("exp");
    if (!exp.is_array()) parse_error("\"exp\" must be an array of [i, alpha, e] triples");
    for (const auto& triple : exp) {
      if (!triple.is_array() || triple.size() != 3) parse_error("exponent entry must be [i, alpha, e]");
      for (const auto& v : triple)
        if (!v.is_number_integer()) parse_error("exponent entries must be integers");
      const GeneratorIndex g{triple[0].get<int>(), triple[1].get<int>()};
      if (g.row < 1 || g.row > n || g.col < 1 || g.col > n) parse_error("generator " + g.to_string() + " outside [1," + std::to_string(n) + "]^2");
      const long long p = triple[2].get<long long>();
      if (p > std::numeric_limits<std::int32_t>::max() || p < std::numeric_limits<std::int32_t>::min()) parse_error("exponent out of range");
      e[g.slot(n)] = checked_add(e[g.slot(n)], static_cast<std::int32_t>(p));
    }
    if constexpr (std::is_same_v<Tag, MqTag>)
      if (!e.is_nonnegative()) parse_error("negative exponent in an O_q(M_n) element");
    x.add_term(e, t.contains("coeff") ? rf_from_json(t.at("coeff")) : RationalFunction(1));
  }
  return x;
}

inline std::string alg_of(const json& j, const std::string& fallback) {
  if (j.is_object() && j.contains("alg")) {
    if (!j.at("alg").is_string()) parse_error("\"alg\" must be a string");
    return j.at("alg").get<std::string>();
  }
  return fallback;
}

// --- derivations ------------------------------------------------------------

/// A parsed derivation file: exactly one of the three payloads is set.
struct DerivationFile {
  std::string alg;
  int n = 2;
  MqDerivation mq;
  TorusDerivation torus;
  GlDerivation gl;
};

template <class Elem>
json derivation_to_json(const Derivation<Elem>& d, const std::string& alg) {
  json images = json::array();
  for (int s = 0; s < d.n * d.n; ++s) {
    const GeneratorIndex g = GeneratorIndex::from_slot(d.n, s);
    images.push_back(json{{"gen", json::array({g.row, g.col})}, {"value", to_json(d.images[static_cast<std::size_t>(s)], d.n)}});
  }
  return json{{"alg", alg}, {"n", d.n}, {"images", images}};
}

inline json to_json(const MqDerivation& d) { return derivation_to_json(d, "Mq"); }
inline json to_json(const TorusDerivation& d) { return derivation_to_json(d, "torus"); }
inline json to_json(const GlDerivation& d) { return derivation_to_json(d, "GLq"); }

/// Generators without an entry map to zero; repeated entries are an error.
inline DerivationFile derivation_from_json(const json& j) {
  if (!j.is_object()) parse_error("derivation must be a JSON object");
  DerivationFile f;
  f.alg = alg_of(j, "");
  if (f.alg != "Mq" && f.alg != "torus" && f.alg != "GLq") parse_error("derivation \"alg\" must be \"Mq\", \"torus\" or \"GLq\"");
  f.n = n_from_json(j);
  const int n = f.n;
  if (!j.contains("images") || !j.at("images").is_array()) parse_error("derivation needs an array field \"images\"");
  f.mq = MqDerivation::zero(n);
  f.torus = TorusDerivation::zero(n);
  f.gl.n = n;
  f.gl.images.assign(static_cast<std::size_t>(n * n), TorusElement(n));
  std::vector<bool> seen(static_cast<std::size_t>(n * n), false);
  for (const auto& im : j.at("images")) {
    if (!im.is_object() || !im.contains("gen") || !im.contains("value")) parse_error("image entries need \"gen\" and \"value\"");
    const json& gen = im.at("gen");
    if (!gen.is_array() || gen.size() != 2 || !gen[0].is_number_integer() || !gen[1].is_number_integer()) parse_error("\"gen\" must be [i, alpha]");
    const GeneratorIndex g{gen[0].get<int>(), gen[1].get<int>()};
    if (g.row < 1 || g.row > n || g.col < 1 || g.col > n) parse_error("generator " + g.to_string() + " outside [1," + std::to_string(n) + "]^2");
    const auto s = static_cast<std::size_t>(g.slot(n));
    if (seen[s]) parse_error("generator " + g.to_string() + " listed twice");
    seen[s] = true;
    const json& v = im.at("value");
    if (f.alg == "Mq")
      f.mq.images[s] = element_from_json<MqTag>(v, n);
    else if (f.alg == "torus")
      f.torus.images[s] = element_from_json<TorusTag>(v, n);
    else
      f.gl.images[s] = element_from_json<TorusTag>(v, n);
  }
  return f;
}

// --- coordinates, decompositions, reports -------------------------------------

inline json det_poly_to_json(const DetPoly& p) {
  json a = json::array();
  for (const auto& [k, c] : p) a.push_back(json{{"pow", k}, {"coeff", rf_to_json(c)}});
  return a;
}

inline DetPoly det_poly_from_json(const json& j) {
  if (!j.is_array()) parse_error("det_q polynomial must be an array");
  DetPoly p;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("pow") || !t.at("pow").is_number_integer()) parse_error("term needs integer \"pow\"");
    const RationalFunction c = t.contains("coeff") ? rf_from_json(t.at("coeff")) : RationalFunction(1);
    auto [it, ins] = p.try_emplace(t.at("pow").get<std::int64_t>(), c);
    if (!ins) it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
  return p;
}

inline json to_json(const HH1Coordinates& h, int n) {
  json mu = json::array();
  for (const auto& p : h.mu) mu.push_back(det_poly_to_json(p));
  return json{{"inner", to_json(h.inner, n)}, {"mu", mu}};
}

inline json to_json(const GlCoordinates& h, int n) {
  json mu = json::array();
  for (const auto& p : h.mu) mu.push_back(det_poly_to_json(p));
  return json{{"inner", to_json(h.inner, n)}, {"mu", mu}, {"cleared_power", h.shift}};
}

inline json to_json(const TorusDecomposition& d, int n) {
  json z = json::array();
  for (int s = 0; s < n * n; ++s) {
    const GeneratorIndex g = GeneratorIndex::from_slot(n, s);
    z.push_back(json{{"gen", json::array({g.row, g.col})}, {"value", to_json(d.z[static_cast<std::size_t>(s)], n)}});
  }
  return json{{"x", to_json(d.x, n)}, {"z", z}};
}

inline json to_json(const CheckList& l) {
  json a = json::array();
  for (const auto& e : l) {
    json o{{"name", e.name}, {"pass", e.pass}};
    if (!e.pass) o["witness"] = e.witness;
    a.push_back(o);
  }
  return a;
}

inline json delta_laurent_to_json(const DeltaLaurent& p) {
  json a = json::array();
  for (const auto& [k, c] : p) a.push_back(json{{"pows", k}, {"coeff", rf_to_json(c)}});
  return a;
}

/// Every Y^{(r)}_{i,alpha}, keyed by "(j,beta)" then "(i,alpha)".
inline json table_to_json(const Tower& tw) {
  const int n = tw.n();
  json steps = json::object();
  for (const auto& r : tw.steps()) {
    json gens = json::object();
    for (int s = 0; s < n * n; ++s) {
      const GeneratorIndex g = GeneratorIndex::from_slot(n, s);
      gens[g.to_string()] = to_json(tw.entry(r, g), n);
    }
    steps[r.to_string()] = gens;
  }
  return json{{"n", n}, {"steps", steps}};
}

}  // namespace qmat::io
