#pragma once

// Curve input files (JSON).
//
//   {
//     "name": "E2", "q": 5,
//     "a": [0, -1], "b": [0, 1],            little-endian in t
//     "mw": {
//       "generators": [{"x": [1], "y": [1]}],
//       "torsion": [{"x": {"num": [0], "den": [1]}, "y": [0]}],
//       "torsion_order": 1
//     },
//     "known_sha": 1,
//     "height_normalization": "A"            or "B"
//   }
//
// Over F_q with q = p^e, e > 1, a coefficient is either an integer code
// (base-p digits) or an array of e residues mod p.

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffbsd/bsd/report.hpp"
#include "ffbsd/curve/curve.hpp"
#include "ffbsd/error.hpp"

namespace ffbsd::io {

using nlohmann::json;

struct CurveSpecFile {
  std::string name;
  std::uint64_t q = 0;
  curve::Curve curve;
  bsd::MWInput mw;
  std::optional<Integer> known_sha;
  std::optional<bsd::Normalization> normalization;
};

namespace detail {

inline funcfield::FieldElement parse_coefficient(const funcfield::FieldSpec& F, const json& c) {
  if (c.is_number_integer()) {
    if (F.e() == 1) return F.from_int(c.get<std::int64_t>());
    const auto v = c.get<std::int64_t>();
    if (v < 0 || static_cast<std::uint64_t>(v) >= F.q()) throw InputError("coefficient code out of range: " + c.dump());
    return F.from_index(static_cast<std::uint64_t>(v));
  }
  if (c.is_array()) {
    std::vector<std::int64_t> digits;
    for (const auto& d : c) {
      if (!d.is_number_integer()) throw InputError("F_p-vector entries must be integers: " + c.dump());
      digits.push_back(d.get<std::int64_t>());
    }
    if (static_cast<int>(digits.size()) > F.e()) throw InputError("F_p-vector longer than e: " + c.dump());
    return F.from_coefficients(digits);
  }
  throw InputError("coefficient must be an integer or an F_p-vector: " + c.dump());
}

inline funcfield::Poly parse_poly(const funcfield::FieldSpec& F, const json& j, const std::string& what) {
  if (j.is_number_integer()) return funcfield::Poly::constant(F, parse_coefficient(F, j));
  if (!j.is_array()) throw InputError(what + " must be a coefficient array");
  std::vector<funcfield::FieldElement> c;
  for (const auto& x : j) c.push_back(parse_coefficient(F, x));
  return funcfield::Poly(F, std::move(c));
}

inline funcfield::RationalFunction parse_rational_function(const funcfield::FieldSpec& F, const json& j, const std::string& what) {
  if (j.is_object()) {
    if (!j.contains("num")) throw InputError(what + " needs a \"num\" field");
    auto num = parse_poly(F, j.at("num"), what + ".num");
    auto den = j.contains("den") ? parse_poly(F, j.at("den"), what + ".den") : funcfield::Poly::constant(F, F.one());
    if (den.is_zero()) throw InputError(what + " has a zero denominator");
    return {num, den};
  }
  return funcfield::RationalFunction(parse_poly(F, j, what));
}

inline curve::KPoint parse_point(const curve::Curve& E, const json& j, const std::string& what) {
  if (j.is_string() && (j.get<std::string>() == "O" || j.get<std::string>() == "identity")) return curve::KPoint::identity(E.field());
  if (!j.is_object() || !j.contains("x") || !j.contains("y")) throw InputError(what + " must be an object with x and y");
  auto P = curve::KPoint::affine(parse_rational_function(E.field(), j.at("x"), what + ".x"),
                                 parse_rational_function(E.field(), j.at("y"), what + ".y"));
  if (!E.contains(P)) throw InputError("point not on curve: " + what + " = " + P.to_string());
  return P;
}

inline Integer parse_positive_integer(const json& j, const std::string& what) {
  Integer v;
  if (j.is_number_unsigned() || j.is_number_integer()) {
    v = Integer(std::to_string(j.get<std::int64_t>()));
  } else if (j.is_string()) {
    if (v.set_str(j.get<std::string>(), 10) != 0) throw InputError(what + " is not an integer");
  } else {
    throw InputError(what + " must be a positive integer");
  }
  if (v <= 0) throw InputError(what + " must be positive");
  return v;
}

}  // namespace detail

inline CurveSpecFile parse_curve_spec(const json& j) {
  if (!j.is_object()) throw InputError("curve file must hold a JSON object");
  if (!j.contains("q") || !j.at("q").is_number_integer() || j.at("q").get<std::int64_t>() < 2)
    throw InputError("curve file needs an integer field q >= 2");
  if (!j.contains("a") || !j.contains("b")) throw InputError("curve file needs coefficient arrays a and b");
  const auto q = j.at("q").get<std::uint64_t>();
  auto F = funcfield::FieldSpec::from_order(q);
  auto a = detail::parse_poly(F, j.at("a"), "a");
  auto b = detail::parse_poly(F, j.at("b"), "b");
  CurveSpecFile s{j.value("name", std::string{}), q, curve::Curve(a, b), {}, std::nullopt, std::nullopt};
  if (j.contains("mw")) {
    const auto& mw = j.at("mw");
    if (!mw.is_object()) throw InputError("mw must be an object");
    if (mw.contains("generators")) {
      int i = 0;
      for (const auto& g : mw.at("generators")) s.mw.generators.push_back(detail::parse_point(s.curve, g, "generator[" + std::to_string(i++) + "]"));
    }
    if (mw.contains("torsion")) {
      int i = 0;
      for (const auto& g : mw.at("torsion")) s.mw.torsion_points.push_back(detail::parse_point(s.curve, g, "torsion[" + std::to_string(i++) + "]"));
    }
    if (mw.contains("torsion_order")) {
      s.mw.claimed_torsion_order = detail::parse_positive_integer(mw.at("torsion_order"), "mw.torsion_order").get_si();
    }
  }
  if (j.contains("known_sha")) s.known_sha = detail::parse_positive_integer(j.at("known_sha"), "known_sha");
  if (j.contains("height_normalization")) {
    const auto& h = j.at("height_normalization");
    std::string v = h.is_string() ? h.get<std::string>() : h.dump();
    if (v == "A" || v == "1") {
      s.normalization = bsd::Normalization::A;
    } else if (v == "B" || v == "2^r") {
      s.normalization = bsd::Normalization::B;
    } else {
      throw InputError("height_normalization must be \"A\" (factor 1) or \"B\" (factor 2^r)");
    }
  }
  return s;
}

inline CurveSpecFile load_curve_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open curve file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
  return parse_curve_spec(j);
}

// Place syntax: "inf", or a monic irreducible polynomial in t such as
// "t^2 + 2", "t + 4", "t". Coefficients are integers (or [..] F_p-vectors).
inline funcfield::Place parse_place(const funcfield::FieldSpec& F, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "inf" || s == "infinity") return funcfield::Place::infinity(F);
  if (s.empty()) throw InputError("empty place");
  funcfield::Poly acc(F);
  std::size_t i = 0;
  auto fail = [&]() -> funcfield::Place { throw InputError("cannot parse place \"" + text + "\""); };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      return fail();
    }
    funcfield::FieldElement coef = F.one();
    bool have_coef = false;
    if (i < s.size() && s[i] == '[') {
      auto close = s.find(']', i);
      if (close == std::string::npos) return fail();
      coef = detail::parse_coefficient(F, json::parse(s.substr(i, close - i + 1)));
      i = close + 1;
      have_coef = true;
    } else if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      coef = F.from_int(std::stoll(s.substr(i, j - i)));
      i = j;
      have_coef = true;
    }
    int power = 0;
    if (i < s.size() && s[i] == '*') {
      if (!have_coef) return fail();
      ++i;
    }
    if (i < s.size() && s[i] == 't') {
      power = 1;
      ++i;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) return fail();
        power = std::stoi(s.substr(i, j - i));
        i = j;
      }
    } else if (!have_coef) {
      return fail();
    }
    if (sign < 0) coef = F.neg(coef);
    acc += funcfield::Poly::monomial(F, power, coef);
  }
  return funcfield::Place::finite(acc);
}

}  // namespace ffbsd::io
