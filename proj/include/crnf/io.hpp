#pragma once

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "crnf/fischer.hpp"
#include "crnf/normal_form.hpp"
#include "crnf/surface.hpp"

namespace crnf {

using Json = nlohmann::ordered_json;

namespace detail {

/// Line and column (1-based) of the first occurrence of `needle`, or the
/// byte offset when not found.
inline std::string locate(const std::string& text, const std::string& needle, std::size_t fallback = 0) {
  std::size_t pos = needle.empty() ? std::string::npos : text.find(needle);
  if (pos == std::string::npos) pos = std::min(fallback, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < pos; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

/// Keeps the raw document text so that schema errors can point into it.
struct Source {
  std::string name;
  std::string text;

  [[noreturn]] void fail(const std::string& msg, const std::string& needle = {}) const {
    if (text.empty()) throw SchemaError(name + ": " + msg);
    throw SchemaError(name + ": " + locate(text, needle) + ": " + msg);
  }
};

inline const Json& field(const Json& j, const char* key, const Source& src) {
  if (!j.is_object()) src.fail(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) src.fail(std::string("missing field \"") + key + "\"");
  return *it;
}

inline int int_field(const Json& j, const char* key, const Source& src) {
  const Json& v = field(j, key, src);
  if (!v.is_number_integer()) src.fail(std::string("field \"") + key + "\" must be an integer", "\"" + std::string(key) + "\"");
  const auto x = v.get<long long>();
  if (x < 0 || x > 1000) src.fail(std::string("field \"") + key + "\" out of range", "\"" + std::string(key) + "\"");
  return static_cast<int>(x);
}

inline Rational rational_value(const Json& v, const Source& src) {
  if (!v.is_string()) src.fail("rational must be a string such as \"3/4\"", v.is_null() ? "" : v.dump());
  const std::string s = v.get<std::string>();
  try {
    return parse_rational(s);
  } catch (const SchemaError& e) {
    src.fail(e.what(), "\"" + s + "\"");
  }
}

inline GaussRat gauss_value(const Json& rec, const Source& src) {
  return {rational_value(field(rec, "re", src), src), rational_value(field(rec, "im", src), src)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

inline Json to_json(const GaussRat& c) {
  return Json{{"re", format_rational(c.re())}, {"im", format_rational(c.im())}};
}

/// {"terms": [{"exp": [...], "re", "im"}]}; "exp" lists the exponents of t1, t2, ...
inline Json to_json(const ParamScalar& s) {
  Json terms = Json::array();
  for (const auto& [m, c] : s.terms()) {
    Json t{{"exp", m}};
    t["re"] = format_rational(c.re());
    t["im"] = format_rational(c.im());
    terms.push_back(std::move(t));
  }
  return Json{{"terms", std::move(terms)}};
}

/// Polynomial literal: records {a, b, re, im} in graded lexicographic order.
/// Parameter-carrying coefficients replace re/im by "terms".
template <class S>
Json poly_to_json(const BiPoly<S>& p, const char* a = "m", const char* b = "n") {
  Json out = Json::array();
  for (const auto& [d, c] : p.terms()) {
    Json rec{{a, d.m}, {b, d.n}};
    if constexpr (std::is_same_v<S, ParamScalar>) {
      if (c.is_constant()) {
        rec.update(to_json(c.constant()));
      } else {
        rec.update(to_json(c));
      }
    } else {
      rec.update(to_json(c));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

inline Json to_json(const Surface& s) { return Json{{"truncation", s.truncation}, {"coeffs", poly_to_json(s.coeffs)}}; }

template <class S>
Json map_to_json(const FormalMapT<S>& m) {
  return Json{{"truncation", m.truncation}, {"f", poly_to_json(m.f, "k", "l")}, {"g", poly_to_json(m.g, "k", "l")}};
}

inline Json param_list(const std::vector<std::size_t>& ps) {
  Json out = Json::array();
  for (auto p : ps) out.push_back(ParamScalar::param_name(p));
  return out;
}

inline Json to_json(const DegreeReport& r) {
  Json j{{"degree", r.degree},
         {"image_rank", r.image_rank},
         {"kernel_dim", r.kernel_dim},
         {"normal_dim", r.normal_dim},
         {"params_introduced", param_list(r.params_introduced)}};
  Json res = Json::array();
  for (const auto& x : r.resolutions) {
    res.push_back(Json{{"param", ParamScalar::param_name(x.param)},
                       {"value", to_json(x.value)},
                       {"degree", x.degree},
                       {"chain_depth", x.chain_depth},
                       {"functional", x.functional}});
  }
  j["resolutions"] = std::move(res);
  j["normal_component"] = poly_to_json(r.normal_component);
  if (r.has_chain_diagnostic) {
    Json c{{"chain_space_dim", r.chain_space_dim}, {"overlap_with_image", r.chain_image_overlap}};
    c["normal_component_in_chain_space"] = r.chain_member ? Json(*r.chain_member) : Json(nullptr);
    j["chain_comparison"] = std::move(c);
  }
  return j;
}

inline Json to_json(const NormalFormResult& r) {
  Json j{{"order", r.order}, {"strategy", to_string(r.strategy)}, {"resonance", to_string(r.resonance)}};
  j["surface"] = Json{{"truncation", r.order}, {"coeffs", poly_to_json(r.surface)}};
  j["map"] = map_to_json(r.map);
  j["W"] = poly_to_json(r.w);
  j["parameters"] = r.param_count;
  j["unresolved"] = param_list(r.unresolved);
  Json degs = Json::array();
  for (const auto& d : r.degrees) degs.push_back(to_json(d));
  j["degrees"] = std::move(degs);
  return j;
}

inline Json to_json(const VerifyReport& r) {
  Json degs = Json::array();
  for (const auto& d : r.degrees) {
    Json j{{"degree", d.degree}, {"in_normal_space", d.in_space}};
    if (d.re_in_space) j["re_in_space"] = *d.re_in_space;
    if (d.im_in_space) j["im_in_space"] = *d.im_in_space;
    if (d.im_in_shifted_space) j["im_in_space_one_layer_deeper"] = *d.im_in_shifted_space;
    degs.push_back(std::move(j));
  }
  return Json{{"strategy", to_string(r.strategy)}, {"all_pass", r.all_pass()}, {"degrees", std::move(degs)}};
}

/// Two spaces of indentation and a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Readers
// ---------------------------------------------------------------------------

inline Json parse_document(const std::string& text, const std::string& name) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(name + ": " + detail::locate(text, {}, e.byte > 0 ? e.byte - 1 : 0) + ": invalid JSON");
  }
}

namespace detail {

inline ParamScalar param_scalar_value(const Json& rec, const Source& src) {
  if (!rec.contains("terms")) return gauss_value(rec, src);
  const Json& terms = field(rec, "terms", src);
  if (!terms.is_array()) src.fail("\"terms\" must be an array");
  std::vector<std::pair<ParamScalar::Monomial, GaussRat>> out;
  for (const auto& t : terms) {
    const Json& e = field(t, "exp", src);
    if (!e.is_array()) src.fail("\"exp\" must be an array");
    ParamScalar::Monomial m;
    for (const auto& x : e) {
      if (!x.is_number_unsigned()) src.fail("\"exp\" entries must be nonnegative integers");
      m.push_back(x.get<unsigned>());
    }
    out.emplace_back(std::move(m), gauss_value(t, src));
  }
  return ParamScalar::from_terms(out);
}

template <class S>
BiPoly<S> poly_value(const Json& arr, const Source& src, const char* a, const char* b) {
  if (!arr.is_array()) src.fail("polynomial must be an array of records");
  BiPoly<S> p;
  for (const auto& rec : arr) {
    const int x = int_field(rec, a, src), y = int_field(rec, b, src);
    S c;
    if constexpr (std::is_same_v<S, ParamScalar>) {
      c = param_scalar_value(rec, src);
    } else {
      c = gauss_value(rec, src);
    }
    p.add_term(x, y, c);
  }
  return p;
}

}  // namespace detail

inline Poly poly_from_json(const Json& j, const std::string& name = "input", const std::string& text = {}) {
  const detail::Source src{name, text};
  const Json& arr = j.is_object() ? detail::field(j, "poly", src) : j;
  return detail::poly_value<GaussRat>(arr, src, "m", "n");
}

/// Accepts a surface file or a normalize result (whose "surface" must then
/// be parameter-free).
inline Surface surface_from_json(const Json& j, const std::string& name = "input", const std::string& text = {}) {
  const detail::Source src{name, text};
  const Json& s = j.is_object() && j.contains("surface") ? j["surface"] : j;
  Surface out;
  out.truncation = detail::int_field(s, "truncation", src);
  const ParamPoly p = detail::poly_value<ParamScalar>(detail::field(s, "coeffs", src), src, "m", "n");
  for (const auto& [d, c] : p.terms()) {
    if (!c.is_constant()) src.fail("surface coefficients must be parameter-free");
    out.coeffs.add_term(d.m, d.n, c.constant());
  }
  try {
    out.validate();
  } catch (const DomainError& e) {
    src.fail(e.what());
  }
  return out;
}

template <class S = GaussRat>
FormalMapT<S> map_from_json(const Json& j, const std::string& name = "input", const std::string& text = {}) {
  const detail::Source src{name, text};
  const Json& m = j.is_object() && j.contains("map") ? j["map"] : j;
  FormalMapT<S> out;
  out.truncation = detail::int_field(m, "truncation", src);
  out.f = detail::poly_value<S>(m.contains("f") ? m["f"] : Json::array(), src, "k", "l");
  out.g = detail::poly_value<S>(m.contains("g") ? m["g"] : Json::array(), src, "k", "l");
  try {
    out.validate();
  } catch (const DomainError& e) {
    src.fail(e.what());
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes through a temporary file in the same directory and renames it
/// into place.
inline void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(path + ": cannot write");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(path + ": write failed");
    }
  }
  fs::rename(tmp, target);
}

}  // namespace crnf
