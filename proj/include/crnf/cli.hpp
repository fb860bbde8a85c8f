#pragma once

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "crnf/io.hpp"
#include "crnf/random.hpp"

namespace crnf {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kDegenerateW = 2,
  kNonAffine = 3,
  kSchema = 4,
  kParamCap = 5,
  kChainDeficient = 6,
  kCheckFailed = 7,
};

struct RunConfig {
  /// fischer-divide, fischer-chain, fischer-W, gate, normalize, verify,
  /// pushforward, invariance, randtest
  std::string command;
  std::string input;
  std::string output;  // empty: standard output
  std::string map;
  int order = 0;  // 0: the input surface's truncation
  Strategy strategy = Strategy::ortho;
  Resonance resonance = Resonance::w_chain;
  std::uint64_t seed = 0;
  int trials = 1;
  std::string f10 = "1";
  std::string g01 = "1";
};

/// "3/4", "-2i", "1/2+3/4i", "i", "1-i".
inline GaussRat parse_gauss(const std::string& text) {
  if (text.empty()) throw SchemaError("empty Gaussian rational");
  if (text.back() != 'i') return parse_rational(text);
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/') {
      split = k;
      break;
    }
  const std::string re = split == std::string::npos ? "0" : body.substr(0, split);
  std::string im = split == std::string::npos ? body : body.substr(split);
  if (!im.empty() && im[0] == '+') im.erase(0, 1);
  if (im.empty()) im = "1";
  if (im == "-") im = "-1";
  try {
    return {parse_rational(re), parse_rational(im)};
  } catch (const SchemaError&) {
    throw SchemaError("malformed Gaussian rational \"" + text + "\"");
  }
}

/// w = Q + z^3 + (1/2) z^2 zbar, truncated at 6.
inline Surface seed_surface() {
  Surface s{6, {}};
  s.coeffs.add_term(3, 0, GaussRat(1));
  s.coeffs.add_term(2, 1, GaussRat(Rational(1, 2)));
  return s;
}

namespace detail {

struct Loaded {
  Json json;
  std::string text;
};

inline Loaded load(const std::string& path) {
  Loaded l;
  l.text = read_file(path);
  l.json = parse_document(l.text, path);
  return l;
}

inline Surface load_surface(const std::string& path) {
  const Loaded l = load(path);
  return surface_from_json(l.json, path, l.text);
}

inline int order_for(const RunConfig& c, const Surface& m) { return c.order > 0 ? c.order : m.truncation; }

inline Json normalize_check(const Surface& m, const NormalFormResult& r) {
  return Json{{"residual_zero", solver_residual(m, r).is_zero()}};
}

inline Json invariance_trial(const Surface& m, const FormalMap& phi, const RunConfig& c, int order, bool& ok) {
  const InvarianceReport r = invariance_check(m, phi, order, c.strategy, c.resonance);
  const bool res_a = solver_residual(m, r.original).is_zero();
  const bool res_b = solver_residual(r.pushed, r.transformed).is_zero();
  ok = ok && r.equal && res_a && res_b;
  Json j{{"map", map_to_json(phi)}, {"equal", r.equal}};
  j["first_discrepancy"] = r.first_discrepancy ? Json(*r.first_discrepancy) : Json(nullptr);
  j["residual_zero"] = res_a && res_b;
  j["pushed_surface"] = to_json(r.pushed);
  j["normal_form"] = poly_to_json(r.original.surface);
  j["normal_form_of_pushed"] = poly_to_json(r.transformed.surface);
  j["unresolved"] = param_list(r.original.unresolved);
  j["unresolved_pushed"] = param_list(r.transformed.unresolved);
  return j;
}

inline int emit(const RunConfig& c, const Json& j, std::ostream& out) {
  const std::string text = dump(j);
  if (c.output.empty()) {
    out << text;
  } else {
    write_atomic(c.output, text);
  }
  return kOk;
}

inline int dispatch(const RunConfig& c, std::ostream& out) {
  const std::string& cmd = c.command;
  if (cmd == "fischer-divide" || cmd == "fischer-chain" || cmd == "fischer-W") {
    const Loaded l = load(c.input);
    const Poly p = poly_from_json(l.json, c.input, l.text);
    if (cmd == "fischer-divide") {
      const auto s = fischer_divide(p);
      return emit(c, Json{{"quotient", poly_to_json(s.quotient)}, {"remainder", poly_to_json(s.remainder)}}, out);
    }
    if (cmd == "fischer-chain") {
      const auto ch = chain_decompose(p);
      Json qs = Json::array(), rs = Json::array();
      for (const auto& q : ch.quotients) qs.push_back(poly_to_json(q));
      for (const auto& r : ch.remainders) rs.push_back(poly_to_json(r));
      return emit(c,
                  Json{{"degree", ch.degree},
                       {"quotients", std::move(qs)},
                       {"remainders", std::move(rs)},
                       {"final_quotient", poly_to_json(ch.final_quotient())}},
                  out);
    }
    return emit(c, Json{{"W", poly_to_json(compute_W(p))}}, out);
  }
  if (cmd == "gate") {
    const GateVerdict v = solve_linear_gate(parse_gauss(c.f10), parse_gauss(c.g01));
    Json j{{"accepted", v.accepted}, {"f10_squared", to_json(v.f10_squared)}};
    if (v.accepted) {
      j["z_scale"] = to_json(v.z_scale);
      j["w_scale"] = to_json(v.w_scale);
    } else {
      j["violated"] = v.violated;
    }
    return emit(c, j, out);
  }
  if (cmd == "normalize") {
    const Surface m = load_surface(c.input);
    const NormalFormResult r = normalize(m, order_for(c, m), c.strategy, c.resonance);
    Json j = to_json(r);
    j["check"] = normalize_check(m, r);
    return emit(c, j, out);
  }
  if (cmd == "verify") {
    const Surface m = load_surface(c.input);
    const VerifyReport r = verify_normal_form(m, c.strategy);
    emit(c, to_json(r), out);
    return r.all_pass() ? kOk : kCheckFailed;
  }
  if (cmd == "pushforward") {
    const Surface m = load_surface(c.input);
    const Loaded l = load(c.map);
    const FormalMap phi = map_from_json(l.json, c.map, l.text);
    return emit(c, to_json(push_forward(m, phi)), out);
  }
  if (cmd == "invariance") {
    const Surface m = c.input.empty() ? seed_surface() : load_surface(c.input);
    const int order = order_for(c, m);
    bool ok = true;
    Json trials = Json::array();
    if (!c.map.empty()) {
      const Loaded l = load(c.map);
      Json t = invariance_trial(m, map_from_json(l.json, c.map, l.text), c, order, ok);
      trials.push_back(std::move(t));
    } else {
      for (int i = 0; i < c.trials; ++i) {
        const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(i);
        Json t{{"seed", seed}};
        t.update(invariance_trial(m, gen_random_map(seed, m.truncation, true), c, order, ok));
        trials.push_back(std::move(t));
      }
    }
    Json j{{"order", order}, {"strategy", to_string(c.strategy)}, {"resonance", to_string(c.resonance)}};
    j["surface"] = to_json(m);
    j["all_equal"] = ok;
    j["trials"] = std::move(trials);
    emit(c, j, out);
    return ok ? kOk : kCheckFailed;
  }
  if (cmd == "randtest") {
    const int order = c.order > 0 ? c.order : 6;
    bool ok = true;
    Json trials = Json::array();
    for (int i = 0; i < c.trials; ++i) {
      const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(i);
      Rng rng(seed);
      const Surface m = random_surface(rng, order);
      const FormalMap phi = gen_random_map(rng, order, true);
      const NormalFormResult r = normalize(m, order, c.strategy, c.resonance);
      const bool residual = solver_residual(m, r).is_zero();
      bool verified = false, idempotent = false;
      if (r.param_free()) {
        const Surface nf = r.surface_value();
        verified = verify_normal_form(nf, c.strategy).all_pass();
        idempotent = normalize(nf, order, c.strategy, c.resonance).surface == r.surface;
      }
      const InvarianceReport inv = invariance_check(m, phi, order, c.strategy, c.resonance);
      const bool pass = residual && verified && idempotent && inv.equal;
      ok = ok && pass;
      Json t{{"seed", seed},
             {"surface", to_json(m)},
             {"residual_zero", residual},
             {"verified", verified},
             {"idempotent", idempotent},
             {"invariant", inv.equal},
             {"pass", pass}};
      trials.push_back(std::move(t));
    }
    Json j{{"order", order}, {"strategy", to_string(c.strategy)}, {"resonance", to_string(c.resonance)}};
    j["all_pass"] = ok;
    j["trials"] = std::move(trials);
    emit(c, j, out);
    return ok ? kOk : kCheckFailed;
  }
  throw DomainError("unknown command \"" + cmd + "\"");
}

}  // namespace detail

/// Applies CRNF_PARAM_DEGREE_CAP when set to a positive integer.
inline void apply_environment() {
  if (const char* v = std::getenv("CRNF_PARAM_DEGREE_CAP")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(v, &end, 10);
    if (end == v || *end != '\0' || cap == 0) throw SchemaError("CRNF_PARAM_DEGREE_CAP must be a positive integer");
    set_param_degree_cap(static_cast<unsigned>(cap));
  }
}

/// Runs one command; errors are reported on `err` and mapped to exit codes.
inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    apply_environment();
    return detail::dispatch(c, out);
  } catch (const DegenerateW& e) {
    err << "error: " << e.what() << "\n";
    return kDegenerateW;
  } catch (const NonAffineResolution& e) {
    err << "error: " << e.what() << "\n";
    return kNonAffine;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kSchema;
  } catch (const ParameterCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kParamCap;
  } catch (const ChainSpaceDeficient& e) {
    err << "error: " << e.what() << "\n";
    return kChainDeficient;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace crnf
