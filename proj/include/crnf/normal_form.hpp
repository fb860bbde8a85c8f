#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crnf/degree_block.hpp"
#include "crnf/fischer.hpp"
#include "crnf/surface.hpp"

namespace crnf {

enum class Strategy { ortho, chain };
enum class Resonance { w_chain, off };

inline std::string to_string(Strategy s) { return s == Strategy::ortho ? "ortho" : "chain"; }
inline std::string to_string(Resonance r) { return r == Resonance::w_chain ? "w-chain" : "off"; }

// ---------------------------------------------------------------------------
// Degree-2 gate
// ---------------------------------------------------------------------------

struct GateVerdict {
  bool accepted = false;
  std::string violated;  // empty when accepted
  GaussRat f10_squared;
  /// Model automorphism (z, w) -> (z / f10, w / g01) that brings an accepted
  /// pair to f10 = g01 = 1.
  GaussRat z_scale;
  GaussRat w_scale;
};

/// Degree-2 collection g01 Q(z, zbar) = Q(f10 z, conj(f10 z)).
inline GateVerdict solve_linear_gate(const GaussRat& f10, const GaussRat& g01) {
  if (f10.is_zero()) throw DomainError("gate: f10 must be nonzero");
  GateVerdict v;
  v.f10_squared = f10 * f10;
  if (g01 != v.f10_squared) {
    v.violated = "g01 = f10^2";
    return v;
  }
  if (!v.f10_squared.is_real()) {
    v.violated = "f10^2 real";
    return v;
  }
  if (!g01.is_real()) throw InternalError("gate: accepted pair with Im g01 != 0");
  v.accepted = true;
  v.z_scale = GaussRat(1) / f10;
  v.w_scale = GaussRat(1) / g01;
  return v;
}

// ---------------------------------------------------------------------------
// Normal-space membership
// ---------------------------------------------------------------------------

/// Whether homogeneous P lies in the degree-deg(P) normal space of `strategy`.
inline bool in_normal_space(const Poly& p, Strategy strategy) {
  if (!p.is_homogeneous()) throw DomainError("in_normal_space: input must be homogeneous");
  if (p.is_zero()) return true;
  if (strategy == Strategy::chain) return in_chain_space(p);
  if (p.degree() < 3) throw DomainError("in_normal_space: ortho space is defined for degree >= 3");
  return build_block(p.degree()).in_complement(p);
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

using ParamMap = FormalMapT<ParamScalar>;

struct Resolution {
  std::size_t param = 0;
  ParamScalar value;
  int degree = 0;
  int chain_depth = 0;
  std::string functional;
};

struct DegreeReport {
  int degree = 0;
  int image_rank = 0;
  int kernel_dim = 0;
  int normal_dim = 0;
  std::vector<std::size_t> params_introduced;
  std::vector<Resolution> resolutions;
  ParamPoly normal_component;  // a'_T after all later substitutions

  // Comparison with the chain reading, filled for degrees <= 6.
  bool has_chain_diagnostic = false;
  int chain_space_dim = 0;
  int chain_image_overlap = 0;
  std::optional<bool> chain_member;  // unset while a'_T still carries parameters
};

struct NormalFormResult {
  int order = 0;
  Strategy strategy = Strategy::ortho;
  Resonance resonance = Resonance::w_chain;
  ParamPoly surface;  // normalized tail a'
  ParamMap map;       // normalizing map
  std::vector<DegreeReport> degrees;
  std::vector<std::size_t> unresolved;
  std::size_t param_count = 0;
  Poly w;  // W of the degree-3 normal component

  bool param_free() const {
    for (const auto& [d, c] : surface.terms())
      if (!c.is_constant()) return false;
    return true;
  }

  /// The normalized surface; requires a parameter-free result.
  Surface surface_value() const {
    return {order, surface.map_coeffs([](const ParamScalar& s) { return s.constant(); })};
  }

  /// Surface and map with every remaining parameter set to `values`
  /// (missing entries are zero).
  Surface surface_at(const std::vector<Rational>& values = {}) const {
    return {order, surface.map_coeffs([&](const ParamScalar& s) { return s.evaluate(values); })};
  }
  FormalMap map_at(const std::vector<Rational>& values = {}) const {
    auto ev = [&](const ParamScalar& s) { return s.evaluate(values); };
    return {map.truncation, map.f.map_coeffs(ev), map.g.map_coeffs(ev)};
  }
};

namespace detail {

inline ParamMap substitute_map(const ParamMap& m, std::size_t p, const ParamScalar& v) {
  auto sub = [&](const ParamScalar& s) { return s.substitute(p, v); };
  return {m.truncation, m.f.map_coeffs(sub), m.g.map_coeffs(sub)};
}

inline ParamMap add_maps(const ParamMap& a, const ParamMap& b) {
  return {a.truncation, a.f + b.f, a.g + b.g};
}

class Normalizer {
 public:
  Normalizer(const Surface& m, int order, Strategy strategy, Resonance resonance)
      : input_{order, truncate(m.coeffs, Grading::total(order))} {
    result_.order = order;
    result_.strategy = strategy;
    result_.resonance = resonance;
    result_.map = ParamMap::identity(order);
  }

  NormalFormResult run() {
    for (int t = 3; t <= result_.order; ++t) step(t);
    for (auto& r : result_.degrees) r.normal_component = homogeneous_component(result_.surface, r.degree);
    for (auto& r : result_.degrees) fill_chain_member(r);
    result_.unresolved = open_;
    return std::move(result_);
  }

 private:
  void step(int t) {
    const DegreeBlock& block = build_block(t);
    const bool ortho = result_.strategy == Strategy::ortho;
    const auto& normal_basis = ortho ? block.complement_basis : block.chain_basis;
    const ImageSolver& solver = ortho ? block.ortho_solver : block.chain_solver;

    DegreeReport report;
    report.degree = t;
    report.image_rank = static_cast<int>(block.image_basis.size());
    report.kernel_dim = static_cast<int>(block.kernel_basis.size());
    report.normal_dim = static_cast<int>(normal_basis.size());
    if (t <= 6) fill_chain_dims(block, report);

    // Degree-T part of the transformation equation with the block unknowns
    // and a'_T still zero: E = a'_T - L_T x.
    const ParamPoly residual = transform_residual(input_, result_.map, result_.surface, t);
    const auto e = real_coords(homogeneous_component(residual, t), t);
    const auto sol = solver.solve(e);
    if (!sol) {
      if (!ortho) throw ChainSpaceDeficient(t);
      throw InternalError("ortho normal space failed to complement the block image");
    }
    const std::size_t nx = block.unknowns.size();
    std::vector<ParamScalar> x(nx), y(normal_basis.size());
    for (std::size_t j = 0; j < nx; ++j) x[j] = -(*sol)[j];
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = (*sol)[nx + j];

    std::vector<ParamScalar> a_coords(block.dim());
    for (std::size_t j = 0; j < y.size(); ++j)
      for (std::size_t i = 0; i < block.dim(); ++i)
        if (sgn(normal_basis[j][i]) != 0) a_coords[i] += y[j] * ParamScalar(GaussRat(normal_basis[j][i]));
    const ParamPoly a_t = from_real_coords(a_coords, t);

    for (const auto& kv : block.kernel_basis) {
      const std::size_t p = result_.param_count++;
      open_.push_back(p);
      report.params_introduced.push_back(p);
      for (std::size_t j = 0; j < nx; ++j)
        if (sgn(kv[j]) != 0) x[j] += ParamScalar::param(p) * ParamScalar(GaussRat(kv[j]));
    }
    result_.map = add_maps(result_.map, block.as_map(x, result_.order));
    result_.surface += a_t;

    if (result_.resonance == Resonance::w_chain) {
      if (t == 3) {
        const ParamPoly a3 = homogeneous_component(result_.surface, 3);
        result_.w = compute_W(a3.map_coeffs([](const ParamScalar& s) { return s.constant(); }));
        if (result_.w.is_zero()) throw DegenerateW();
      }
      resolve(block, report);
    } else if (t == 3) {
      const ParamPoly a3 = homogeneous_component(result_.surface, 3);
      result_.w = compute_W(a3.map_coeffs([](const ParamScalar& s) { return s.constant(); }));
    }
    result_.degrees.push_back(std::move(report));
  }

  /// Imposes the layer functionals of a'_T in order. A functional still
  /// carrying open parameters is set to zero by solving it for the oldest
  /// parameter in which it is affine with constant coefficient.
  void resolve(const DegreeBlock& block, DegreeReport& report) {
    const int t = block.degree;
    for (std::size_t row = 0; row < block.layer_functionals.size(); ++row) {
      const auto coords = real_coords(homogeneous_component(result_.surface, t), t);
      ParamScalar value;
      for (std::size_t j = 0; j < coords.size(); ++j) {
        const Rational& w = block.layer_coordinates(row, j);
        if (sgn(w) != 0 && !coords[j].is_zero()) value += coords[j] * ParamScalar(GaussRat(w));
      }
      if (value.is_constant()) continue;
      std::optional<std::pair<std::size_t, ParamScalar>> pick;
      for (std::size_t p : open_) {
        if (auto v = value.solve_affine(p)) {
          pick.emplace(p, std::move(*v));
          break;
        }
      }
      if (!pick) throw NonAffineResolution(t);
      substitute_everywhere(pick->first, pick->second);
      report.resolutions.push_back(
          {pick->first, pick->second, t, block.layer_functionals[row].chain_depth, block.layer_functionals[row].label});
    }
    const ParamPoly normal = homogeneous_component(result_.surface, t);
    for (const auto& [d, c] : normal.terms())
      if (!c.is_constant()) throw InternalError("resolution left parameters in the normal component");
  }

  void substitute_everywhere(std::size_t p, const ParamScalar& v) {
    result_.map = substitute_map(result_.map, p, v);
    result_.surface = result_.surface.map_coeffs([&](const ParamScalar& s) { return s.substitute(p, v); });
    for (auto& r : result_.degrees)
      for (auto& res : r.resolutions) res.value = res.value.substitute(p, v);
    std::erase(open_, p);
  }

  static void fill_chain_dims(const DegreeBlock& block, DegreeReport& report) {
    report.has_chain_diagnostic = true;
    report.chain_space_dim = static_cast<int>(block.chain_basis.size());
    const std::size_t joint = block.chain_solver.rank();
    report.chain_image_overlap =
        static_cast<int>(block.image_basis.size() + block.chain_basis.size()) - static_cast<int>(joint);
  }

  static void fill_chain_member(DegreeReport& r) {
    if (!r.has_chain_diagnostic) return;
    for (const auto& [d, c] : r.normal_component.terms())
      if (!c.is_constant()) return;
    r.chain_member = in_chain_space(r.normal_component.map_coeffs([](const ParamScalar& s) { return s.constant(); }));
  }

  Surface input_;
  NormalFormResult result_;
  std::vector<std::size_t> open_;
};

}  // namespace detail

/// Degree-by-degree normalization of M up to total degree `order`.
inline NormalFormResult normalize(const Surface& m, int order, Strategy strategy = Strategy::ortho,
                                  Resonance resonance = Resonance::w_chain) {
  m.validate();
  if (order < 3) throw DomainError("normalize: order must be >= 3");
  if (order > m.truncation) throw DomainError("normalize: order exceeds surface truncation");
  return detail::Normalizer(m, order, strategy, resonance).run();
}

// ---------------------------------------------------------------------------
// Verification and invariance
// ---------------------------------------------------------------------------

struct DegreeVerdict {
  int degree = 0;
  bool in_space = false;
  // chain strategy only: the real and imaginary parts checked separately.
  std::optional<bool> re_in_space;
  std::optional<bool> im_in_space;
  /// Imaginary part checked one chain layer deeper (the "S_{p-1}" reading
  /// interpreted as chain depth).
  std::optional<bool> im_in_shifted_space;
};

struct VerifyReport {
  Strategy strategy = Strategy::ortho;
  std::vector<DegreeVerdict> degrees;
  bool all_pass() const {
    for (const auto& d : degrees)
      if (!d.in_space) return false;
    return true;
  }
};

inline VerifyReport verify_normal_form(const Surface& m, Strategy strategy) {
  m.validate();
  VerifyReport out;
  out.strategy = strategy;
  for (int t = 3; t <= m.truncation; ++t) {
    DegreeVerdict v;
    v.degree = t;
    const Poly a = m.part(t);
    v.in_space = in_normal_space(a, strategy);
    if (strategy == Strategy::chain) {
      const Poly re = real_part_poly(a), im = imag_part_poly(a);
      v.re_in_space = in_chain_space(re);
      v.im_in_space = in_chain_space(im);
      bool shifted = true;
      if (!im.is_zero() && t >= 2) shifted = in_chain_space(fischer_divide(im).quotient);
      v.im_in_shifted_space = shifted;
      v.in_space = *v.re_in_space && *v.im_in_space;
    }
    out.degrees.push_back(v);
  }
  return out;
}

/// transform_residual(M, map, surface, order) of a normalize run, kept
/// symbolic in any unresolved parameters.
inline ParamPoly solver_residual(const Surface& m, const NormalFormResult& r) {
  return transform_residual<ParamScalar>(m, r.map, r.surface, r.order);
}

struct InvarianceReport {
  bool equal = false;
  std::optional<int> first_discrepancy;
  NormalFormResult original;
  NormalFormResult transformed;
  Surface pushed;
};

/// Compares two normalized surfaces degree by degree, exactly.
inline std::optional<int> first_difference(const ParamPoly& a, const ParamPoly& b, int order) {
  for (int t = 3; t <= order; ++t)
    if (homogeneous_component(a, t) != homogeneous_component(b, t)) return t;
  return std::nullopt;
}

inline InvarianceReport invariance_check(const Surface& m, const FormalMap& phi, int order,
                                         Strategy strategy = Strategy::ortho,
                                         Resonance resonance = Resonance::w_chain) {
  InvarianceReport r;
  r.pushed = push_forward(m, phi);
  r.original = normalize(m, order, strategy, resonance);
  r.transformed = normalize(r.pushed, order, strategy, resonance);
  r.first_discrepancy = first_difference(r.original.surface, r.transformed.surface, order);
  r.equal = !r.first_discrepancy.has_value();
  return r;
}

}  // namespace crnf
