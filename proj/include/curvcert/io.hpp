#pragma once

// Input documents (tensor specifications) and structured report rendering.
// All scalar values travel as strings: rationals exactly as "p/q", floats
// via a 17-significant-digit round-trip format, so structured reports are
// byte-stable across runs and platforms.

#include <array>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "curvcert/curvature.hpp"
#include "curvcert/generators.hpp"
#include "curvcert/petrov.hpp"
#include "curvcert/pontryagin.hpp"
#include "curvcert/symmetry.hpp"

namespace curvcert {

using Json = nlohmann::json;

// ---- tensor specification documents ----

struct TensorSpec {
  struct Component {
    std::array<int, 4> indices{};  // 1-based
    std::string value;
  };

  int dimension = 0;
  std::vector<int> signs;
  std::string mode = "rational";  // "rational" | "float64"
  int orientation = 1;
  std::vector<Component> components;
};

namespace detail {

inline int require_pm_one(const Json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw ParseError(where + ": expected +1 or -1");
  long long v = j.get<long long>();
  if (v != 1 && v != -1) throw ParseError(where + ": expected +1 or -1");
  return static_cast<int>(v);
}

inline std::string value_string(const Json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.dump();
  throw ParseError(where + ": expected a string or a number");
}

}  // namespace detail

inline TensorSpec tensor_spec_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("tensor spec: expected an object");
  TensorSpec spec;
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw ParseError("tensor spec: missing integer field 'dimension'");
  spec.dimension = j["dimension"].get<int>();
  if (spec.dimension < 1 || spec.dimension > kMaxDimension)
    throw ParseError("tensor spec: dimension must be between 1 and " +
                     std::to_string(kMaxDimension));
  if (!j.contains("signs") || !j["signs"].is_array())
    throw ParseError("tensor spec: missing array field 'signs'");
  const Json& signs = j["signs"];
  if (static_cast<int>(signs.size()) != spec.dimension)
    throw ParseError("tensor spec: 'signs' must list one sign per dimension");
  for (std::size_t i = 0; i < signs.size(); ++i)
    spec.signs.push_back(
        detail::require_pm_one(signs[i], "signs[" + std::to_string(i) + "]"));
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) throw ParseError("mode: expected a string");
    spec.mode = j["mode"].get<std::string>();
    if (spec.mode != "rational" && spec.mode != "float64")
      throw ParseError("mode: expected \"rational\" or \"float64\"");
  }
  if (j.contains("orientation"))
    spec.orientation = detail::require_pm_one(j["orientation"], "orientation");
  if (j.contains("components")) {
    if (!j["components"].is_array())
      throw ParseError("components: expected an array");
    const Json& comps = j["components"];
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const std::string where = "components[" + std::to_string(c) + "]";
      const Json& entry = comps[c];
      if (!entry.is_object() || !entry.contains("indices") || !entry.contains("value"))
        throw ParseError(where + ": expected {indices, value}");
      const Json& idx = entry["indices"];
      if (!idx.is_array() || idx.size() != 4)
        throw ParseError(where + ".indices: expected four 1-based indices");
      TensorSpec::Component comp;
      for (int a = 0; a < 4; ++a) {
        const Json& v = idx[a];
        if (!v.is_number_integer())
          throw ParseError(where + ".indices[" + std::to_string(a) + "]: expected an integer");
        int value = v.get<int>();
        if (value < 1 || value > spec.dimension)
          throw ParseError(where + ".indices[" + std::to_string(a) +
                           "]: must be between 1 and " + std::to_string(spec.dimension));
        comp.indices[a] = value;
      }
      comp.value = detail::value_string(entry["value"], where + ".value");
      spec.components.push_back(std::move(comp));
    }
  }
  return spec;
}

inline Json tensor_spec_to_json(const TensorSpec& spec) {
  Json j;
  j["dimension"] = spec.dimension;
  j["signs"] = spec.signs;
  j["mode"] = spec.mode;
  j["orientation"] = spec.orientation;
  Json comps = Json::array();
  for (const auto& c : spec.components) {
    Json entry;
    entry["indices"] = c.indices;
    entry["value"] = c.value;
    comps.push_back(std::move(entry));
  }
  j["components"] = std::move(comps);
  return j;
}

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError(origin + ": not valid JSON");
  return j;
}

inline TensorSpec load_tensor_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return tensor_spec_from_json(parse_json_text(buf.str(), path));
}

inline ScalarSpace space_of_spec(const TensorSpec& spec) {
  return ScalarSpace(spec.dimension, spec.signs, spec.orientation);
}

template <class T>
CurvatureTensor<T> build_curvature(const TensorSpec& spec) {
  ScalarSpace space = space_of_spec(spec);
  std::vector<ComponentEntry<T>> entries;
  entries.reserve(spec.components.size());
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    const auto& comp = spec.components[c];
    T value;
    try {
      value = scalar_from_string<T>(comp.value);
    } catch (const ParseError& e) {
      throw ParseError("components[" + std::to_string(c) + "].value: " + e.what());
    }
    entries.push_back(ComponentEntry<T>{comp.indices[0] - 1, comp.indices[1] - 1,
                                        comp.indices[2] - 1, comp.indices[3] - 1, value});
  }
  return curvature_from_components(space, entries);
}

// Canonical spec document for an existing tensor: nonzero entries of the
// upper triangle of the pair matrix, 1-based, in rank order.
template <class T>
TensorSpec spec_of_curvature(const CurvatureTensor<T>& c, const std::string& mode) {
  const ScalarSpace& space = c.space();
  TensorSpec spec;
  spec.dimension = space.dim();
  spec.signs = space.signs();
  spec.mode = mode;
  spec.orientation = space.orientation();
  const auto& pairs = space.table().masks(2);
  const Mat<T>& m = c.pair_matrix();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto xy = members_of(pairs[i]);
    for (std::size_t j = i; j < pairs.size(); ++j) {
      const T& v = m(static_cast<int>(i), static_cast<int>(j));
      if (scalar_traits<T>::is_zero(v)) continue;
      auto zw = members_of(pairs[j]);
      spec.components.push_back(TensorSpec::Component{
          {xy[0] + 1, xy[1] + 1, zw[0] + 1, zw[1] + 1}, scalar_traits<T>::to_string(v)});
    }
  }
  return spec;
}

// ---- report fragments ----

template <class T>
Json scalar_json(const T& v) {
  return Json(scalar_traits<T>::to_string(v));
}

template <class T>
Json complex_json(const Complex<T>& z) {
  Json j;
  j["re"] = scalar_json(z.re);
  j["im"] = scalar_json(z.im);
  return j;
}

template <class T>
Json matrix_json(const Mat<T>& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
Json sym_bilinear_json(const SymBilinear<T>& b) {
  return matrix_json(b.mat);
}

// Coefficients on the increasing-subset basis, in rank order, 1-based labels.
template <class T>
Json kform_json(const KForm<T>& f) {
  Json j;
  j["degree"] = f.degree;
  Json coeffs = Json::array();
  const auto& masks = f.space.table().masks(f.degree);
  for (std::size_t r = 0; r < masks.size(); ++r) {
    Json entry;
    Json subset = Json::array();
    for (int i : members_of(masks[r])) subset.push_back(i + 1);
    entry["subset"] = std::move(subset);
    entry["value"] = scalar_json(f.coeffs[r]);
    coeffs.push_back(std::move(entry));
  }
  j["coefficients"] = std::move(coeffs);
  return j;
}

template <class T>
Json pontryagin_json(const PontryaginForm<T>& p) {
  Json j;
  j["k"] = p.k;
  j["two_pi_exponent"] = p.two_pi_exponent;
  j["degree_exceeds_dim"] = p.degree_exceeds_dim;
  j["zero"] = p.is_zero();
  if (!p.degree_exceeds_dim) j["form"] = kform_json(p.reduced);
  return j;
}

template <class T>
Json pontryagin_product_json(const PontryaginProduct<T>& p) {
  Json j;
  j["alpha"] = p.alpha;
  j["two_pi_exponent"] = p.two_pi_exponent;
  j["degree_exceeds_dim"] = p.degree_exceeds_dim;
  j["zero"] = p.is_zero();
  if (!p.degree_exceeds_dim) j["form"] = kform_json(p.form);
  return j;
}

template <class T>
Json decomposition_json(const CurvatureTensor<T>& c) {
  Json j;
  j["scalar_curvature"] = scalar_json(scalar_curvature(c));
  j["ricci"] = sym_bilinear_json(trace14(c));
  if (c.space().dim() >= 3) {
    Decomposition<T> dec = decompose(c);
    j["traceless_ricci"] = sym_bilinear_json(dec.traceless_ricci);
    j["schouten"] = sym_bilinear_json(schouten(c));
    j["weyl_pair_matrix"] = matrix_json(dec.weyl_part.pair_matrix());
    j["weyl_norm"] = scalar_json(full_contraction(dec.weyl_part, dec.weyl_part));
    j["weyl_zero"] = dec.weyl_part.is_zero();
  }
  return j;
}

// The certificate plus the preconditions it established; a report never
// carries a certificate whose preconditions were not checked.
template <class T>
Json certificate_json(const VanishingCertificate<T>& cert) {
  Json j;
  j["dimension"] = cert.dimension;
  j["alpha"] = cert.alpha;
  j["parity"] = cert.parity > 0 ? "even" : "odd";
  j["all_zero"] = cert.all_zero;
  j["witness"] = scalar_json(cert.witness);
  j["two_pi_exponent"] = cert.two_pi_exponent;
  Json pre;
  pre["dimension_is_4_times_weight"] = true;
  pre["theta_is_isometry"] = true;
  pre["theta_is_involution"] = true;
  pre["theta_determinant"] = -1;
  pre["parity_definite"] = true;
  j["preconditions"] = std::move(pre);
  return j;
}

template <class T>
Json petrov_json(const PetrovReport<T>& rep) {
  Json j;
  j["type"] = to_string(rep.type);
  j["spectrum"] = to_string(rep.spectrum);
  j["all_real"] = rep.all_real;
  j["all_imaginary"] = rep.all_imaginary;
  j["used_float_fallback"] = rep.used_float_fallback;
  Json evs = Json::array();
  for (const auto& ev : rep.eigenvalues) evs.push_back(complex_json(ev));
  j["eigenvalues"] = std::move(evs);
  if (rep.exact_eigenvalues) {
    Json exact = Json::array();
    for (const auto& ev : *rep.exact_eigenvalues) exact.push_back(complex_json(ev));
    j["exact_eigenvalues"] = std::move(exact);
  }
  Json jordan = Json::array();
  for (const auto& block : rep.jordan) {
    Json b;
    b["eigenvalue"] = complex_json(block.value);
    b["size"] = block.size;
    jordan.push_back(std::move(b));
  }
  j["jordan_blocks"] = std::move(jordan);
  return j;
}

inline Json topology_json(const TopologyExpr& expr, const TopologyReport& rep) {
  Json j;
  Json summands = Json::array();
  for (const auto& s : expr.summands) summands.push_back(s.label);
  j["summands"] = std::move(summands);
  j["chi"] = rep.chi;
  j["sigma"] = rep.sigma;
  j["p1_integral"] = rep.p1_integral;
  j["lorentz_metric_exists"] = rep.lorentz_metric_exists;
  j["parity_obstructed"] = rep.parity_obstructed;
  if (rep.lorentz_metric_exists && rep.parity_obstructed)
    j["verdict"] = "Lorentzian yes; globally PE/PM no";
  else if (!rep.lorentz_metric_exists)
    j["verdict"] = "Lorentzian no";
  else
    j["verdict"] = "no obstruction";
  return j;
}

}  // namespace curvcert
