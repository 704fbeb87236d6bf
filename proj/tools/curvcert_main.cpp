// Command-line front end: ingest tensor specifications, run the exact
// curvature computations and certification batteries, and emit reports as
// text or machine-readable JSON.
//
// Exit codes: 0 success, 1 I/O or parse errors, 2 precondition failures,
// 3 certificate violation (an exact nonzero where a theorem demands zero).

#include <cctype>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "battery.hpp"
#include "curvcert/io.hpp"

namespace cc = curvcert;
using cc::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitViolation = 3;

struct GlobalOpts {
  std::string mode;  // empty: take the input document's mode
  std::uint64_t seed = 42;
  double tolerance = 1e-9;
  std::string out;
  std::string format = "text";
};

using Clock = std::chrono::steady_clock;

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_null()) return "null";
  return j.dump();
}

bool inline_array(const Json& a) {
  for (const auto& v : a)
    if (!v.is_primitive()) return false;
  return true;
}

// Plain-text rendering: indented key/value lines, arrays of scalars inline.
void render_text(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || (value.is_array() && !inline_array(value))) {
        os << pad << key << ":\n";
        render_text(os, value, indent + 1);
      } else if (value.is_array()) {
        os << pad << key << ": [";
        for (std::size_t i = 0; i < value.size(); ++i)
          os << (i ? ", " : "") << scalar_text(value[i]);
        os << "]\n";
      } else {
        os << pad << key << ": " << scalar_text(value) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (value.is_primitive()) {
        os << pad << "- " << scalar_text(value) << "\n";
      } else if (value.is_array() && inline_array(value)) {
        os << pad << "- [";
        for (std::size_t i = 0; i < value.size(); ++i)
          os << (i ? ", " : "") << scalar_text(value[i]);
        os << "]\n";
      } else {
        os << pad << "-\n";
        render_text(os, value, indent + 1);
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

void write_output(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out);
  if (!out) throw cc::ParseError("cannot open '" + g.out + "' for writing");
  out << text;
}

int emit_report(Json payload, const GlobalOpts& g, const std::string& command,
                const std::string& mode, Clock::time_point start, int exit_code = kExitOk) {
  payload["command"] = command;
  if (!mode.empty()) payload["mode"] = mode;
  payload["elapsed_ms"] = static_cast<long long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
  if (g.format == "structured") {
    write_output(g, payload.dump(2) + "\n");
  } else {
    std::ostringstream os;
    render_text(os, payload, 0);
    write_output(g, os.str());
  }
  return exit_code;
}

// Runs fn(tensor, spec, mode) with the scalar type selected by the mode.
template <class Fn>
int with_tensor(const std::string& file, const GlobalOpts& g, Fn&& fn) {
  cc::TensorSpec spec = cc::load_tensor_spec(file);
  const std::string mode = g.mode.empty() ? spec.mode : g.mode;
  if (mode == "rational")
    return fn(cc::build_curvature<cc::Rational>(spec), spec, mode);
  if (mode == "float64")
    return fn(cc::build_curvature<double>(spec), spec, mode);
  throw cc::ParseError("mode must be 'rational' or 'float64'");
}

template <class T>
T mode_tolerance(const GlobalOpts& g) {
  if constexpr (cc::scalar_traits<T>::exact)
    return cc::scalar_traits<T>::default_tolerance();
  else
    return T(g.tolerance);
}

template <class T>
std::vector<T> parse_axis(const std::string& text, int n) {
  std::vector<T> u;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) u.push_back(cc::scalar_from_string<T>(item));
  if (static_cast<int>(u.size()) != n)
    throw cc::ParseError("axis needs " + std::to_string(n) + " comma-separated entries");
  return u;
}

std::vector<int> parse_alpha(const std::string& text) {
  std::vector<int> alpha;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = std::stoi(item, &used);
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size() || v < 1)
      throw cc::ParseError("alpha parts must be positive integers: '" + item + "'");
    alpha.push_back(v);
  }
  if (alpha.empty()) throw cc::ParseError("alpha must not be empty");
  return alpha;
}

// All partitions of k, each written in non-increasing order.
std::vector<std::vector<int>> partitions_of(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, k, k);
  return out;
}

std::string default_axis(int n) {
  std::string s = "1";
  for (int i = 1; i < n; ++i) s += ",0";
  return s;
}

template <class T>
bool forms_agree(const cc::PontryaginForm<T>& a, const cc::PontryaginForm<T>& b,
                 const GlobalOpts& g) {
  if constexpr (cc::scalar_traits<T>::exact) {
    (void)g;
    return a.reduced.coeffs == b.reduced.coeffs;
  } else {
    if (a.reduced.coeffs.size() != b.reduced.coeffs.size()) return false;
    for (std::size_t i = 0; i < a.reduced.coeffs.size(); ++i) {
      T x = a.reduced.coeffs[i], y = b.reduced.coeffs[i];
      T scale = std::max(T(1), std::max(cc::scalar_traits<T>::abs(x),
                                        cc::scalar_traits<T>::abs(y)));
      if (cc::scalar_traits<T>::abs(x - y) > T(g.tolerance) * scale) return false;
    }
    return true;
  }
}

std::string parity_name(const std::optional<int>& p) {
  if (!p) return "indefinite";
  return *p > 0 ? "even" : "odd";
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

int cmd_decompose(const std::string& file, const GlobalOpts& g) {
  auto start = Clock::now();
  return with_tensor(file, g, [&](auto c, const cc::TensorSpec& spec, const std::string& mode) {
    Json payload;
    payload["input"] = cc::tensor_spec_to_json(spec);
    payload["decomposition"] = cc::decomposition_json(c);
    return emit_report(std::move(payload), g, "decompose", mode, start);
  });
}

int cmd_pontryagin(const std::string& file, std::vector<int> ks,
                   const std::vector<std::string>& alpha_args, const GlobalOpts& g) {
  auto start = Clock::now();
  return with_tensor(file, g, [&](auto c, const cc::TensorSpec& spec, const std::string& mode) {
    using T = typename std::decay_t<decltype(c)>::value_type;
    const int n = c.space().dim();
    if (ks.empty())
      for (int k = 1; 4 * k <= n; ++k) ks.push_back(k);
    if (ks.empty()) ks.push_back(1);  // below dimension 4 every form is trivially zero
    Json forms = Json::array();
    for (int k : ks) {
      if (k < 1) throw cc::ParseError("k must be positive");
      cc::PontryaginForm<T> det_route = cc::pontryagin_form_det(c, k);
      cc::PontryaginForm<T> op_route = cc::pontryagin_form_op(c, k);
      if (!forms_agree(det_route, op_route, g))
        throw cc::CertificateViolation("the two Pontryagin routes disagree at k = " +
                                       std::to_string(k));
      Json entry = cc::pontryagin_json(det_route);
      entry["routes_agree"] = true;
      forms.push_back(std::move(entry));
    }
    Json products = Json::array();
    for (const std::string& text : alpha_args) {
      std::vector<int> alpha = parse_alpha(text);
      products.push_back(cc::pontryagin_product_json(cc::pontryagin_product(c, alpha)));
    }
    Json payload;
    payload["input"] = cc::tensor_spec_to_json(spec);
    payload["forms"] = std::move(forms);
    if (!products.empty()) payload["products"] = std::move(products);
    return emit_report(std::move(payload), g, "pontryagin", mode, start);
  });
}

int cmd_petrov(const std::string& file, const GlobalOpts& g) {
  auto start = Clock::now();
  return with_tensor(file, g, [&](auto c, const cc::TensorSpec& spec, const std::string& mode) {
    using T = typename std::decay_t<decltype(c)>::value_type;
    cc::CurvatureTensor<T> w = cc::weyl(c);
    cc::PetrovReport<T> rep = cc::classify(w, g.tolerance);
    cc::SpectrumVanishing sv = cc::pontryagin_vanishing_for_type(rep, w, g.tolerance);
    Json payload;
    payload["input"] = cc::tensor_spec_to_json(spec);
    payload["petrov"] = cc::petrov_json(rep);
    payload["spectrum_vanishing"] = {{"applicable", sv.applicable},
                                     {"p1_zero", sv.p1_zero},
                                     {"consistent", sv.consistent}};
    int code = kExitOk;
    if (!sv.consistent) code = kExitViolation;
    return emit_report(std::move(payload), g, "petrov", mode, start, code);
  });
}

int cmd_em(const std::string& file, const std::string& axis, const GlobalOpts& g) {
  auto start = Clock::now();
  return with_tensor(file, g, [&](auto c, const cc::TensorSpec& spec, const std::string& mode) {
    using T = typename std::decay_t<decltype(c)>::value_type;
    const T tol = mode_tolerance<T>(g);
    std::vector<T> u = parse_axis<T>(axis, c.space().dim());
    cc::Isometry<T> theta = cc::reflection(c.space(), u);
    cc::ParitySplit<T> split = cc::parity_split(c, theta, tol);
    std::optional<int> parity = cc::parity_of(c, theta, tol);

    auto part_json = [&](const cc::CurvatureTensor<T>& part) {
      Json j;
      j["zero"] = part.is_zero();
      j["commutation_sign"] = Json();
      auto sign = cc::commutation_sign(part, theta, tol);
      if (sign) j["commutation_sign"] = *sign;
      j["norm"] = cc::scalar_json(cc::full_contraction(part, part));
      j["components"] = cc::tensor_spec_to_json(cc::spec_of_curvature(part, mode))["components"];
      return j;
    };

    Json payload;
    payload["input"] = cc::tensor_spec_to_json(spec);
    payload["axis"] = axis;
    payload["parity"] = parity_name(parity);
    if (parity) {
      cc::ParityEvidence ev = *parity > 0 ? cc::parity_even_evidence(c, u, tol)
                                          : cc::parity_odd_evidence(c, u, tol);
      payload["evidence"] = {{"pullback_route", ev.pullback_route},
                             {"component_route", ev.component_route}};
    }
    payload["even_part"] = part_json(split.even);
    payload["odd_part"] = part_json(split.odd);
    return emit_report(std::move(payload), g, "em", mode, start);
  });
}

struct CertifyArgs {
  std::string file;
  std::string gen;  // "", "random-even", "random-odd"
  int dim = 4;
  int count = 1;
  std::string axis;
  std::vector<std::string> alphas;
};

template <class T>
Json certify_one(const cc::CurvatureTensor<T>& c, const cc::Isometry<T>& theta,
                 const std::vector<std::vector<int>>& alphas, const T& tol, bool& all_zero) {
  Json certs = Json::array();
  for (const auto& alpha : alphas) {
    cc::VanishingCertificate<T> cert = cc::vanishing_certificate(c, theta, alpha, tol);
    all_zero = all_zero && cert.all_zero;
    certs.push_back(cc::certificate_json(cert));
  }
  return certs;
}

int cmd_certify(const CertifyArgs& a, const GlobalOpts& g) {
  auto start = Clock::now();
  if (a.file.empty() == a.gen.empty())
    throw cc::ParseError("certify needs exactly one of an input file or --gen");

  if (!a.file.empty()) {
    return with_tensor(a.file, g,
                       [&](auto c, const cc::TensorSpec& spec, const std::string& mode) {
      using T = typename std::decay_t<decltype(c)>::value_type;
      const T tol = mode_tolerance<T>(g);
      const int n = c.space().dim();
      std::vector<std::vector<int>> alphas;
      for (const auto& s : a.alphas) alphas.push_back(parse_alpha(s));
      if (alphas.empty()) {
        if (n % 4 != 0)
          throw cc::PreconditionFailed(
              "certified vanishing needs the dimension divisible by 4; pass --alpha to "
              "override");
        alphas = partitions_of(n / 4);
      }
      std::vector<T> u =
          parse_axis<T>(a.axis.empty() ? default_axis(n) : a.axis, n);
      cc::Isometry<T> theta = cc::reflection(c.space(), u);
      bool all_zero = true;
      Json payload;
      payload["input"] = cc::tensor_spec_to_json(spec);
      payload["parity"] = parity_name(cc::parity_of(c, theta, tol));
      payload["certificates"] = certify_one(c, theta, alphas, tol, all_zero);
      payload["all_zero"] = all_zero;
      return emit_report(std::move(payload), g, "certify", mode, start,
                         all_zero ? kExitOk : kExitViolation);
    });
  }

  // Generator batch: workers own one instance each; assembly stays ordered.
  using T = cc::Rational;
  if (a.gen != "random-even" && a.gen != "random-odd")
    throw cc::ParseError("--gen must be random-even or random-odd");
  if (a.count < 1) throw cc::ParseError("--count must be positive");
  const int n = a.dim;
  const int parity = (a.gen == "random-even") ? 1 : -1;
  std::vector<std::vector<int>> alphas;
  for (const auto& s : a.alphas) alphas.push_back(parse_alpha(s));
  if (alphas.empty()) {
    if (n % 4 != 0)
      throw cc::PreconditionFailed(
          "certified vanishing needs the dimension divisible by 4; pass --alpha to override");
    alphas = partitions_of(n / 4);
  }
  cc::ScalarSpace space = cc::ScalarSpace::minkowski(n);
  std::vector<T> u = parse_axis<T>(a.axis.empty() ? default_axis(n) : a.axis, n);
  cc::Isometry<T> theta = cc::reflection(space, u);
  const T tol = mode_tolerance<T>(g);

  auto worker = [&](int index) {
    std::uint64_t salt = static_cast<std::uint64_t>(index) * 100;
    cc::CurvatureTensor<T> c = cc::CurvatureTensor<T>::zero(space);
    for (int attempt = 0; attempt < 64 && c.is_zero(); ++attempt)
      c = cc::random_parity<T>(space, theta, parity, cc::derive_seed(g.seed, salt++));
    if (c.is_zero()) throw cc::Error("certify: could not draw a nonzero tensor");
    bool all_zero = true;
    Json inst;
    inst["index"] = index;
    inst["tensor"] = cc::tensor_spec_to_json(cc::spec_of_curvature(c, "rational"));
    inst["certificates"] = certify_one(c, theta, alphas, tol, all_zero);
    return std::make_pair(std::move(inst), all_zero);
  };

  std::vector<std::future<std::pair<Json, bool>>> futures;
  futures.reserve(static_cast<std::size_t>(a.count));
  for (int i = 0; i < a.count; ++i)
    futures.push_back(std::async(std::launch::async, worker, i));
  Json instances = Json::array();
  bool all_zero = true;
  for (auto& f : futures) {
    auto [inst, ok] = f.get();
    all_zero = all_zero && ok;
    instances.push_back(std::move(inst));
  }
  Json payload;
  payload["generator"] = a.gen;
  payload["dimension"] = n;
  payload["seed"] = g.seed;
  payload["parity"] = parity > 0 ? "even" : "odd";
  payload["instances"] = std::move(instances);
  payload["all_zero"] = all_zero;
  return emit_report(std::move(payload), g, "certify", "rational", start,
                     all_zero ? kExitOk : kExitViolation);
}

int cmd_topology(const std::string& expr_text, const GlobalOpts& g) {
  auto start = Clock::now();
  cc::TopologyExpr expr = cc::parse_topology_expr(expr_text);
  Json payload = cc::topology_json(expr, cc::chi_sigma(expr));
  payload["input"] = expr_text;
  return emit_report(std::move(payload), g, "topology", "", start);
}

int cmd_selfcheck(const std::string& sizes, const GlobalOpts& g) {
  auto start = Clock::now();
  if (sizes != "default" && sizes != "quick")
    throw cc::ParseError("--sizes must be 'default' or 'quick'");
  const bool quick = sizes == "quick";
  using Runner = cc::battery::CriterionResult (*)(std::uint64_t, bool);
  const Runner runners[] = {
      cc::battery::route_equality,       cc::battery::weyl_equality,
      cc::battery::vanishing_battery,    cc::battery::non_vacuity,
      cc::battery::petrov_battery,       cc::battery::topology_integers,
      cc::battery::literal_cross_checks, cc::battery::structural_identities};
  std::vector<std::future<cc::battery::CriterionResult>> futures;
  for (Runner r : runners)
    futures.push_back(std::async(std::launch::async, r, g.seed, quick));
  std::vector<cc::battery::CriterionResult> results;
  results.reserve(futures.size());
  for (auto& f : futures) results.push_back(f.get());

  int passed = 0;
  Json criteria = Json::array();
  for (const auto& r : results) {
    if (r.pass) ++passed;
    criteria.push_back(
        {{"number", r.number}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  const bool all_pass = passed == static_cast<int>(results.size());

  if (g.format == "structured") {
    Json payload;
    payload["seed"] = g.seed;
    payload["sizes"] = sizes;
    payload["criteria"] = std::move(criteria);
    payload["passed"] = passed;
    payload["total"] = static_cast<int>(results.size());
    payload["all_pass"] = all_pass;
    return emit_report(std::move(payload), g, "selfcheck", "rational", start,
                       all_pass ? kExitOk : kExitViolation);
  }
  std::ostringstream os;
  for (const auto& r : results)
    os << "criterion " << r.number << " (" << r.name << "): " << (r.pass ? "PASS" : "FAIL")
       << " -- " << r.detail << "\n";
  os << "selfcheck: " << passed << "/" << results.size() << " criteria passed (seed "
     << g.seed << ", sizes " << sizes << ")\n";
  write_output(g, os.str());
  return all_pass ? kExitOk : kExitViolation;
}

struct GenArgs {
  std::string type;
  int dim = 4;
  std::string kappa = "1";
  std::string signature = "lorentz";
  std::string axis;
  std::string petrov_type;
  std::vector<std::string> eigen;
};

int cmd_gen(const GenArgs& a, const GlobalOpts& g) {
  using T = cc::Rational;
  auto space_of = [&](int n) {
    if (a.signature == "lorentz") return cc::ScalarSpace::minkowski(n);
    if (a.signature == "euclidean") return cc::ScalarSpace::euclidean(n);
    throw cc::ParseError("--signature must be lorentz or euclidean");
  };
  cc::CurvatureTensor<T> c = cc::CurvatureTensor<T>::zero(cc::ScalarSpace::euclidean(4));
  if (a.type == "constant") {
    c = cc::constant_curvature(space_of(a.dim), cc::scalar_from_string<T>(a.kappa));
  } else if (a.type == "random") {
    c = cc::random_curvature<T>(space_of(a.dim), g.seed);
  } else if (a.type == "random-even" || a.type == "random-odd") {
    cc::ScalarSpace space = space_of(a.dim);
    std::vector<T> u = parse_axis<T>(a.axis.empty() ? default_axis(a.dim) : a.axis, a.dim);
    cc::Isometry<T> theta = cc::reflection(space, u);
    const int parity = a.type == "random-even" ? 1 : -1;
    std::uint64_t salt = 0;
    for (int attempt = 0; attempt < 64 && c.is_zero(); ++attempt)
      c = cc::random_parity<T>(space, theta, parity, cc::derive_seed(g.seed, salt++));
    if (c.is_zero()) throw cc::Error("gen: could not draw a nonzero tensor");
  } else if (a.type == "cp2") {
    c = cc::fubini_study_cp2<T>();
  } else if (a.type == "cp2-block") {
    c = cc::direct_sum(cc::CurvatureTensor<T>::zero(cc::ScalarSpace::minkowski(4)),
                       cc::fubini_study_cp2<T>());
  } else if (a.type == "petrov") {
    if (a.petrov_type.empty()) throw cc::ParseError("gen --type petrov needs --petrov-type");
    std::vector<cc::Complex<T>> eigen;
    for (const auto& e : a.eigen) {
      std::stringstream ss(e);
      std::string re, im;
      std::getline(ss, re, ',');
      std::getline(ss, im, ',');
      eigen.emplace_back(cc::scalar_from_string<T>(re),
                         im.empty() ? T(0) : cc::scalar_from_string<T>(im));
    }
    c = cc::weyl_of_petrov_type<T>(cc::ScalarSpace::minkowski(4),
                                   cc::petrov_type_from_string(a.petrov_type), eigen);
  } else {
    throw cc::ParseError("unknown --type '" + a.type + "'");
  }
  const std::string mode = g.mode.empty() ? "rational" : g.mode;
  Json doc = cc::tensor_spec_to_json(cc::spec_of_curvature(c, mode));
  write_output(g, doc.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact curvature calculator: tensor decomposition, Pontryagin forms by two "
               "independent routes, parity splitting with vanishing certificates, Petrov "
               "classification, and connected-sum obstruction arithmetic"};
  app.require_subcommand(1);
  app.fallthrough();  // let subcommands use the global flags below
  GlobalOpts g;
  app.add_option("--mode", g.mode, "scalar mode: rational | float64 (default: input's mode)");
  app.add_option("--seed", g.seed, "seed for generator-backed commands (default 42)");
  app.add_option("--tolerance", g.tolerance, "comparison tolerance in float64 mode");
  app.add_option("--out", g.out, "write the report to a file instead of stdout");
  app.add_option("--format", g.format, "output format: text | structured (default text)");

  std::string file, axis, expr_text, sizes = "default";
  std::vector<int> ks;
  std::vector<std::string> alpha_args;
  CertifyArgs certify;
  GenArgs gen;

  CLI::App* sc_decompose = app.add_subcommand(
      "decompose", "Ricci/scalar/Schouten/Weyl decomposition of a curvature tensor");
  sc_decompose->add_option("file", file, "tensor specification (JSON)")->required();

  CLI::App* sc_pontryagin = app.add_subcommand(
      "pontryagin", "Pontryagin forms by both routes, plus optional wedge products");
  sc_pontryagin->add_option("file", file, "tensor specification (JSON)")->required();
  sc_pontryagin->add_option("--k", ks, "form indices (default: all k with 4k <= n)");
  sc_pontryagin->add_option("--alpha", alpha_args,
                            "partition for a wedge product, e.g. --alpha 1,1 (repeatable)");

  CLI::App* sc_petrov = app.add_subcommand(
      "petrov", "Petrov classification of the Weyl part (4d Lorentzian)");
  sc_petrov->add_option("file", file, "tensor specification (JSON)")->required();

  CLI::App* sc_em = app.add_subcommand(
      "em", "electric/magnetic parity split relative to a reflection axis");
  sc_em->add_option("file", file, "tensor specification (JSON)")->required();
  sc_em->add_option("--axis", axis, "reflection axis u1,...,un")->required();

  CLI::App* sc_certify = app.add_subcommand(
      "certify", "machine-checked vanishing certificates for definite-parity tensors");
  sc_certify->add_option("file", certify.file, "tensor specification (JSON)");
  sc_certify->add_option("--gen", certify.gen, "draw tensors: random-even | random-odd");
  sc_certify->add_option("--dim", certify.dim, "dimension for --gen (default 4)");
  sc_certify->add_option("--count", certify.count, "instances for --gen (default 1)");
  sc_certify->add_option("--axis", certify.axis, "reflection axis (default 1,0,...,0)");
  sc_certify->add_option("--alpha", certify.alphas,
                         "partition to certify (repeatable; default: all partitions of n/4)");

  CLI::App* sc_topology = app.add_subcommand(
      "topology", "Euler characteristic / signature arithmetic for connected sums");
  sc_topology->add_option("expr", expr_text, "e.g. \"T4#T4#CP2#CP2\" or \"(2,0)#CP2\"")
      ->required();

  CLI::App* sc_selfcheck =
      app.add_subcommand("selfcheck", "run the full acceptance battery");
  sc_selfcheck->add_option("--sizes", sizes, "battery sizes: default | quick");

  CLI::App* sc_gen =
      app.add_subcommand("gen", "emit a tensor specification document");
  sc_gen->add_option("--type", gen.type,
                     "constant | random | random-even | random-odd | cp2 | cp2-block | petrov")
      ->required();
  sc_gen->add_option("--dim", gen.dim, "dimension (default 4)");
  sc_gen->add_option("--kappa", gen.kappa, "sectional curvature for --type constant");
  sc_gen->add_option("--signature", gen.signature, "lorentz | euclidean (default lorentz)");
  sc_gen->add_option("--axis", gen.axis, "reflection axis for random-even/random-odd");
  sc_gen->add_option("--petrov-type", gen.petrov_type, "O | N | III | D | II | I");
  sc_gen->add_option("--eigen", gen.eigen,
                     "eigenvalue re[,im] for --type petrov (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (sc_decompose->parsed()) return cmd_decompose(file, g);
    if (sc_pontryagin->parsed()) return cmd_pontryagin(file, ks, alpha_args, g);
    if (sc_petrov->parsed()) return cmd_petrov(file, g);
    if (sc_em->parsed()) return cmd_em(file, axis, g);
    if (sc_certify->parsed()) return cmd_certify(certify, g);
    if (sc_topology->parsed()) return cmd_topology(expr_text, g);
    if (sc_selfcheck->parsed()) return cmd_selfcheck(sizes, g);
    if (sc_gen->parsed()) return cmd_gen(gen, g);
    throw cc::Error("no subcommand selected");
  } catch (const cc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const cc::CertificateViolation& e) {
    std::cerr << "certificate violation: " << e.what() << "\n";
    return kExitViolation;
  } catch (const cc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
}
