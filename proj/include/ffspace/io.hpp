#pragma once

/**
 * @file io.hpp
 * @brief JSON instances and reports, CSV dimension tables.
 *
 * Instance schema:
 *   {"field": {"kind": "Fp", "p": 10007} | {"kind": "Q"},
 *    "curve": "rational" | "y^2 = <poly in x>",
 *    "elements": ["<expr>", ...],
 *    "seed": <u64, optional>}
 */

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ffspace/classify.hpp"
#include "ffspace/divisor.hpp"
#include "ffspace/expr.hpp"
#include "ffspace/generate.hpp"
#include "json.hpp"

namespace ffspace {

using Json = nlohmann::ordered_json;

struct FieldSpec {
  bool rational = false;  ///< Q; otherwise F_p
  std::uint64_t p = 10007;

  std::string to_string() const { return rational ? "Q" : "Fp:" + std::to_string(p); }
};

/// "Fp:<p>" or "Q".
inline FieldSpec parse_field_flag(const std::string& s) {
  FieldSpec f;
  if (s == "Q") {
    f.rational = true;
    return f;
  }
  if (s.rfind("Fp:", 0) == 0) {
    const std::string digits = s.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 19)
      throw InputError("bad field '" + s + "' (expected Fp:<p> or Q)");
    f.p = std::stoull(digits);
    PrimeField check(f.p);
    (void)check;
    return f;
  }
  throw InputError("bad field '" + s + "' (expected Fp:<p> or Q)");
}

/// Calls fn with the field descriptor named by `f`.
template <class Fn>
decltype(auto) with_field(const FieldSpec& f, Fn&& fn) {
  if (f.rational) return fn(RationalField{});
  return fn(PrimeField(f.p));
}

struct InstanceSpec {
  FieldSpec field;
  std::string curve = "rational";
  std::vector<std::string> elements;
  std::optional<std::uint64_t> seed;
};

inline Json to_json(const FieldSpec& f) {
  Json j;
  j["kind"] = f.rational ? "Q" : "Fp";
  if (!f.rational) j["p"] = f.p;
  return j;
}

inline Json to_json(const InstanceSpec& s) {
  Json j;
  j["field"] = to_json(s.field);
  j["curve"] = s.curve;
  j["elements"] = s.elements;
  if (s.seed) j["seed"] = *s.seed;
  return j;
}

/// Parses and validates an instance document (syntax, field, curve, and
/// every element expression).
inline InstanceSpec parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw InputError("instance is not valid JSON at " + detail::position(text, at));
  }
  if (!j.is_object()) throw InputError("instance must be a JSON object");
  InstanceSpec s;
  try {
    const auto& f = j.at("field");
    const std::string kind = f.at("kind").get<std::string>();
    if (kind == "Q") {
      s.field.rational = true;
    } else if (kind == "Fp") {
      s.field.p = f.contains("p") ? f.at("p").get<std::uint64_t>() : 10007;
    } else {
      throw InputError("field kind must be \"Fp\" or \"Q\", got \"" + kind + "\"");
    }
    s.curve = j.at("curve").get<std::string>();
    s.elements = j.at("elements").get<std::vector<std::string>>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed instance: ") + e.what());
  }
  if (s.elements.empty()) throw InputError("instance has no elements");
  with_field(s.field, [&](const auto& K) {
    const auto c = parse_curve(K, s.curve);
    for (const auto& e : s.elements) parse_element(c, e);
    return 0;
  });
  return s;
}

template <class F>
Subspace<F> instance_subspace(const CurvePtr<F>& c, const InstanceSpec& s) {
  std::vector<Element<F>> g;
  for (const auto& e : s.elements) g.push_back(parse_element(c, e));
  return Subspace<F>::span(g);
}

template <class F>
InstanceSpec make_instance(const FieldSpec& field, const Curve<F>& c, const std::vector<Element<F>>& els,
                           std::optional<std::uint64_t> seed) {
  InstanceSpec s;
  s.field = field;
  s.curve = c.to_string();
  for (const auto& e : els) s.elements.push_back(e.to_string());
  s.seed = seed;
  return s;
}

template <class F>
Json to_json(const Divisor<F>& d) {
  Json arr = Json::array();
  for (const auto& [id, t] : d.terms()) arr.push_back({{"place", id}, {"coeff", t.coeff}, {"degree", t.place.degree}});
  return {{"text", d.to_string()}, {"degree", d.degree()}, {"terms", arr}};
}

template <class F>
Json to_json(const Subspace<F>& s) {
  Json basis = Json::array();
  for (const auto& e : s.basis()) basis.push_back(e.to_string());
  return {{"dim", s.dim()}, {"basis", basis}};
}

template <class F>
Json to_json(const LatticeReport<F>& r) {
  Json heavy = Json::array();
  for (const auto& e : r.heavy_edges)
    heavy.push_back({{"from", {e.i, e.j}}, {"direction", e.horizontal ? "horizontal" : "vertical"}, {"weight", e.weight}});
  Json j;
  j["n"] = r.n;
  j["gamma"] = r.gamma;
  j["dims"] = r.dims;
  j["p_index"] = r.p_index ? Json(*r.p_index) : Json(nullptr);
  j["heavy_edges"] = heavy;
  j["valuations"] = r.basis.valuations;
  j["weights_positive"] = r.weights_positive;
  j["paths_consistent"] = r.paths_consistent;
  j["codim1_squares_checked"] = r.codim1_checked;
  j["codim1_holds"] = r.codim1_holds;
  j["dsi_holds"] = r.dsi_holds ? Json(*r.dsi_holds) : Json(nullptr);
  return j;
}

template <class F>
Json to_json(const ClassificationResult<F>& r) {
  Json form;
  form["kind"] = form_name<F>(r.form);
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, GeomProgression<F>>) {
          form["a"] = f.a.to_string();
          form["x"] = f.x.to_string();
        } else if constexpr (std::is_same_v<T, Genus1RR<F>> || std::is_same_v<T, CodimOneUnnormalized<F>>) {
          form["D"] = to_json(f.D);
        } else if constexpr (std::is_same_v<T, Genus0TypeI<F>> || std::is_same_v<T, Genus0TypeII<F>>) {
          form["t"] = f.t.to_string();
          form["alpha"] = f.alpha.to_string();
        } else {
          form["reason"] = f.reason;
        }
      },
      r.form);
  Json j;
  j["n"] = r.n;
  j["gamma"] = r.gamma;
  j["genus_detected"] = r.genus_detected ? Json(*r.genus_detected) : Json("unknown");
  j["D_S"] = to_json(r.D_S);
  j["codim_in_LD"] = r.codim_in_LD;
  j["place"] = r.place ? Json(*r.place) : Json(nullptr);
  j["p_index"] = r.p_index ? Json(*r.p_index) : Json(nullptr);
  j["relation"] = r.relation ? Json(to_string(*r.relation)) : Json(nullptr);
  if (r.conjecture_bound) j["conjecture_bound_holds"] = *r.conjecture_bound;
  j["scale"] = r.scale.to_string();
  j["form"] = form;
  j["notes"] = r.notes;
  return j;
}

inline Json to_json(const GroundTruth& t) {
  Json j;
  j["kind"] = to_string(t.kind);
  j["n"] = t.n;
  if (t.genus) j["genus"] = *t.genus;
  if (t.gamma) j["gamma"] = *t.gamma;
  if (t.codim) j["codim"] = *t.codim;
  if (t.divisor) j["divisor"] = *t.divisor;
  if (t.type) j["type"] = *t.type;
  if (t.alpha) j["alpha"] = *t.alpha;
  j["attempts"] = t.attempts;
  return j;
}

/// dims[i][j] as CSV with a header row.
inline std::string dims_csv(const std::vector<std::vector<int>>& dims) {
  std::ostringstream out;
  out << "i";
  for (std::size_t j = 1; j <= dims.size(); ++j) out << ",S" << j;
  out << "\n";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    out << "S" << i + 1;
    for (int v : dims[i]) out << "," << v;
    out << "\n";
  }
  return out.str();
}

}  // namespace ffspace
