// ffspace: command-line driver for products of subspaces in function fields.
//
// Reports are JSON on stdout (or the --json file); timing goes to stderr so
// that reports stay byte-identical across runs.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ffspace/ffspace.hpp"

using namespace ffspace;

namespace {

struct Options {
  std::string instance;
  std::string curve = "rational";
  std::string divisor;
  std::string field = "Fp:10007";
  std::string place;
  std::vector<std::string> elements;
  std::uint64_t seed = 42;
  bool quick = false;
  std::string json_out;
  std::string csv_out;
  std::string kind = "rr";
  int n = 5;
};

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_source(const std::string& path) {
  if (path == "-") return read_all(std::cin);
  std::ifstream f(path);
  if (!f) throw InputError("cannot open instance file '" + path + "'");
  return read_all(f);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

/// The instance from -i, or from --field/--curve/-e.
InstanceSpec load_instance(const Options& o) {
  if (!o.instance.empty()) return parse_instance(read_source(o.instance));
  if (o.elements.empty()) throw InputError("no instance: pass -i <file> or at least one -e <expr>");
  InstanceSpec s;
  s.field = parse_field_flag(o.field);
  s.curve = o.curve;
  s.elements = o.elements;
  Json j = to_json(s);
  return parse_instance(j.dump());
}

template <class F>
Place<typename F::Elem> choose_place(const CurvePtr<F>& c, const std::string& id) {
  if (!id.empty()) return place_by_id(*c, id);
  if (auto p = rational_place(*c)) return *p;
  throw InputError("the curve has no place of degree 1 in the search range; pass --place");
}

template <class F>
Json gamma_report(const InstanceSpec& spec, const CurvePtr<F>& c) {
  const auto S = instance_subspace(c, spec);
  const auto S2 = product(S, S);
  Json j;
  j["instance"] = to_json(spec);
  j["dims"] = {{"S", S.dim()}, {"S2", S2.dim()}};
  j["gamma"] = S2.dim() - 2 * S.dim() + 1;
  return j;
}

template <class F>
Json product_report(const InstanceSpec& spec, const CurvePtr<F>& c) {
  const auto S = instance_subspace(c, spec);
  const auto S2 = product(S, S);
  Json j;
  j["instance"] = to_json(spec);
  j["S"] = to_json(S);
  j["S2"] = to_json(S2);
  j["gamma"] = S2.dim() - 2 * S.dim() + 1;
  j["D_S"] = to_json(divisor_of(S));
  return j;
}

template <class F>
Json rr_report(const Options& o, const FieldSpec& fs, const CurvePtr<F>& c) {
  if (o.divisor.empty()) throw InputError("rr needs --divisor");
  const auto D = parse_divisor(c, o.divisor);
  const auto L = rr_space(c, D);
  Json j;
  j["field"] = to_json(fs);
  j["curve"] = c->to_string();
  j["divisor"] = to_json(D);
  j["genus"] = L.genus;
  j["dim"] = L.dim();
  j["expected_dim"] = L.expected_dim ? Json(*L.expected_dim) : Json(nullptr);
  Json basis = Json::array();
  if (L.space)
    for (const auto& e : L.space->basis()) basis.push_back(e.to_string());
  j["basis"] = basis;
  return j;
}

template <class F>
Json lattice_report(const Options& o, const InstanceSpec& spec, const CurvePtr<F>& c) {
  const auto S = instance_subspace(c, spec);
  const auto P = choose_place(c, o.place);
  const auto r = lattice(S, P);
  if (!o.csv_out.empty()) write_text(o.csv_out, dims_csv(r.dims));
  Json j;
  j["instance"] = to_json(spec);
  j["place"] = P.id;
  j["lattice"] = to_json(r);
  return j;
}

template <class F>
Json classify_report(const InstanceSpec& spec, const CurvePtr<F>& c) {
  const auto S = instance_subspace(c, spec);
  const auto r = classify(S);
  Json j;
  j["instance"] = to_json(spec);
  j["dims"] = {{"S", S.dim()}, {"S2", product(S, S).dim()}};
  j["classification"] = to_json(r);
  if (r.place) j["lattice"] = to_json(lattice(S, place_by_id(*c, *r.place)));
  return j;
}

template <class F>
Json generate_report(const Options& o, const FieldSpec& fs, const CurvePtr<F>& c) {
  const auto g = generate_random(parse_gen_kind(o.kind), c, o.n, o.seed);
  Json j = to_json(make_instance(fs, *c, g.elements, o.seed));
  j["ground_truth"] = to_json(g.truth);
  return j;
}

int run_verify(const Options& o) {
  AcceptanceOptions a;
  a.seed = o.seed;
  a.quick = o.quick;
  const auto results = run_acceptance(a, [](const CriterionResult& r) { std::cout << format_line(r) << std::endl; });
  int passed = 0;
  Json lines = Json::array();
  for (const auto& r : results) {
    passed += r.pass;
    lines.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  const int failed = static_cast<int>(results.size()) - passed;
  std::cout << passed << " passed, " << failed << " failed" << std::endl;
  if (!o.json_out.empty()) {
    Json j{{"seed", o.seed}, {"quick", o.quick}, {"passed", passed}, {"failed", failed}, {"criteria", lines}};
    write_text(o.json_out, j.dump(2) + "\n");
  }
  return failed == 0 ? 0 : 1;
}

int run(const std::string& command, const Options& o) {
  if (command == "verify") return run_verify(o);
  Json report;
  if (command == "rr" || command == "generate") {
    const auto fs = parse_field_flag(o.field);
    report = with_field(fs, [&](const auto& K) {
      const auto c = parse_curve(K, o.curve);
      return command == "rr" ? rr_report(o, fs, c) : generate_report(o, fs, c);
    });
  } else {
    const auto spec = load_instance(o);
    report = with_field(spec.field, [&](const auto& K) {
      const auto c = parse_curve(K, spec.curve);
      if (command == "gamma") return gamma_report(spec, c);
      if (command == "product") return product_report(spec, c);
      if (command == "lattice") return lattice_report(o, spec, c);
      return classify_report(spec, c);
    });
  }
  Json out{{"command", command}};
  out.update(report);
  write_text(o.json_out, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Products of subspaces in function fields of genus 0 and 1"};
  app.require_subcommand(1);
  Options o;

  auto instance_flags = [&](CLI::App* sub) {
    sub->add_option("-i,--instance", o.instance, "instance JSON file, or - for stdin");
    sub->add_option("-e,--element", o.elements, "element expression (repeatable; used without -i)");
  };
  auto curve_flags = [&](CLI::App* sub) {
    sub->add_option("--curve", o.curve, "\"rational\" or \"y^2 = <poly in x>\"");
    sub->add_option("--field", o.field, "Fp:<p> or Q");
  };

  std::vector<std::pair<std::string, std::string>> commands{
      {"gamma", "dim S, dim S^2 and the combinatorial genus"},
      {"product", "a basis of S^2 and the minimal divisor D_S"},
      {"rr", "a basis of L(D)"},
      {"lattice", "the lattice S_i S_j at a place of degree 1"},
      {"classify", "structure of S when gamma <= 1"},
      {"verify", "run the twelve acceptance criteria"},
      {"generate", "a random instance with ground truth"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--json", o.json_out, "write the report here instead of stdout");
    if (name == "verify") {
      sub->add_option("--seed", o.seed, "seed for the random suites");
      sub->add_flag("--quick", o.quick, "halve random-instance counts");
      continue;
    }
    curve_flags(sub);
    if (name == "rr") sub->add_option("--divisor", o.divisor, "divisor, e.g. \"5*O\" or \"2*P(0) - Pinf\"")->required();
    if (name == "generate") {
      sub->add_option("--kind", o.kind, "rr, codim1 or free");
      sub->add_option("-n", o.n, "deg D (rr) or dim S (codim1, free)");
      sub->add_option("--seed", o.seed, "generator seed");
    }
    if (name != "rr" && name != "generate") instance_flags(sub);
    if (name == "lattice") {
      sub->add_option("--place", o.place, "place id (default: first place of degree 1)");
      sub->add_option("--csv", o.csv_out, "write the dimension table as CSV");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    code = run(command, o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    code = 2;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    code = 2;
  } catch (const TheoremViolation& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    code = 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 1;
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  std::cerr << command << ": " << dt.count() << " s\n";
  return code;
}
