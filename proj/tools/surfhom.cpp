#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "surfhom/surfhom.hpp"

using namespace surfhom;

namespace {

constexpr int kPass = 0;
constexpr int kClaimFailure = 1;
constexpr int kUsage = 2;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ExampleBundle load_or_usage(const std::string& name) {
  try {
    return load_example(name);
  } catch (const ValidationError& e) {
    throw Usage(e.what());
  }
}

Modulus modulus_or_usage(std::int64_t p) {
  try {
    return Modulus::of(p);
  } catch (const ValidationError& e) {
    throw Usage(e.what());
  }
}

int cmd_verify(const std::string& name, bool json, std::int64_t p, bool timing) {
  Modulus mod = modulus_or_usage(p);
  std::vector<std::string> names;
  if (name == "all") {
    names = example_names();
  } else {
    load_or_usage(name);
    names = {name};
  }
  bool ok = true;
  nlohmann::json all = nlohmann::json::array();
  for (const auto& n : names) {
    VerificationReport r = verify_example(n, mod, timing);
    ok = ok && r.pass();
    if (json)
      all.push_back(report_to_json(r));
    else
      std::cout << report_to_text(r);
  }
  if (json) std::cout << (name == "all" ? all : all.front()).dump(2) << "\n";
  return ok ? kPass : kClaimFailure;
}

int cmd_export(const std::string& name, const std::string& format) {
  ExampleBundle b = load_or_usage(name);
  if (format == "json")
    std::cout << export_json(b).dump(2) << "\n";
  else
    std::cout << bundle_to_dot(b);
  return kPass;
}

int cmd_minima(const std::string& name, const std::string& procedure, std::int64_t p, const std::string& bound_text) {
  Modulus mod = modulus_or_usage(p);
  ExampleBundle b = load_or_usage(name);
  Rational bound;
  try {
    bound = Rational::parse(bound_text);
  } catch (const std::exception& e) {
    throw Usage("bad --bound '" + bound_text + "': " + e.what());
  }
  if (!b.reference_basis) throw Usage("example '" + name + "' has no reference basis for minima");
  std::vector<Rational> lengths = b.weights ? *b.weights : std::vector<Rational>(b.ribbon.num_edges(), Rational(1));
  WeightedGraph G(b.ribbon, lengths);
  auto cs = enumerate_cycles(G, bound);
  if (cs.empty()) throw Usage("no closed edge paths of length <= " + bound.str());
  attach_classes(cs, *b.reference_basis);
  label_cycles(cs, b.ribbon, b.named_walks());
  MinimaTrace t = procedure == "I" ? successive_minima_I(cs, mod, b.reference_basis->size())
                                   : successive_minima_II(cs, mod);
  nlohmann::json j = trace_to_json(t);
  j["example"] = name;
  j["bound"] = bound.str();
  std::cout << j.dump(2) << "\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology bases on ribbon surfaces: verification and export"};
  app.require_subcommand(1);

  std::string name, format, procedure, bound;
  std::int64_t modulus = 0;
  bool json = false, timing = false;

  auto* verify = app.add_subcommand("verify", "Check every expectation of a catalog example");
  verify->add_option("name", name, "Example name or 'all'")->required();
  verify->add_flag("--json", json, "Print the report as JSON");
  verify->add_option("--modulus", modulus, "0 for Z, or a prime p for Z/p");
  verify->add_flag("--timing", timing, "Include wall-clock timing in the report");

  auto* exp = app.add_subcommand("export", "Print a catalog example as JSON or DOT");
  exp->add_option("name", name, "Example name")->required();
  exp->add_option("--format", format, "json or dot")->required()->check(CLI::IsMember({"json", "dot"}));

  auto* minima = app.add_subcommand("minima", "Run a successive minima procedure and print its trace");
  minima->add_option("name", name, "Example name")->required();
  minima->add_option("--procedure", procedure, "I or II")->required()->check(CLI::IsMember({"I", "II"}));
  minima->add_option("--modulus", modulus, "0 for Z, or a prime p for Z/p");
  minima->add_option("--bound", bound, "Length bound p/q for candidate enumeration")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*verify) return cmd_verify(name, json, modulus, timing);
    if (*exp) return cmd_export(name, format);
    if (*minima) return cmd_minima(name, procedure, modulus, bound);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kClaimFailure;
  }
  return kUsage;
}
