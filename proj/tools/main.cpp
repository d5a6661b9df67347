// ringstab: exact stabilizability analysis and controller synthesis for
// plants over the supported ring tower. See README.md for the plant-file
// format and the command list.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <string>

#include "ringstab/errors.hpp"
#include "ringstab/plantfile.hpp"
#include "ringstab/report.hpp"

namespace {

using namespace ringstab;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInput = 2;
constexpr int kExitLimit = 3;

struct Options {
  std::string path;
  bool json = false;
  int k_div = 32;
  int radical_bound = 8;
  int max_size = 4;
};

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::DivisibilityBoundExceeded:
    case ErrorCode::RepairFailed:
    case ErrorCode::NoValidMinor:
      return kExitLimit;
    case ErrorCode::NotStabilizable:
      return kExitNo;
    default:
      return kExitInput;
  }
}

void emit(const Options& opt, const Json& j, const std::string& text) {
  if (opt.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

PlantFile load(const Options& opt) {
  plant_size_limit = opt.max_size;
  PlantFile pf = load_plant_file(opt.path);
  if (pf.plant.causality_ideal() && !opt.json)
    std::cout << "note: causality ideal supplied by the plant file is "
                 "trusted to be prime; primality is not verified\n";
  return pf;
}

Json base_json(const std::string& command, const PlantFile& pf) {
  Json j;
  j["command"] = command;
  j["ring"] = json_ring(pf.ring);
  j["inputs"] = pf.plant.inputs();
  j["outputs"] = pf.plant.outputs();
  if (pf.plant.causality_ideal()) {
    j["causality_ideal"] = json_ideal(*pf.plant.causality_ideal());
    j["causality_ideal_trusted_prime"] = true;
  }
  return j;
}

int cmd_minors(const Options& opt) {
  PlantFile pf = load(opt);
  auto [t_ideal, t_minors] = minor_ideal(pf.plant);
  auto [w_ideal, w_minors] = minor_ideal_W(pf.plant);
  Json j = base_json("minors", pf);
  j["t_minors"] = json_minors(t_minors);
  j["t_ideal"] = json_ideal(t_ideal);
  j["w_minors"] = json_minors(w_minors);
  j["w_ideal"] = json_ideal(w_ideal);
  std::ostringstream text;
  text << "minors of T = [N^t D^t]^t:\n";
  for (const auto& [I, v] : t_minors)
    text << "  t" << I.to_string() << " = " << v.to_string() << "\n";
  text << "minors of W = [N~ D~] (common-denominator left fraction):\n";
  for (const auto& [J, v] : w_minors)
    text << "  w" << J.to_string() << " = " << v.to_string() << "\n";
  emit(opt, j, text.str());
  return kExitYes;
}

int cmd_check(const Options& opt) {
  PlantFile pf = load(opt);
  StabilizabilityReport report = is_stabilizable(pf.plant);
  Json j = base_json("check", pf);
  std::ostringstream text;
  if (pf.plant.causality_ideal()) {
    bool causal = is_causal(pf.plant);
    bool strict = is_strictly_causal(pf.plant);
    j["causal"] = causal;
    j["strictly_causal"] = strict;
    j["strict_causality_test"] = "representative-level";
    text << "causal: " << (causal ? "yes" : "no") << "\n";
    text << "strictly causal: " << (strict ? "yes" : "no")
         << " (representative-level test; a negative may be conservative)\n";
  }
  j.update(json_report(report));
  text << text_report(report);
  emit(opt, j, text.str());
  return report.verdict ? kExitYes : kExitNo;
}

int cmd_reduced_minors(const Options& opt) {
  PlantFile pf = load(opt);
  ReducedMinors rm = reduced_minors(pf.plant);
  bool generate = reduced_minors_generate(pf.plant);
  Json j = base_json("reduced-minors", pf);
  j["gcd_of_minors"] = rm.gcd_of_minors.to_string();
  j["reduced_minors"] = json_minors(rm.reduced);
  j["generate_ring"] = generate;
  std::ostringstream text;
  text << "gcd of full-size minors: " << rm.gcd_of_minors.to_string() << "\n";
  for (const auto& [I, v] : rm.reduced)
    text << "  a" << I.to_string() << " = " << v.to_string() << "\n";
  text << "reduced minors generate the ring: " << (generate ? "yes" : "no")
       << "\n";
  emit(opt, j, text.str());
  return generate ? kExitYes : kExitNo;
}

int cmd_elem_factors(const Options& opt) {
  PlantFile pf = load(opt);
  Plant sp = scalar_denominator_form(pf.plant);
  Json factors = Json::object();
  std::ostringstream text;
  auto [t_ideal, minors] = minor_ideal(sp);
  for (const auto& [I, tI] : minors) {
    if (is_zero(tI)) continue;
    RingElement f = elementary_factor(sp, I);
    factors[I.to_string()] = f.to_string();
    text << "  f" << I.to_string() << " = " << f.to_string() << "\n";
  }
  bool coprime = elementary_factors_coprime(pf.plant);
  Json j = base_json("elem-factors", pf);
  j["elementary_factors"] = factors;
  j["coprime"] = coprime;
  text << "elementary factors coprime: " << (coprime ? "yes" : "no") << "\n";
  emit(opt, j, text.str());
  return coprime ? kExitYes : kExitNo;
}

int cmd_gen_elem_factors(const Options& opt) {
  PlantFile pf = load(opt);
  Json lambdas = Json::object();
  std::ostringstream text;
  int width = pf.plant.inputs() + pf.plant.outputs();
  for (const auto& I : all_index_sets(pf.plant.inputs(), width)) {
    Ideal lambda = generalized_elementary_factor(pf.plant, I);
    lambdas[I.to_string()] = json_ideal(lambda);
    text << "  Lambda" << I.to_string() << " = (";
    bool first = true;
    for (const auto& g : lambda.canonical_generators()) {
      if (!first) text << ", ";
      text << g.to_string();
      first = false;
    }
    text << ")\n";
  }
  bool sum_ring = gef_sum_is_ring(pf.plant);
  Json j = base_json("gen-elem-factors", pf);
  j["generalized_elementary_factors"] = lambdas;
  j["sum_is_ring"] = sum_ring;
  text << "sum of generalized elementary factors is the ring: "
       << (sum_ring ? "yes" : "no") << "\n";
  emit(opt, j, text.str());
  return sum_ring ? kExitYes : kExitNo;
}

int cmd_synthesize(const Options& opt) {
  PlantFile pf = load(opt);
  Limits limits{opt.k_div, opt.radical_bound};
  StabilizabilityReport report = is_stabilizable(pf.plant);
  Json j = base_json("synthesize", pf);
  j.update(json_report(report));
  if (!report.verdict) {
    emit(opt, j, text_report(report));
    return kExitNo;
  }
  ControllerCertificate cert = glue_controller(pf.plant, report, limits);
  ControllerCertificate check = verify_stabilizing(pf.plant, cert.C);
  j["certificate"] = json_certificate(cert);
  j["independent_verification"] = check.stable();
  std::ostringstream text;
  text << text_report(report) << text_certificate(cert);
  text << "independent verification: "
       << (check.stable() ? "stabilizing" : "FAILED") << "\n";
  emit(opt, j, text.str());
  return check.stable() ? kExitYes : kExitNo;
}

int cmd_verify(const Options& opt) {
  PlantFile pf = load(opt);
  if (!pf.controller)
    fail(ErrorCode::ParseError, "verify requires a [controller] section");
  ControllerCertificate cert = verify_stabilizing(pf.plant, *pf.controller);
  Json j = base_json("verify", pf);
  j["certificate"] = json_certificate(cert);
  std::ostringstream text;
  text << text_certificate(cert);
  if (cert.det_condition) {
    ProductCheckReport pc = minor_ideal_product_check(pf.plant, *pf.controller);
    j["minor_ideal_product_check"] = json_product_check(pc);
    text << "minor-ideal product check:\n" << text_product_check(pc);
  }
  emit(opt, j, text.str());
  return cert.stable() ? kExitYes : kExitNo;
}

int cmd_hmatrix(const Options& opt) {
  PlantFile pf = load(opt);
  if (!pf.controller)
    fail(ErrorCode::ParseError, "hmatrix requires a [controller] section");
  FracMatrix h = h_matrix(transfer_matrix(pf.plant), *pf.controller);
  Json j = base_json("hmatrix", pf);
  j["h_matrix"] = json_frac_matrix(h);
  std::ostringstream text;
  text << "H(P,C):\n";
  for (int i = 0; i < h.rows(); ++i) {
    text << "  ";
    for (int jj = 0; jj < h.cols(); ++jj) {
      if (jj) text << ", ";
      text << h.at(i, jj).to_string();
    }
    text << "\n";
  }
  emit(opt, j, text.str());
  return kExitYes;
}

int cmd_cross_check(const Options& opt) {
  PlantFile pf = load(opt);
  CrossCheckReport report = radical_cross_checks(pf.plant, opt.radical_bound);
  Json j = base_json("cross-check", pf);
  j.update(json_cross_checks(report));
  emit(opt, j, text_cross_checks(report));
  if (!report.all_ok) return kExitNo;
  if (report.inconclusive) return kExitLimit;
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact feedback-stabilizability analysis and controller synthesis "
      "over commutative rings"};
  app.require_subcommand(1);

  Options opt;
  std::string command;
  for (const auto& [name, help] :
       std::initializer_list<std::pair<const char*, const char*>>{
           {"minors", "full-size minors and minor ideals of T and W"},
           {"check", "quotient-ideal stabilizability test with witnesses"},
           {"reduced-minors", "reduced minors and their generating test (UFD)"},
           {"elem-factors", "elementary factors and their coprimeness (UFD)"},
           {"gen-elem-factors", "generalized elementary factors and their sum"},
           {"synthesize", "construct and verify a stabilizing controller"},
           {"verify", "verify the controller from the plant file"},
           {"hmatrix", "print the closed-loop transfer matrix H(P,C)"},
           {"cross-check", "radical and reduced-minor consistency relations"}}) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("plantfile", opt.path, "plant description file")
        ->required();
    sub->add_flag("--json", opt.json, "machine-readable output");
    sub->add_option("--kdiv", opt.k_div,
                    "divisibility exponent bound for clearing powers");
    sub->add_option("--radical-bound", opt.radical_bound,
                    "power bound for quadratic-ring radical membership");
    sub->add_option("--max-size", opt.max_size, "plant size limit for m and n");
    sub->callback([&command, name = std::string(name)] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitYes : kExitInput;
  }

  try {
    if (command == "minors") return cmd_minors(opt);
    if (command == "check") return cmd_check(opt);
    if (command == "reduced-minors") return cmd_reduced_minors(opt);
    if (command == "elem-factors") return cmd_elem_factors(opt);
    if (command == "gen-elem-factors") return cmd_gen_elem_factors(opt);
    if (command == "synthesize") return cmd_synthesize(opt);
    if (command == "verify") return cmd_verify(opt);
    if (command == "hmatrix") return cmd_hmatrix(opt);
    if (command == "cross-check") return cmd_cross_check(opt);
    std::cerr << "unknown command\n";
    return kExitInput;
  } catch (const ringstab::Error& e) {
    std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what()
              << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
