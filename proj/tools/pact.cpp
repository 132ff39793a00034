// pact — partial group actions, globalization, commensuration, and the
// two-step regularization pipeline on finite Alexandrov models, with
// replayable certificates for every computed claim.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pact/pact.hpp"

namespace {

// 0 ok, 2 usage/parse, 3 semantic/precondition, 4 claim failed / rejected,
// 5 bounded search or truncation, 7 internal
int exit_code_of(pact::errc code) {
  using pact::errc;
  switch (code) {
    case errc::parse_error:
    case errc::unknown_symbol:
      return 2;
    case errc::no_witness_within_bound:
    case errc::transfixer_failed:
      return 5;
    case errc::verification_failed:
      return 4;
    case errc::internal:
      return 7;
    default:
      return 3;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) pact::fail(pact::errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) pact::fail(pact::errc::parse_error, "cannot open '" + out_path + "' for writing");
  out << text;
}

// Loads a user transfixer certificate: `in POINT` lines for finite backends,
// or an `invariant base ... [delta ...]` line for the symbolic one.
void load_transfixer_file(const std::string& path, pact::CommandSpec& spec) {
  for (const auto& line : pact::verifydetail::split_lines(read_file(path))) {
    auto toks = pact::verifydetail::tokens_of(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "in" && toks.size() == 2) {
      spec.transfixer_points.push_back(toks[1]);
    } else if (toks[0] == "invariant" && toks.size() >= 3 && toks[1] == "base") {
      std::vector<std::int64_t> delta;
      for (std::size_t k = 4; k < toks.size(); ++k) delta.push_back(std::stoll(toks[k]));
      spec.transfixer_z =
          pact::SymbolicZSet::make(pact::SymbolicZSet::base_from_name(toks[2]), delta);
    } else {
      pact::fail(pact::errc::parse_error, "bad transfixer line '" + line + "'");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partial actions, globalization, and FW-style regularization "
               "on finite models"};
  app.require_subcommand(1);

  std::string instance_path, out_path, cert_path, transfixer_file, example_name;
  pact::CommandSpec spec;

  auto add_run = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("instance", instance_path, "instance file")->required();
    sub->add_option("--out", out_path, "write the certificate here (default: stdout)");
    return sub;
  };

  CLI::App* validate = add_run("validate", "check the partial-action axioms");
  validate->add_option("--bound", spec.bound, "word-length bound for free/cyclic self-tests")
      ->default_val(3);

  CLI::App* globalize = add_run("globalize", "build the universal globalization");
  globalize->add_option("--radius", spec.radius, "exploration radius for infinite groups")
      ->default_val(4);

  CLI::App* commensurated = add_run("commensurated", "decide commensuration of a subset");
  commensurated->add_option("--subset", spec.subset, "subset name")->default_val("X");
  commensurated->add_option("--radius", spec.radius, "globalization radius")->default_val(4);

  CLI::App* transfix = add_run("transfix", "find an invariant set at finite distance");
  transfix->add_option("--subset", spec.subset, "subset name")->default_val("X");
  transfix->add_option("--radius", spec.radius, "globalization radius")->default_val(4);
  transfix->add_option("--transfixer", spec.transfixer, "exact | cert | symbolic")
      ->default_val("exact");
  transfix->add_option("--cert-file", transfixer_file, "invariant-set file for --transfixer cert");

  CLI::App* neumann = add_run("neumann", "search a translate disjoint from a finite set");
  neumann->add_option("--subset", spec.subset, "finite subset name")->default_val("F");
  neumann->add_option("--radius", spec.radius, "globalization radius")->default_val(4);
  neumann->add_option("--bound", spec.bound, "word-length search bound")->default_val(8);

  CLI::App* core = add_run("noetherian-core", "dense invariant open with movable pairs");
  core->add_option("--subset", spec.subset, "dense open subset name")->default_val("X");

  CLI::App* reg = add_run("regularize", "full separation pipeline with certificate");
  reg->add_option("--radius", spec.radius, "globalization radius")->default_val(4);
  reg->add_option("--bound", spec.bound, "Neumann search bound")->default_val(16);
  reg->add_option("--transfixer", spec.transfixer, "exact | cert | symbolic")
      ->default_val("exact");
  reg->add_option("--cert-file", transfixer_file, "invariant-set file for --transfixer cert");

  CLI::App* verify = app.add_subcommand("verify", "re-check a certificate");
  verify->add_option("certificate", cert_path, "certificate file")->required();

  CLI::App* example = app.add_subcommand("example", "write a generated example instance");
  example->add_option("name", example_name, "example name (see --list)");
  bool list_examples = false;
  example->add_flag("--list", list_examples, "list available example names");
  example->add_option("--out", out_path, "write the instance here (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (example->parsed()) {
      if (list_examples) {
        for (const auto& n : pact::example_names()) std::cout << n << "\n";
        return 0;
      }
      pact::require(!example_name.empty(), pact::errc::parse_error,
                    "example needs a name (or --list)");
      write_output(pact::serialize_instance(pact::gen_example(example_name)), out_path);
      return 0;
    }
    if (verify->parsed()) {
      pact::VerifyResult res = pact::verify_certificate(read_file(cert_path));
      if (res.ok) {
        std::cout << "verify: accepted\n";
        return 0;
      }
      std::cout << "verify: rejected\n";
      for (const auto& r : res.reasons) std::cout << "  " << r << "\n";
      return 4;
    }

    for (CLI::App* sub : {validate, globalize, commensurated, transfix, neumann, core, reg})
      if (sub->parsed()) spec.name = sub->get_name();
    // --transfixer cert:FILE is shorthand for --transfixer cert --cert-file FILE
    if (spec.transfixer.rfind("cert:", 0) == 0) {
      transfixer_file = spec.transfixer.substr(5);
      spec.transfixer = "cert";
    }
    if (spec.transfixer == "cert")
      pact::require(!transfixer_file.empty(), pact::errc::parse_error,
                    "--transfixer cert needs --cert-file FILE (or cert:FILE)");
    if (!transfixer_file.empty()) load_transfixer_file(transfixer_file, spec);

    pact::Instance inst = pact::parse_instance(read_file(instance_path));
    pact::CommandOutcome outcome = pact::run_command(inst, spec);
    write_output(outcome.certificate, out_path);
    return outcome.exit_family;
  } catch (const pact::error& e) {
    std::cerr << "pact: " << e.what() << "\n";
    return exit_code_of(e.code());
  } catch (const std::exception& e) {
    std::cerr << "pact: " << e.what() << "\n";
    return 7;
  }
}
