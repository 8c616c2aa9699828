#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gwpo/certificate.hpp"
#include "gwpo/prover.hpp"
#include "gwpo/tpdb.hpp"

namespace {

constexpr int kDecided = 0;
constexpr int kUndecided = 1;
constexpr int kUsage = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Termination prover for first-order rewrite systems based on weighted path orders"};
  app.require_subcommand(0, 1);

  std::string order_name = "gwpo";
  std::string interp_name;
  std::int64_t coeff_bound = 4;
  std::string solver_cmd = "z3";
  bool solver_stdin = false;
  double timeout = 60.0;
  bool proof = false;
  std::string dump_smt;
  bool strict = false;
  std::string file;

  app.add_option("--order", order_name, "kbo, lpo, wpo or gwpo")->check(CLI::IsMember({"kbo", "lpo", "wpo", "gwpo"}));
  app.add_option("--interp", interp_name, "linear or maxplus (default: maxplus for lpo, linear otherwise)")
      ->check(CLI::IsMember({"linear", "maxplus", "max/plus"}));
  app.add_option("--coeff-bound", coeff_bound, "bound on interpretation constants")->check(CLI::Range(1, 1 << 20));
  app.add_option("--solver", solver_cmd, "SMT solver command line; the script path is appended");
  app.add_flag("--solver-stdin", solver_stdin, "feed the script on stdin instead of a path argument");
  app.add_option("--timeout", timeout, "seconds per problem")->check(CLI::PositiveNumber);
  app.add_flag("--proof", proof, "print the certificate and derivations after the answer");
  app.add_option("--dump-smt", dump_smt, "write the SMT-LIB script to this path");
  app.add_flag("--strict", strict, "exit with status 2 on parse errors");
  app.add_option("FILE", file, "problem in TPDB format");

  auto* bench = app.add_subcommand("bench", "run configurations over a directory of .trs files");
  unsigned jobs = 1;
  std::string configs = "kbo,wpo-linear,gwpo-linear,lpo,wpo-maxplus,gwpo-maxplus";
  std::string csv_path;
  std::string dir;
  bench->add_option("--jobs", jobs, "attempts in flight")->check(CLI::Range(1u, 256u));
  bench->add_option("--configs", configs, "comma-separated configuration names");
  bench->add_option("--timeout", timeout, "seconds per problem")->check(CLI::PositiveNumber);
  bench->add_option("--solver", solver_cmd, "SMT solver command line");
  bench->add_option("--coeff-bound", coeff_bound, "bound on interpretation constants")->check(CLI::Range(1, 1 << 20));
  bench->add_option("--csv", csv_path, "write per-attempt rows here");
  bench->add_option("DIR", dir, "corpus directory")->required();

  auto* verify = app.add_subcommand("verify", "check a certificate against a problem");
  std::string cert_path;
  std::string problem_path;
  verify->add_option("CERT", cert_path, "certificate file")->required();
  verify->add_option("FILE", problem_path, "problem in TPDB format")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  gwpo::ProverConfig cfg;
  cfg.coeff_bound = coeff_bound;
  cfg.solver.command = gwpo::SolverConfig::split_command(solver_cmd);
  cfg.solver.use_stdin = solver_stdin;
  cfg.timeout_seconds = timeout;
  if (cfg.solver.command.empty()) {
    std::cerr << "error: empty --solver command\n";
    return kUsage;
  }

  if (*bench) {
    std::vector<gwpo::CorpusConfig> selected;
    for (const auto& name : split_list(configs)) {
      auto c = gwpo::parse_corpus_config(name);
      if (!c) {
        std::cerr << "error: unknown configuration '" << name << "'\n";
        return kUsage;
      }
      selected.push_back(*c);
    }
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
      std::cerr << "error: " << dir << " is not a directory\n";
      return kUsage;
    }
    auto report = gwpo::run_corpus(dir, selected, cfg, jobs);
    std::cout << report.table();
    if (!csv_path.empty()) {
      std::ofstream out(csv_path, std::ios::binary);
      out << report.csv();
      if (!out) {
        std::cerr << "error: cannot write " << csv_path << "\n";
        return kUsage;
      }
    }
    return kDecided;
  }

  if (*verify) {
    auto cert_text = read_file(cert_path);
    auto problem_text = read_file(problem_path);
    if (!cert_text || !problem_text) {
      std::cerr << "error: cannot read " << (!cert_text ? cert_path : problem_path) << "\n";
      return kUsage;
    }
    try {
      gwpo::Trs trs = gwpo::parse_trs(*problem_text);
      gwpo::Certificate cert = gwpo::parse_certificate(*cert_text, trs);
      auto result = gwpo::verify_certificate(trs, cert);
      if (!result.ok) {
        std::cout << "REJECTED\n" << result.diagnostic << "\n";
        return kUndecided;
      }
      std::cout << "VERIFIED\n";
      for (std::size_t i = 0; i < result.derivations.size(); ++i)
        std::cout << "\nrule " << (i + 1) << ": " << trs.rules[i].to_string() << "\n" << result.derivations[i].to_string(1);
      return kDecided;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
  }

  if (file.empty()) {
    std::cerr << app.help();
    return kUsage;
  }
  cfg.order = *gwpo::parse_order_kind(order_name);
  if (interp_name.empty())
    cfg.interp = cfg.order == gwpo::OrderKind::lpo ? gwpo::InterpKind::maxplus : gwpo::InterpKind::linear;
  else
    cfg.interp = *gwpo::parse_interp_kind(interp_name);
  if ((cfg.order == gwpo::OrderKind::kbo && cfg.interp != gwpo::InterpKind::linear) ||
      (cfg.order == gwpo::OrderKind::lpo && cfg.interp != gwpo::InterpKind::maxplus)) {
    std::cerr << "error: --order " << order_name << " does not combine with --interp " << interp_name << "\n";
    return kUsage;
  }
  cfg.dump_smt = dump_smt;

  auto text = read_file(file);
  if (!text) {
    std::cerr << "error: cannot read " << file << "\n";
    return kUsage;
  }
  gwpo::ProofResult result = gwpo::prove_text(*text, cfg);
  std::optional<gwpo::Trs> trs;
  if (!result.input_error) trs = gwpo::parse_trs(*text);
  std::cout << gwpo::format_result(result, trs ? &*trs : nullptr, proof);
  if (!result.diagnostic.empty() && result.answer != gwpo::Answer::yes) std::cerr << result.diagnostic << "\n";

  if (result.input_error && strict) return kUsage;
  switch (result.answer) {
    case gwpo::Answer::yes:
    case gwpo::Answer::no: return kDecided;
    default: return kUndecided;
  }
}
