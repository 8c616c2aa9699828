#include "gwpo/prover.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "gwpo/tpdb.hpp"

namespace gwpo {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

const char* to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "YES";
    case Answer::no: return "NO";
    case Answer::maybe: return "MAYBE";
    case Answer::timeout: return "TIMEOUT";
  }
  return "MAYBE";
}

SoundnessCounters& soundness_counters() {
  static SoundnessCounters counters;
  return counters;
}

ProofResult prove(const Trs& trs, const ProverConfig& cfg) {
  ProofResult res;
  const auto start = Clock::now();

  VariableCondition vc = encode_variable_condition(trs);
  if (vc.violated) {
    res.answer = Answer::no;
    res.diagnostic = vc.reason;
    return res;
  }

  SearchSpace space;
  try {
    space = SearchSpace::make(cfg.order, cfg.interp, cfg.coeff_bound);
  } catch (const std::invalid_argument& e) {
    res.diagnostic = e.what();
    return res;
  }

  auto t0 = Clock::now();
  std::optional<Encoding> enc;
  try {
    enc = encode_orientation(trs, space);
  } catch (const EncodeError& e) {
    res.timings.encode_ms = ms_since(t0);
    res.diagnostic = std::string("encoding failed: ") + e.what();
    return res;
  }
  const std::string script = emit_smtlib(enc->system, cfg.solver.logic);
  res.timings.encode_ms = ms_since(t0);

  if (!cfg.dump_smt.empty()) {
    std::ofstream out(cfg.dump_smt, std::ios::binary);
    out << script;
    if (!out) res.diagnostic = "cannot write " + cfg.dump_smt + "; ";
  }

  const double left = cfg.timeout_seconds - std::chrono::duration<double>(Clock::now() - start).count();
  if (left <= 0) {
    res.answer = Answer::timeout;
    res.diagnostic += "time limit reached before solving";
    return res;
  }
  SolverConfig scfg = cfg.solver;
  scfg.timeout_seconds = left;

  t0 = Clock::now();
  SolverVerdict verdict = solve(script, scfg);
  res.timings.solve_ms = ms_since(t0);

  if (std::holds_alternative<Timeout>(verdict)) {
    res.answer = Answer::timeout;
    res.diagnostic += "solver timed out";
    return res;
  }
  if (std::holds_alternative<Unsat>(verdict)) {
    res.diagnostic += "no " + space.name() + " proof within the search space (unsat)";
    return res;
  }
  if (std::holds_alternative<Unknown>(verdict)) {
    res.diagnostic += "solver answered unknown";
    return res;
  }
  if (const auto* err = std::get_if<SolverError>(&verdict)) {
    res.diagnostic += "solver error: " + err->diagnostic;
    return res;
  }

  res.solver_sat = true;
  soundness_counters().sat++;
  t0 = Clock::now();
  Certificate cert;
  try {
    DecodedParameters params = decode_model(std::get<Sat>(verdict).model, space, enc->system);
    cert = Certificate{cfg.order, std::move(params.algebra), std::move(params.precedence)};
  } catch (const DecodeError& e) {
    res.timings.verify_ms = ms_since(t0);
    soundness_counters().rejected++;
    res.diagnostic += std::string("decoding failed: ") + e.what();
    return res;
  }
  if (cfg.tamper) cfg.tamper(cert);

  VerifyResult vr = verify_certificate(trs, cert);
  res.timings.verify_ms = ms_since(t0);
  if (!vr.ok) {
    soundness_counters().rejected++;
    res.diagnostic += "verification failed: " + vr.diagnostic;
    return res;
  }
  soundness_counters().verified++;
  res.verified = true;
  res.answer = Answer::yes;
  res.certificate = std::move(cert);
  res.derivations = std::move(vr.derivations);
  return res;
}

ProofResult prove_text(std::string_view text, const ProverConfig& cfg) {
  const auto t0 = Clock::now();
  Trs trs;
  try {
    trs = parse_trs(text);
  } catch (const ParseError& e) {
    ProofResult res;
    res.input_error = true;
    res.timings.parse_ms = ms_since(t0);
    res.diagnostic = std::string("parse error: ") + e.what();
    return res;
  }
  const double parse_ms = ms_since(t0);
  ProofResult res = prove(trs, cfg);
  res.timings.parse_ms = parse_ms;
  return res;
}

ProofResult prove_file(const std::filesystem::path& file, const ProverConfig& cfg) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    ProofResult res;
    res.input_error = true;
    res.diagnostic = "cannot read " + file.string();
    return res;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return prove_text(buf.str(), cfg);
}

std::string format_result(const ProofResult& r, const Trs* trs, bool with_proof) {
  std::ostringstream out;
  out << to_string(r.answer) << "\n";
  if (!with_proof) return out.str();
  out << "\n";
  if (r.answer == Answer::yes && r.certificate) {
    out << print_certificate(*r.certificate);
    for (std::size_t i = 0; i < r.derivations.size(); ++i) {
      out << ";\n; rule " << (i + 1);
      if (trs != nullptr && i < trs->rules.size()) out << ": " << trs->rules[i].to_string();
      out << "\n";
      std::istringstream tree(r.derivations[i].to_string(1));
      for (std::string line; std::getline(tree, line);) out << ";" << line << "\n";
    }
  } else {
    out << "; " << r.diagnostic << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Corpus harness

std::vector<CorpusConfig> standard_configs() {
  return {
      {"kbo", OrderKind::kbo, InterpKind::linear},
      {"wpo-linear", OrderKind::wpo, InterpKind::linear},
      {"gwpo-linear", OrderKind::gwpo, InterpKind::linear},
      {"lpo", OrderKind::lpo, InterpKind::maxplus},
      {"wpo-maxplus", OrderKind::wpo, InterpKind::maxplus},
      {"gwpo-maxplus", OrderKind::gwpo, InterpKind::maxplus},
  };
}

std::optional<CorpusConfig> parse_corpus_config(const std::string& name) {
  for (auto& c : standard_configs())
    if (c.name == name) return c;
  return std::nullopt;
}

const CorpusEntry* CorpusReport::find(const std::string& file, const std::string& config) const {
  for (const auto& e : entries)
    if (e.file == file && e.config == config) return &e;
  return nullptr;
}

std::string CorpusReport::table() const {
  std::ostringstream out;
  std::size_t w = 10;
  for (const auto& c : configs) w = std::max(w, c.name.size() + 2);
  auto row = [&](const std::string& label, auto get) {
    out << std::left << std::setw(12) << label;
    for (const auto& c : configs) {
      auto it = counts.find(c.name);
      out << std::right << std::setw(static_cast<int>(w)) << (it == counts.end() ? 0 : get(it->second));
    }
    out << "\n";
  };
  out << std::left << std::setw(12) << "";
  for (const auto& c : configs) out << std::right << std::setw(static_cast<int>(w)) << c.name;
  out << "\n";
  row("proved", [](const ConfigCounts& k) { return k.proved; });
  row("NO", [](const ConfigCounts& k) { return k.disproved; });
  row("maybe", [](const ConfigCounts& k) { return k.maybe; });
  row("timeouts", [](const ConfigCounts& k) { return k.timeouts; });
  row("errors", [](const ConfigCounts& k) { return k.errors; });
  out << "files: " << files.size() << ", wall time: " << std::fixed << std::setprecision(1) << wall_ms / 1000.0
      << " s\n";
  return out.str();
}

std::string CorpusReport::csv() const {
  std::ostringstream out;
  out << "file,config,answer,encode_ms,solve_ms,verify_ms\n";
  out << std::fixed << std::setprecision(3);
  for (const auto& e : entries) {
    std::string file = e.file;
    if (file.find_first_of(",\"") != std::string::npos) {
      std::string q = "\"";
      for (char ch : file) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      file = q + "\"";
    }
    const std::string answer = e.result.input_error ? "ERROR" : to_string(e.result.answer);
    out << file << "," << e.config << "," << answer << "," << e.result.timings.encode_ms << ","
        << e.result.timings.solve_ms << "," << e.result.timings.verify_ms << "\n";
  }
  return out.str();
}

CorpusReport run_corpus(const std::filesystem::path& dir, const std::vector<CorpusConfig>& configs,
                        const ProverConfig& base, unsigned jobs) {
  namespace fs = std::filesystem;
  const auto start = Clock::now();
  CorpusReport report;
  report.configs = configs;
  for (const auto& c : configs) report.counts[c.name];

  std::error_code ec;
  if (fs::is_directory(dir, ec)) {
    for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::recursive_directory_iterator();
         it.increment(ec)) {
      if (it->path().extension() == ".trs" && !it->is_directory(ec))
        report.files.push_back(fs::relative(it->path(), dir, ec).generic_string());
    }
  }
  std::sort(report.files.begin(), report.files.end());

  report.entries.resize(report.files.size() * configs.size());
  for (std::size_t f = 0; f < report.files.size(); ++f)
    for (std::size_t c = 0; c < configs.size(); ++c) {
      auto& e = report.entries[f * configs.size() + c];
      e.file = report.files[f];
      e.config = configs[c].name;
    }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < report.entries.size();) {
      auto& e = report.entries[i];
      const auto& c = configs[i % configs.size()];
      ProverConfig cfg = base;
      cfg.order = c.order;
      cfg.interp = c.interp;
      cfg.dump_smt.clear();
      try {
        e.result = prove_file(dir / e.file, cfg);
      } catch (const std::exception& ex) {
        e.result = ProofResult{};
        e.result.input_error = true;
        e.result.diagnostic = std::string("internal error: ") + ex.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(report.entries.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
  }

  for (const auto& e : report.entries) {
    auto& k = report.counts[e.config];
    if (e.result.input_error)
      k.errors++;
    else if (e.result.answer == Answer::yes)
      k.proved++;
    else if (e.result.answer == Answer::no)
      k.disproved++;
    else if (e.result.answer == Answer::timeout)
      k.timeouts++;
    else
      k.maybe++;
  }
  report.wall_ms = ms_since(start);
  return report;
}

}  // namespace gwpo
