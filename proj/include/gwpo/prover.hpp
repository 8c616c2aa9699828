#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gwpo/certificate.hpp"
#include "gwpo/encoder.hpp"
#include "gwpo/smt.hpp"

namespace gwpo {

enum class Answer { yes, no, maybe, timeout };

const char* to_string(Answer a);

struct ProverConfig {
  OrderKind order = OrderKind::gwpo;
  InterpKind interp = InterpKind::linear;
  std::int64_t coeff_bound = 4;
  SolverConfig solver;             // solver.timeout_seconds is overridden
  double timeout_seconds = 60.0;   // whole attempt, parse to verify
  std::string dump_smt;            // write the script here when non-empty
  /// Called on the decoded certificate before verification. Tests use it to
  /// corrupt a model and watch the answer drop to MAYBE.
  std::function<void(Certificate&)> tamper;
};

struct Timings {
  double parse_ms = 0;
  double encode_ms = 0;
  double solve_ms = 0;
  double verify_ms = 0;
};

struct ProofResult {
  Answer answer = Answer::maybe;
  std::optional<Certificate> certificate;  // set only for YES
  std::vector<Derivation> derivations;     // one per rule for YES
  Timings timings;
  std::string diagnostic;
  bool input_error = false;  // unreadable or unparseable problem
  bool solver_sat = false;
  bool verified = false;
};

/// Pipeline on a parsed system: variable condition, encode, solve, decode,
/// verify. YES is returned only after verify_certificate succeeds.
ProofResult prove(const Trs& trs, const ProverConfig& cfg);
ProofResult prove_text(std::string_view text, const ProverConfig& cfg);
ProofResult prove_file(const std::filesystem::path& file, const ProverConfig& cfg);

/// Answer line, blank line, then the certificate and per-rule derivations
/// (derivation lines start with ';' so the block parses as a certificate).
std::string format_result(const ProofResult& r, const Trs* trs, bool with_proof);

/// Process-wide tally of solver SAT answers and their verification outcome.
struct SoundnessCounters {
  std::atomic<std::uint64_t> sat{0};
  std::atomic<std::uint64_t> verified{0};
  std::atomic<std::uint64_t> rejected{0};
};
SoundnessCounters& soundness_counters();

struct CorpusConfig {
  std::string name;  // kbo, wpo-linear, gwpo-linear, lpo, wpo-maxplus, gwpo-maxplus
  OrderKind order;
  InterpKind interp;
};

/// The six standard columns in table order.
std::vector<CorpusConfig> standard_configs();
std::optional<CorpusConfig> parse_corpus_config(const std::string& name);

struct CorpusEntry {
  std::string file;  // relative to the corpus directory
  std::string config;
  ProofResult result;
};

struct ConfigCounts {
  std::size_t proved = 0;
  std::size_t disproved = 0;
  std::size_t maybe = 0;
  std::size_t timeouts = 0;
  std::size_t errors = 0;

  std::size_t total() const { return proved + disproved + maybe + timeouts + errors; }
};

struct CorpusReport {
  std::vector<std::string> files;
  std::vector<CorpusConfig> configs;
  std::vector<CorpusEntry> entries;  // files x configs, file-major
  std::map<std::string, ConfigCounts> counts;
  double wall_ms = 0;

  const CorpusEntry* find(const std::string& file, const std::string& config) const;
  std::string table() const;
  std::string csv() const;
};

/// Runs every configuration on every `.trs` file under `dir` with up to
/// `jobs` attempts in flight. Unreadable or unparseable files count as
/// errors.
CorpusReport run_corpus(const std::filesystem::path& dir, const std::vector<CorpusConfig>& configs,
                        const ProverConfig& base, unsigned jobs = 1);

}  // namespace gwpo
