#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gwpo/algebra.hpp"
#include "gwpo/constraint.hpp"
#include "gwpo/encoder.hpp"
#include "gwpo/path_orders.hpp"

namespace gwpo {

/// SMT-LIB2 script for `sys`: declarations with range assertions, auxiliary
/// definitions, the root assertion, check-sat and get-value for every unknown.
/// Identical systems give byte-identical scripts.
std::string emit_smtlib(const ConstraintSystem& sys, const std::string& logic = "QF_LIA");

struct SolverConfig {
  /// argv of the solver; the script path is appended unless use_stdin is set.
  std::vector<std::string> command{"z3"};
  double timeout_seconds = 60.0;
  std::string logic = "QF_LIA";
  bool use_stdin = false;

  /// Splits a command line on whitespace.
  static std::vector<std::string> split_command(const std::string& cmdline);
};

struct Sat {
  Model model;
};
struct Unsat {};
struct Unknown {};
struct Timeout {};
struct SolverError {
  std::string diagnostic;
};

using SolverVerdict = std::variant<Sat, Unsat, Unknown, Timeout, SolverError>;

std::string verdict_name(const SolverVerdict& v);

/// Runs the solver on `script` and parses its answer. The process is killed
/// once the timeout expires.
SolverVerdict solve(const std::string& script, const SolverConfig& cfg);

/// Parses solver stdout: `sat|unsat|unknown` followed by optional
/// `((name value) ...)` blocks.
SolverVerdict parse_solver_output(const std::string& out);

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecodedParameters {
  Algebra algebra;
  Precedence precedence;
};

/// Builds the algebra and precedence a model describes. Throws DecodeError
/// when a value is missing or outside its declared range.
DecodedParameters decode_model(const Model& model, const SearchSpace& space, const ConstraintSystem& registry);

}  // namespace gwpo
