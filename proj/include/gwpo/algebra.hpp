#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gwpo/term.hpp"

namespace gwpo {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InterpKind { linear, maxplus };

const char* to_string(InterpKind k);

/// f(x1..xn) = constant + sum coeffs[i] * xi over the naturals.
///
/// The searchable class restricts coefficients to {0, 1}; larger naturals are
/// representable for hand-built algebras.
struct LinearInterp {
  std::int64_t constant = 0;
  std::vector<std::int64_t> coeffs;

  friend bool operator==(const LinearInterp&, const LinearInterp&) = default;
};

/// f(x1..xn) = max{floor, offsets[i] + slopes[i] * xi}.
struct MaxPlusInterp {
  std::int64_t floor = 0;
  std::vector<std::int64_t> offsets;
  std::vector<std::int64_t> slopes;

  friend bool operator==(const MaxPlusInterp&, const MaxPlusInterp&) = default;
};

using Interp = std::variant<LinearInterp, MaxPlusInterp>;

/// Interpretations for a signature and its marked companions over N.
///
/// Construction enforces what keeps values inside N: nonnegative constants
/// (c0 >= 0) and nonnegative slopes. Anything else throws AlgebraError.
class Algebra {
 public:
  explicit Algebra(InterpKind kind = InterpKind::linear) : kind_(kind) {}

  InterpKind kind() const { return kind_; }

  void set(const Symbol& f, LinearInterp interp);
  void set(const Symbol& f, MaxPlusInterp interp);
  /// Sets both f and f# to the same interpretation.
  void set_shared(const Symbol& f, const Interp& interp);

  bool has(const Symbol& f) const { return interps_.count(f) != 0; }
  const Interp& at(const Symbol& f) const;
  const std::map<Symbol, Interp>& interpretations() const { return interps_; }

  friend bool operator==(const Algebra&, const Algebra&) = default;

 private:
  InterpKind kind_;
  std::map<Symbol, Interp> interps_;
};

using Assignment = std::map<std::string, std::int64_t>;

/// constant + sum coeff(x) * x. Zero coefficients are never stored.
struct LinearPoly {
  std::int64_t constant = 0;
  std::map<std::string, std::int64_t> coeffs;

  std::int64_t coeff(const std::string& x) const;
  std::int64_t value(const Assignment& alpha) const;
  std::string to_string() const;

  friend bool operator==(const LinearPoly&, const LinearPoly&) = default;
};

/// One affine piece `constant + coeff * var` of a max/plus normal form.
struct MaxPlusBranch {
  std::int64_t constant = 0;
  std::string var;
  std::int64_t coeff = 1;

  friend bool operator==(const MaxPlusBranch&, const MaxPlusBranch&) = default;
};

/// max{floor, branches...}; floor >= 0 and every branch mentions one variable.
struct MaxPlusNF {
  std::int64_t floor = 0;
  std::vector<MaxPlusBranch> branches;

  std::int64_t value(const Assignment& alpha) const;
  /// Drops branches dominated by another branch; the value is unchanged.
  MaxPlusNF pruned() const;
  std::string to_string() const;

  friend bool operator==(const MaxPlusNF&, const MaxPlusNF&) = default;
};

using NormalForm = std::variant<LinearPoly, MaxPlusNF>;

std::int64_t value_of(const NormalForm& nf, const Assignment& alpha);
std::string to_string(const NormalForm& nf);

/// Normal form of [alpha](t) as a function of alpha. Throws AlgebraError on a
/// symbol without interpretation.
NormalForm eval_symbolic(const Algebra& a, const Term& t, bool prune = true);

/// Direct recursive evaluation. Unassigned variables are an error.
std::int64_t eval_concrete(const Algebra& a, const Term& t, const Assignment& alpha);

/// Sound criteria for lhs >= rhs (resp. >) at every assignment over N.
/// Throws AlgebraError when the normal forms are of different kinds.
bool cmp_ge(const NormalForm& lhs, const NormalForm& rhs);
bool cmp_gt(const NormalForm& lhs, const NormalForm& rhs);

/// f(..a_i..) >= a_i for every unmarked f and position i.
bool is_simple(const Algebra& a);
/// Every slope in the coefficient records is nonnegative.
bool is_weakly_monotone(const Algebra& a);
/// Slopes in {0, 1}: the class the search explores.
bool in_search_class(const Algebra& a);
/// f and f# have the same interpretation for every unmarked f present.
bool marked_shared(const Algebra& a);

/// Canonical one-line rendering, e.g. `f#(x0) = max{0, -1 + x0}`.
std::string print_interp(const Symbol& f, const Interp& interp);
std::string print_algebra(const Algebra& a);

/// Parses one line produced by print_interp. `resolve` maps a printed symbol
/// name (possibly ending in '#') and arity to the symbol it denotes.
std::pair<Symbol, Interp> parse_interp(const std::string& line, InterpKind kind,
                                       const std::function<Symbol(const std::string&, std::size_t)>& resolve);

}  // namespace gwpo
