#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gwpo/term.hpp"

namespace gwpo {

/// constant + sum coeff * name, where each name is an integer unknown, an
/// auxiliary product, or a defined conditional term.
struct LinExpr {
  std::int64_t constant = 0;
  std::map<std::string, std::int64_t> terms;

  static LinExpr num(std::int64_t v) { return LinExpr{v, {}}; }
  static LinExpr var(const std::string& name) { return LinExpr{0, {{name, 1}}}; }

  bool is_constant() const { return terms.empty(); }
  LinExpr scaled(std::int64_t k) const;

  friend LinExpr operator+(const LinExpr& a, const LinExpr& b);
  friend LinExpr operator-(const LinExpr& a, const LinExpr& b);
  friend bool operator==(const LinExpr&, const LinExpr&) = default;
};

enum class CmpOp { ge, gt, eq };

/// Boolean combination of linear atoms. Atoms are normalized to
/// `expr op 0`; constant atoms and trivial connectives fold on construction.
class Formula {
 public:
  enum class Kind { constant, atom, conj, disj, negation, ref };

  Formula() : Formula(true) {}
  Formula(bool value);

  static Formula atom(CmpOp op, const LinExpr& lhs, const LinExpr& rhs);
  static Formula ref(const std::string& name);
  static Formula all(std::vector<Formula> fs);
  static Formula any(std::vector<Formula> fs);

  friend Formula operator&&(const Formula& a, const Formula& b) { return all({a, b}); }
  friend Formula operator||(const Formula& a, const Formula& b) { return any({a, b}); }
  friend Formula operator!(const Formula& a);

  Kind kind() const;
  bool is_true() const;
  bool is_false() const;
  bool value() const;                          // constant
  CmpOp op() const;                            // atom
  const LinExpr& expr() const;                 // atom: expr op 0
  const std::vector<Formula>& children() const;  // conj, disj, negation
  const std::string& name() const;             // ref

  /// Number of atoms in the tree, not following refs.
  std::size_t atom_count() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline Formula operator>=(const LinExpr& a, const LinExpr& b) { return Formula::atom(CmpOp::ge, a, b); }
inline Formula operator>(const LinExpr& a, const LinExpr& b) { return Formula::atom(CmpOp::gt, a, b); }
inline Formula equal(const LinExpr& a, const LinExpr& b) { return Formula::atom(CmpOp::eq, a, b); }

/// What a search unknown stands for.
struct UnknownVar {
  enum class Role { constant, coefficient, offset, slope, level };

  Role role = Role::constant;
  Symbol symbol;
  std::optional<std::size_t> index;  // argument position, 0-based
  std::string name;                  // SMT-LIB name, e.g. c0_f, d1_half_sharp, lvl_g
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

/// name = left * right over {0, 1}.
struct ProductDef {
  std::string name;
  std::string left;
  std::string right;
};

/// name = if cond then then_expr else else_expr.
struct IteDef {
  std::string name;
  Formula cond;
  LinExpr then_expr;
  LinExpr else_expr;
};

/// Named Boolean subformula shared between several places.
struct BoolDef {
  std::string name;
  Formula body;
};

using Definition = std::variant<ProductDef, IteDef, BoolDef>;
using Model = std::map<std::string, std::int64_t>;

/// Unknown registry plus the auxiliary definitions of one encoding. Names are
/// deterministic per instance.
class ConstraintSystem {
 public:
  /// Registers an unknown; its name derives from role, symbol and index.
  UnknownVar add_unknown(UnknownVar::Role role, const Symbol& f, std::optional<std::size_t> index,
                                std::int64_t lo, std::int64_t hi);
  const UnknownVar* find_unknown(const std::string& name) const;
  const std::vector<UnknownVar>& unknowns() const { return unknowns_; }

  /// The unknown as an expression: a constant when its range is a point.
  LinExpr value(const UnknownVar& u) const;

  /// b * e where b takes values in {0, 1}. Products of two {0,1} names become
  /// auxiliary variables; anything else becomes a guarded term.
  LinExpr times01(const LinExpr& b, const LinExpr& e);
  LinExpr ite(const Formula& cond, const LinExpr& then_expr, const LinExpr& else_expr);
  /// Names a formula so later uses share it. Constants are returned as is.
  Formula define(const Formula& f);

  const std::vector<Definition>& definitions() const { return defs_; }
  bool is_boolean(const std::string& name) const;

  Formula root = true;

  /// Atoms in root and all definitions.
  std::size_t atom_count() const;

 private:
  std::string product(const std::string& a, const std::string& b);

  std::vector<UnknownVar> unknowns_;
  std::map<std::string, std::size_t> unknown_index_;
  std::vector<Definition> defs_;
  std::map<std::pair<std::string, std::string>, std::string> products_;
  std::map<std::string, bool> boolean_;
  std::size_t next_id_ = 0;
};

/// Sanitized fragment for SMT names: [A-Za-z0-9] kept, others as _hh.
std::string smt_safe(const std::string& s);

/// Evaluates formulas of a system under an assignment to its unknowns.
/// Auxiliary definitions are computed from the unknowns.
class ModelEvaluator {
 public:
  ModelEvaluator(const ConstraintSystem& sys, const Model& unknowns);

  std::int64_t eval(const LinExpr& e) const;
  bool eval(const Formula& f) const;

 private:
  std::map<std::string, std::int64_t> ints_;
  std::map<std::string, bool> bools_;
};

}  // namespace gwpo
