#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gwpo/algebra.hpp"
#include "gwpo/term.hpp"

namespace gwpo {

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Total quasi-order on symbol names given by integer levels. Symbols
/// without an entry sit at level 0.
struct Precedence {
  std::map<std::string, std::int64_t> level;

  std::int64_t level_of(const std::string& f) const;
  bool gt(const Symbol& f, const Symbol& g) const { return level_of(f.name) > level_of(g.name); }
  bool ge(const Symbol& f, const Symbol& g) const { return level_of(f.name) >= level_of(g.name); }

  /// `f:2 g:1 h:0`, highest level first.
  std::string to_string() const;

  friend bool operator==(const Precedence&, const Precedence&) = default;
};

using TermRelation = std::function<bool(const Term&, const Term&)>;

/// A pair (qge, sgt) of relations on non-variable terms.
struct OrderPair {
  TermRelation qge;
  TermRelation sgt;
};

/// Proof tree for an order judgement. Leaves carry side conditions.
struct Derivation {
  std::string label;  // e.g. "WPO 2b(i)", empty for side conditions
  std::string claim;
  std::vector<Derivation> premises;

  std::string to_string(std::size_t indent = 0) const;
};

/// >=_A and >_A with normal forms cached per term.
class AlgebraComparator {
 public:
  explicit AlgebraComparator(Algebra a) : algebra_(std::move(a)) {}

  bool ge(const Term& s, const Term& t) { return cmp_ge(normal_form(s), normal_form(t)); }
  bool gt(const Term& s, const Term& t) { return cmp_gt(normal_form(s), normal_form(t)); }
  const NormalForm& normal_form(const Term& t);

 private:
  Algebra algebra_;
  std::unordered_map<Term, NormalForm, TermHash> cache_;
};

/// qge(s,t) iff s >_A t or (s >=_A t and root(s) >= root(t)); sgt likewise
/// with the strict precedence. Both throw PreconditionError on variables.
OrderPair build_wpo_pair(const Algebra& a, const Precedence& p);

/// The same construction applied to root-marked terms s# and t#.
OrderPair build_marked_pair(const Algebra& a, const Precedence& p);

/// Weighted path order for a fixed algebra and precedence, memoized per
/// instance.
class WpoOrder {
 public:
  WpoOrder(const Algebra& a, Precedence p) : cmp_(a), prec_(std::move(p)) {}

  bool gt(const Term& s, const Term& t);
  bool ge(const Term& s, const Term& t) { return s == t || gt(s, t); }
  std::optional<Derivation> derive(const Term& s, const Term& t);

 private:
  bool compute(const Term& s, const Term& t);

  AlgebraComparator cmp_;
  Precedence prec_;
  std::unordered_map<TermPair, bool, TermPairHash> memo_;
};

/// Semantic path order (lexicographic variant) induced by an order pair.
class SpoOrder {
 public:
  explicit SpoOrder(OrderPair pair) : pair_(std::move(pair)) {}

  bool gt(const Term& s, const Term& t);
  bool ge(const Term& s, const Term& t) { return s == t || gt(s, t); }
  std::optional<Derivation> derive(const Term& s, const Term& t);

 private:
  bool compute(const Term& s, const Term& t);

  OrderPair pair_;
  std::unordered_map<TermPair, bool, TermPairHash> memo_;
};

/// Generalized weighted path order: >=_A on unmarked terms together with the
/// SPO induced by the marked pair.
class GwpoOrder {
 public:
  GwpoOrder(const Algebra& a, const Precedence& p) : quasi_(a), spo_(build_marked_pair(a, p)) {}

  bool gt(const Term& s, const Term& t) { return quasi_.ge(s, t) && spo_.gt(s, t); }
  std::optional<Derivation> derive(const Term& s, const Term& t);

 private:
  AlgebraComparator quasi_;
  SpoOrder spo_;
};

bool wpo_gt(const Algebra& a, const Precedence& p, const Term& s, const Term& t);
bool spo_gt(const OrderPair& pair, const Term& s, const Term& t);
bool mspo_gt(const TermRelation& quasi, const OrderPair& pair, const Term& s, const Term& t);
bool gwpo_gt(const Algebra& a, const Precedence& p, const Term& s, const Term& t);

struct OrientationReport {
  bool oriented = true;
  std::vector<std::size_t> failing;  // rule indices
};

/// Checks lhs > rhs for every rule. Throws PreconditionError on ill-formed
/// rules.
OrientationReport orients(const TermRelation& order, const Trs& trs);

}  // namespace gwpo
