#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gwpo {

/// A function symbol. The marked flag selects the root-only companion f#.
struct Symbol {
  std::string name;
  std::size_t arity = 0;
  bool marked = false;

  Symbol() = default;
  Symbol(std::string n, std::size_t a, bool m = false)
      : name(std::move(n)), arity(a), marked(m) {}

  Symbol with_mark(bool m) const { return Symbol(name, arity, m); }

  /// Printed form: `f` or `f#`.
  std::string display() const { return marked ? name + "#" : name; }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

class Term;

namespace detail {
struct TermNode;
}

/// Immutable first-order term with cheap copies and cached hash.
///
/// Nodes are shared between copies; equality is structural but short-cuts on
/// pointer identity and hash mismatch.
class Term {
 public:
  static Term var(std::string name);
  /// Throws std::invalid_argument when args.size() != f.arity.
  static Term app(Symbol f, std::vector<Term> args = {});

  bool is_var() const;
  const std::string& var_name() const;
  const Symbol& symbol() const;
  std::span<const Term> args() const;
  const Term& arg(std::size_t i) const { return args()[i]; }

  std::size_t hash() const;
  /// Number of symbol and variable occurrences.
  std::size_t size() const;
  std::size_t depth() const;

  /// The term with its root symbol marked (t#). Requires a non-variable term.
  Term marked() const;
  /// Variables in left-to-right order of first occurrence.
  std::vector<std::string> variables() const;
  bool contains_var(const std::string& x) const;
  /// All subterms, including the term itself, in pre-order.
  std::vector<Term> subterms() const;
  bool is_proper_subterm_of(const Term& other) const;

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

struct TermPair {
  Term lhs;
  Term rhs;
  friend bool operator==(const TermPair&, const TermPair&) = default;
};

struct TermPairHash {
  std::size_t operator()(const TermPair& p) const {
    return p.lhs.hash() * 0x9e3779b97f4a7c15ULL ^ p.rhs.hash();
  }
};

class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const std::string, Term>> init) : map_(init) {}

  void bind(const std::string& x, Term t) { map_.insert_or_assign(x, std::move(t)); }
  const Term* find(const std::string& x) const;
  bool empty() const { return map_.empty(); }
  const std::map<std::string, Term>& bindings() const { return map_; }

  Term apply(const Term& t) const;
  /// The substitution that behaves like applying *this and then `after`.
  Substitution then(const Substitution& after) const;

 private:
  std::map<std::string, Term> map_;
};

inline Term apply_substitution(const Term& t, const Substitution& sigma) { return sigma.apply(t); }

/// Replaces the subterm at `position` (a path of argument indices).
Term replace_at(const Term& t, std::span<const std::size_t> position, const Term& replacement);

struct Rule {
  Term lhs;
  Term rhs;

  /// lhs is not a variable and every rhs variable occurs in lhs.
  bool well_formed() const;
  std::string to_string() const { return lhs.to_string() + " -> " + rhs.to_string(); }

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Trs {
  std::vector<Symbol> signature;  // unmarked, in order of first occurrence
  std::vector<Rule> rules;
  std::set<std::string> declared_vars;

  const Symbol* find_symbol(const std::string& name) const;
  bool all_well_formed() const;

  friend bool operator==(const Trs&, const Trs&) = default;
};

/// Lexicographic extension of `gt` with syntactic equality. A prefix-equal
/// longer sequence is greater than the shorter one.
template <class Gt>
bool lex_ext(Gt&& gt, std::span<const Term> ss, std::span<const Term> ts) {
  const std::size_t n = std::min(ss.size(), ts.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (ss[i] == ts[i]) continue;
    return gt(ss[i], ts[i]);
  }
  return ss.size() > ts.size();
}

}  // namespace gwpo
