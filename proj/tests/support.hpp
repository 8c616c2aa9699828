// Shared fixtures, random generators and reference oracles for the test
// binaries. Every generator takes an explicit engine so suites stay
// reproducible under their fixed seeds.
#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gwpo/algebra.hpp"
#include "gwpo/path_orders.hpp"
#include "gwpo/term.hpp"
#include "gwpo/tpdb.hpp"

namespace gwpo::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

// ---------------------------------------------------------------------------
// Term shorthands

inline Term V(const std::string& x) { return Term::var(x); }

inline Term F(const std::string& f, std::vector<Term> args = {}) {
  const std::size_t n = args.size();
  return Term::app(Symbol(f, n), std::move(args));
}

inline Symbol S(const std::string& f, std::size_t arity, bool marked = false) { return Symbol(f, arity, marked); }

// ---------------------------------------------------------------------------
// Random terms over a small signature

struct Universe {
  std::vector<Symbol> symbols;
  std::vector<std::string> vars;
};

/// c/0, f/1, g/1, h/2 with variables x, y, z.
inline Universe small_universe() {
  return {{S("c", 0), S("f", 1), S("g", 1), S("h", 2)}, {"x", "y", "z"}};
}

/// A term with at most `budget` symbol and variable occurrences.
inline Term random_term(Rng& rng, const Universe& u, std::size_t budget, bool allow_var = true) {
  std::vector<Symbol> fits;
  for (const auto& f : u.symbols)
    if (f.arity + 1 <= budget) fits.push_back(f);
  const bool pick_var = allow_var && (fits.empty() || uniform(rng, 0, 3) == 0);
  if (pick_var || fits.empty()) return Term::var(u.vars[uniform(rng, 0, static_cast<std::int64_t>(u.vars.size()) - 1)]);
  const Symbol& f = fits[uniform(rng, 0, static_cast<std::int64_t>(fits.size()) - 1)];
  std::size_t left = budget - 1;
  std::vector<Term> args;
  for (std::size_t i = 0; i < f.arity; ++i) {
    const std::size_t reserve = f.arity - i - 1;  // one slot per remaining argument
    const std::size_t share = uniform(rng, 1, static_cast<std::int64_t>(left - reserve));
    args.push_back(random_term(rng, u, share, true));
    left -= args.back().size();
  }
  return Term::app(f, std::move(args));
}

inline Term random_nonvar_term(Rng& rng, const Universe& u, std::size_t budget) {
  return random_term(rng, u, std::max<std::size_t>(budget, 1), false);
}

inline Substitution random_substitution(Rng& rng, const Universe& u, std::size_t budget = 3) {
  Substitution sigma;
  for (const auto& x : u.vars)
    if (coin(rng)) sigma.bind(x, random_term(rng, u, budget));
  return sigma;
}

/// All argument-index paths of `t`, the root included.
inline std::vector<std::vector<std::size_t>> positions(const Term& t) {
  std::vector<std::vector<std::size_t>> out{{}};
  if (t.is_var()) return out;
  for (std::size_t i = 0; i < t.args().size(); ++i)
    for (auto p : positions(t.arg(i))) {
      p.insert(p.begin(), i);
      out.push_back(std::move(p));
    }
  return out;
}

/// A context C and a filler function C[.] with the hole at a random position.
struct Context {
  Term shape;
  std::vector<std::size_t> hole;
  Term fill(const Term& t) const { return replace_at(shape, hole, t); }
};

inline Context random_context(Rng& rng, const Universe& u, std::size_t budget = 4) {
  Term shape = random_term(rng, u, budget);
  auto ps = positions(shape);
  return {shape, ps[uniform(rng, 0, static_cast<std::int64_t>(ps.size()) - 1)]};
}

// ---------------------------------------------------------------------------
// Random algebras and precedences

struct AlgebraShape {
  InterpKind kind = InterpKind::linear;
  bool simple = false;
  bool shared = false;
  std::int64_t bound = 3;
};

inline Interp random_interp(Rng& rng, const Symbol& f, const AlgebraShape& shape) {
  const bool simple = shape.simple && !f.marked;
  if (shape.kind == InterpKind::linear) {
    LinearInterp li{uniform(rng, 0, shape.bound), {}};
    for (std::size_t i = 0; i < f.arity; ++i) li.coeffs.push_back(simple ? 1 : uniform(rng, 0, 1));
    return li;
  }
  MaxPlusInterp mp{uniform(rng, 0, shape.bound), {}, {}};
  for (std::size_t i = 0; i < f.arity; ++i) {
    mp.offsets.push_back(uniform(rng, simple ? 0 : -shape.bound, shape.bound));
    mp.slopes.push_back(simple ? 1 : uniform(rng, 0, 1));
  }
  return mp;
}

inline Algebra random_algebra(Rng& rng, const std::vector<Symbol>& sig, const AlgebraShape& shape) {
  Algebra a(shape.kind);
  for (const auto& f : sig) {
    Interp i = random_interp(rng, f, shape);
    if (shape.shared) {
      a.set_shared(f, i);
    } else {
      std::visit([&](const auto& r) { a.set(f, r); }, i);
      Interp m = random_interp(rng, f.with_mark(true), shape);
      std::visit([&](const auto& r) { a.set(f.with_mark(true), r); }, m);
    }
  }
  return a;
}

inline Precedence random_precedence(Rng& rng, const std::vector<Symbol>& sig, std::int64_t levels = 3) {
  Precedence p;
  for (const auto& f : sig) p.level[f.name] = uniform(rng, 0, levels - 1);
  return p;
}

// ---------------------------------------------------------------------------
// Reference oracles: literal transcriptions without memo tables.

/// Lexicographic extension by exhaustive position scan, written
/// independently of lex_ext.
inline bool naive_lex(const std::function<bool(const Term&, const Term&)>& gt, const std::vector<Term>& ss,
                      const std::vector<Term>& ts) {
  for (std::size_t k = 0; k <= std::min(ss.size(), ts.size()); ++k) {
    bool prefix_equal = true;
    for (std::size_t i = 0; i < k; ++i) prefix_equal = prefix_equal && ss[i] == ts[i];
    if (!prefix_equal) break;
    if (k < ss.size() && k < ts.size() && gt(ss[k], ts[k])) return true;
    if (k == ts.size() && ss.size() > ts.size()) return true;
  }
  return false;
}

inline std::vector<Term> args_of(const Term& t) { return {t.args().begin(), t.args().end()}; }

inline bool alg_gt(const Algebra& a, const Term& s, const Term& t) {
  return cmp_gt(eval_symbolic(a, s), eval_symbolic(a, t));
}
inline bool alg_ge(const Algebra& a, const Term& s, const Term& t) {
  return cmp_ge(eval_symbolic(a, s), eval_symbolic(a, t));
}

/// Weighted path order, case by case.
inline bool naive_wpo(const Algebra& a, const Precedence& p, const Term& s, const Term& t) {
  if (alg_gt(a, s, t)) return true;
  if (s.is_var() || !alg_ge(a, s, t)) return false;
  for (const auto& si : s.args())
    if (si == t || naive_wpo(a, p, si, t)) return true;
  if (t.is_var()) return false;
  for (const auto& tj : t.args())
    if (!naive_wpo(a, p, s, tj)) return false;
  if (p.gt(s.symbol(), t.symbol())) return true;
  if (!p.ge(s.symbol(), t.symbol())) return false;
  return naive_lex([&](const Term& u, const Term& v) { return naive_wpo(a, p, u, v); }, args_of(s), args_of(t));
}

/// SPO variant for an order pair on non-variable terms.
inline bool naive_spo(const OrderPair& pair, const Term& s, const Term& t) {
  if (s.is_var()) return false;
  for (const auto& si : s.args())
    if (si == t || naive_spo(pair, si, t)) return true;
  if (t.is_var()) return false;
  for (const auto& tj : t.args())
    if (!naive_spo(pair, s, tj)) return false;
  if (pair.sgt(s, t)) return true;
  return pair.qge(s, t) &&
         naive_lex([&](const Term& u, const Term& v) { return naive_spo(pair, u, v); }, args_of(s), args_of(t));
}

inline bool naive_mspo(const std::function<bool(const Term&, const Term&)>& quasi, const OrderPair& pair,
                       const Term& s, const Term& t) {
  return quasi(s, t) && naive_spo(pair, s, t);
}

/// The order pair on marked roots, written out directly.
inline OrderPair naive_marked_pair(const Algebra& a, const Precedence& p) {
  return {[=](const Term& u, const Term& v) {
            const Term um = u.marked(), vm = v.marked();
            return alg_gt(a, um, vm) || (alg_ge(a, um, vm) && p.ge(u.symbol(), v.symbol()));
          },
          [=](const Term& u, const Term& v) {
            const Term um = u.marked(), vm = v.marked();
            return alg_gt(a, um, vm) || (alg_ge(a, um, vm) && p.gt(u.symbol(), v.symbol()));
          }};
}

/// The unmarked order pair used to simulate WPO.
inline OrderPair naive_plain_pair(const Algebra& a, const Precedence& p) {
  return {[=](const Term& u, const Term& v) {
            return alg_gt(a, u, v) || (alg_ge(a, u, v) && p.ge(u.symbol(), v.symbol()));
          },
          [=](const Term& u, const Term& v) {
            return alg_gt(a, u, v) || (alg_ge(a, u, v) && p.gt(u.symbol(), v.symbol()));
          }};
}

inline bool naive_gwpo(const Algebra& a, const Precedence& p, const Term& s, const Term& t) {
  return naive_mspo([&](const Term& u, const Term& v) { return alg_ge(a, u, v); }, naive_marked_pair(a, p), s, t);
}

// ---------------------------------------------------------------------------
// Concrete evaluation over a grid of assignments.

/// Calls `body` for every assignment of `vars` into {0..hi}.
inline void for_each_assignment(const std::vector<std::string>& vars, std::int64_t hi,
                                const std::function<void(const Assignment&)>& body) {
  Assignment alpha;
  for (const auto& x : vars) alpha[x] = 0;
  while (true) {
    body(alpha);
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++alpha[vars[i]] <= hi) break;
      alpha[vars[i]] = 0;
    }
    if (i == vars.size()) return;
  }
}

inline std::vector<std::string> vars_of(const Term& s, const Term& t) {
  auto vs = s.variables();
  for (const auto& x : t.variables())
    if (std::find(vs.begin(), vs.end(), x) == vs.end()) vs.push_back(x);
  return vs;
}

// ---------------------------------------------------------------------------
// Fixtures from the worked examples

inline const char* kFghText =
    "(VAR x)\n(RULES\n  f(g(x)) -> g(f(f(x)))\n  f(h(x)) -> h(h(f(x)))\n)\n";

inline const char* kDivText =
    "(VAR x y)\n(RULES\n  p(0) -> 0\n  p(s(x)) -> x\n  -(x, 0) -> x\n  -(x, s(y)) -> -(p(x), y)\n"
    "  div(0, s(y)) -> 0\n  div(s(x), s(y)) -> s(div(-(x, y), s(y)))\n)\n";

inline const char* kBitsText =
    "(VAR x)\n(RULES\n  half(0) -> 0\n  half(s(0)) -> 0\n  half(s(s(x))) -> s(half(x))\n  bits(0) -> 0\n"
    "  bits(s(x)) -> s(bits(half(s(x))))\n)\n";

/// f = h = identity, g = successor; shared marks.
inline Algebra fgh_algebra() {
  Algebra a(InterpKind::linear);
  a.set_shared(S("f", 1), LinearInterp{0, {1}});
  a.set_shared(S("h", 1), LinearInterp{0, {1}});
  a.set_shared(S("g", 1), LinearInterp{1, {1}});
  return a;
}

inline Precedence fgh_precedence() { return Precedence{{{"f", 2}, {"g", 1}, {"h", 0}}}; }

inline Algebra div_algebra() {
  Algebra a(InterpKind::linear);
  a.set(S("0", 0), LinearInterp{0, {}});
  a.set(S("s", 1), LinearInterp{1, {1}});
  a.set(S("p", 1), LinearInterp{0, {1}});
  a.set(S("-", 2), LinearInterp{0, {1, 0}});
  a.set(S("div", 2), LinearInterp{0, {1, 0}});
  a.set(S("0", 0, true), LinearInterp{0, {}});
  a.set(S("s", 1, true), LinearInterp{0, {0}});
  a.set(S("p", 1, true), LinearInterp{0, {0}});
  a.set(S("-", 2, true), LinearInterp{0, {0, 1}});
  a.set(S("div", 2, true), LinearInterp{0, {1, 1}});
  return a;
}

inline Algebra bits_algebra() {
  Algebra a(InterpKind::maxplus);
  a.set_shared(S("0", 0), MaxPlusInterp{0, {}, {}});
  a.set_shared(S("s", 1), MaxPlusInterp{0, {1}, {1}});
  a.set_shared(S("half", 1), MaxPlusInterp{0, {-1}, {1}});
  a.set_shared(S("bits", 1), MaxPlusInterp{0, {0}, {1}});
  return a;
}

inline Precedence bits_precedence() { return Precedence{{{"half", 1}, {"bits", 1}, {"s", 0}, {"0", 0}}}; }

}  // namespace gwpo::testing
