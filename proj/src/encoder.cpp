#include "gwpo/encoder.hpp"

#include <algorithm>
#include <unordered_map>

namespace gwpo {

const char* to_string(OrderKind k) {
  switch (k) {
    case OrderKind::kbo: return "kbo";
    case OrderKind::lpo: return "lpo";
    case OrderKind::wpo: return "wpo";
    case OrderKind::gwpo: return "gwpo";
  }
  return "?";
}

std::optional<OrderKind> parse_order_kind(const std::string& s) {
  if (s == "kbo") return OrderKind::kbo;
  if (s == "lpo") return OrderKind::lpo;
  if (s == "wpo") return OrderKind::wpo;
  if (s == "gwpo") return OrderKind::gwpo;
  return std::nullopt;
}

std::optional<InterpKind> parse_interp_kind(const std::string& s) {
  if (s == "linear") return InterpKind::linear;
  if (s == "maxplus" || s == "max/plus") return InterpKind::maxplus;
  return std::nullopt;
}

SearchSpace SearchSpace::make(OrderKind order, InterpKind interp, std::int64_t const_bound) {
  SearchSpace s;
  s.order = order;
  s.interp = interp;
  s.const_bound = const_bound;
  s.share_marked = order != OrderKind::gwpo;
  s.force_simple = order != OrderKind::gwpo;
  s.validate();
  return s;
}

void SearchSpace::validate() const {
  if (const_bound < 0) throw std::invalid_argument("coefficient bound must be nonnegative");
  if (order != OrderKind::gwpo && !(share_marked && force_simple))
    throw std::invalid_argument(std::string(to_string(order)) + " requires simple algebras with shared marks");
  if (order == OrderKind::kbo && interp != InterpKind::linear)
    throw std::invalid_argument("kbo is searched with linear interpretations");
  if (order == OrderKind::lpo && interp != InterpKind::maxplus)
    throw std::invalid_argument("lpo is searched with max/plus interpretations");
}

std::string SearchSpace::name() const {
  if (order == OrderKind::kbo || order == OrderKind::lpo) return to_string(order);
  return std::string(to_string(order)) + "-" + to_string(interp);
}

VariableCondition encode_variable_condition(const Trs& trs) {
  for (std::size_t i = 0; i < trs.rules.size(); ++i) {
    const Rule& r = trs.rules[i];
    if (r.lhs.is_var()) return {true, i, "left-hand side of " + r.to_string() + " is a variable"};
    for (const auto& x : r.rhs.variables())
      if (!r.lhs.contains_var(x))
        return {true, i, "variable " + x + " of " + r.to_string() + " does not occur on the left"};
  }
  return {};
}

namespace {

// Interpretation of one symbol with unknown parameters. For linear algebras
// `args` are the coefficients; for max/plus they are the offsets.
struct ParamInterp {
  LinExpr constant;
  std::vector<LinExpr> args;
  std::vector<LinExpr> slopes;  // max/plus only
};

struct ParamPoly {
  LinExpr constant;
  std::map<std::string, LinExpr> coeffs;
};

// Active iff guard holds; contributes constant (+ var when var is set).
struct ParamBranch {
  Formula guard;
  LinExpr constant;
  std::string var;
};

using ParamMaxPlus = std::vector<ParamBranch>;

LinExpr one() { return LinExpr::num(1); }
LinExpr zero() { return LinExpr::num(0); }

class Encoder {
 public:
  Encoder(const Trs& trs, const SearchSpace& space) : trs_(trs) {
    enc_.space = space;
    enc_.signature = trs.signature;
  }

  Encoding run() {
    declare_unknowns();
    std::vector<Formula> parts;
    for (const auto& r : trs_.rules) parts.push_back(enc_.space.uses_wpo() ? wpo(r.lhs, r.rhs) : gwpo(r.lhs, r.rhs));
    if (enc_.space.order == OrderKind::kbo) parts.push_back(admissibility());
    enc_.system.root = Formula::all(std::move(parts));
    return std::move(enc_);
  }

 private:
  ConstraintSystem& sys() { return enc_.system; }
  const SearchSpace& space() const { return enc_.space; }

  void declare_symbol(const Symbol& f) {
    using Role = UnknownVar::Role;
    const std::int64_t b = space().const_bound;
    const bool simple = space().force_simple && !f.marked;
    ParamInterp p;
    if (space().interp == InterpKind::linear) {
      std::int64_t lo = (space().order == OrderKind::kbo && f.arity == 0) ? std::min<std::int64_t>(1, b) : 0;
      p.constant = sys().value(sys().add_unknown(Role::constant, f, std::nullopt, lo, b));
      for (std::size_t i = 0; i < f.arity; ++i)
        p.args.push_back(sys().value(sys().add_unknown(Role::coefficient, f, i, simple ? 1 : 0, 1)));
    } else {
      const bool lpo = space().order == OrderKind::lpo;
      p.constant = sys().value(sys().add_unknown(Role::constant, f, std::nullopt, 0, lpo ? 0 : b));
      for (std::size_t i = 0; i < f.arity; ++i) {
        std::int64_t lo = lpo || simple ? 0 : -b;
        p.args.push_back(sys().value(sys().add_unknown(Role::offset, f, i, lo, lpo ? 0 : b)));
        p.slopes.push_back(sys().value(sys().add_unknown(Role::slope, f, i, simple ? 1 : 0, 1)));
      }
    }
    interps_.emplace(f, std::move(p));
  }

  void declare_unknowns() {
    for (const auto& f : enc_.signature) declare_symbol(f);
    if (!space().share_marked)
      for (const auto& f : enc_.signature) declare_symbol(f.with_mark(true));
    const std::int64_t top = std::max<std::int64_t>(0, static_cast<std::int64_t>(enc_.signature.size()) - 1);
    for (const auto& f : enc_.signature)
      levels_.emplace(f.name, sys().value(sys().add_unknown(UnknownVar::Role::level, f, std::nullopt, 0, top)));
  }

  const ParamInterp& interp(const Symbol& f) {
    Symbol key = space().share_marked ? f.with_mark(false) : f;
    auto it = interps_.find(key);
    if (it == interps_.end()) throw EncodeError("symbol " + f.display() + " is not in the signature");
    return it->second;
  }

  // -- parametric evaluation -------------------------------------------------

  ParamPoly poly(const Term& t) {
    if (auto it = polys_.find(t); it != polys_.end()) return it->second;
    ParamPoly out;
    if (t.is_var()) {
      out.coeffs.emplace(t.var_name(), one());
    } else {
      const ParamInterp& p = interp(t.symbol());
      out.constant = p.constant;
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (p.args[i] == zero()) continue;
        ParamPoly sub = poly(t.arg(i));
        out.constant = out.constant + sys().times01(p.args[i], sub.constant);
        for (const auto& [x, e] : sub.coeffs) {
          LinExpr c = out.coeffs.count(x) ? out.coeffs[x] : zero();
          out.coeffs[x] = c + sys().times01(p.args[i], e);
        }
      }
      for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
        it = it->second == zero() ? out.coeffs.erase(it) : std::next(it);
    }
    polys_.emplace(t, out);
    return out;
  }

  static void prune(ParamMaxPlus& bs) {
    std::vector<bool> dropped(bs.size(), false);
    for (std::size_t i = 0; i < bs.size(); ++i) {
      for (std::size_t j = 0; j < bs.size() && !dropped[i]; ++j) {
        if (i == j || dropped[j] || !bs[j].guard.is_true()) continue;
        if (!bs[i].var.empty() && bs[j].var != bs[i].var) continue;
        LinExpr diff = bs[j].constant - bs[i].constant;
        if (!diff.is_constant() || diff.constant < 0) continue;
        if (diff.constant > 0 || !bs[i].guard.is_true() || j < i || bs[i].var != bs[j].var) dropped[i] = true;
      }
    }
    ParamMaxPlus kept;
    for (std::size_t i = 0; i < bs.size(); ++i)
      if (!dropped[i]) kept.push_back(std::move(bs[i]));
    bs = std::move(kept);
  }

  ParamMaxPlus maxplus(const Term& t) {
    if (auto it = maxplus_.find(t); it != maxplus_.end()) return it->second;
    ParamMaxPlus out;
    if (t.is_var()) {
      out.push_back({Formula(true), zero(), t.var_name()});
    } else {
      const ParamInterp& p = interp(t.symbol());
      out.push_back({Formula(true), p.constant, ""});
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        const LinExpr& d = p.slopes[i];
        const LinExpr& c = p.args[i];
        if (d == zero()) {
          out.push_back({Formula(true), c, ""});
          continue;
        }
        Formula on = d >= one();
        if (!on.is_true()) out.push_back({!on, c, ""});
        for (const auto& b : maxplus(t.arg(i))) out.push_back({on && b.guard, c + b.constant, b.var});
      }
      prune(out);
    }
    maxplus_.emplace(t, out);
    return out;
  }

  // -- algebra comparisons ---------------------------------------------------

  Formula compare(const Term& s, const Term& t, bool strict) {
    auto& memo = strict ? alg_gt_ : alg_ge_;
    TermPair key{s, t};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Formula f;
    if (space().interp == InterpKind::linear) {
      ParamPoly l = poly(s), r = poly(t);
      std::vector<Formula> parts{strict ? l.constant > r.constant : l.constant >= r.constant};
      for (const auto& [x, e] : r.coeffs) {
        auto it = l.coeffs.find(x);
        parts.push_back((it == l.coeffs.end() ? zero() : it->second) >= e);
      }
      f = Formula::all(std::move(parts));
    } else {
      ParamMaxPlus l = maxplus(s), r = maxplus(t);
      std::vector<Formula> parts;
      for (const auto& rb : r) {
        std::vector<Formula> options{!rb.guard};
        for (const auto& lb : l) {
          if (!rb.var.empty() && lb.var != rb.var) continue;
          options.push_back(lb.guard && (strict ? lb.constant > rb.constant : lb.constant >= rb.constant));
        }
        parts.push_back(Formula::any(std::move(options)));
      }
      f = Formula::all(std::move(parts));
    }
    f = sys().define(f);
    memo.emplace(std::move(key), f);
    return f;
  }

  Formula alg_ge(const Term& s, const Term& t) { return compare(s, t, false); }
  Formula alg_gt(const Term& s, const Term& t) { return compare(s, t, true); }

  Formula prec_gt(const Symbol& f, const Symbol& g) {
    if (f.name == g.name) return false;
    return levels_.at(f.name) > levels_.at(g.name);
  }
  Formula prec_ge(const Symbol& f, const Symbol& g) {
    if (f.name == g.name) return true;
    return levels_.at(f.name) >= levels_.at(g.name);
  }

  // -- order unfolding -------------------------------------------------------

  template <class Rec>
  Formula lex(const Term& s, const Term& t, Rec&& rec) {
    const std::size_t n = std::min(s.args().size(), t.args().size());
    for (std::size_t k = 0; k < n; ++k)
      if (!(s.arg(k) == t.arg(k))) return rec(s.arg(k), t.arg(k));
    return s.args().size() > t.args().size();
  }

  Formula wpo(const Term& s, const Term& t) {
    TermPair key{s, t};
    if (auto it = wpo_.find(key); it != wpo_.end()) return it->second;
    Formula f = false;
    if (!(s == t)) {
      Formula case1 = alg_gt(s, t);
      if (s.is_var()) {
        f = case1;
      } else {
        std::vector<Formula> sub;
        for (const auto& si : s.args()) sub.push_back(si == t ? Formula(true) : wpo(si, t));
        Formula case2a = Formula::any(std::move(sub));
        Formula case2b = false;
        if (!t.is_var() && !case2a.is_true()) {
          std::vector<Formula> dom;
          for (const auto& tj : t.args()) dom.push_back(wpo(s, tj));
          Formula ext = prec_gt(s.symbol(), t.symbol()) ||
                        (prec_ge(s.symbol(), t.symbol()) &&
                         lex(s, t, [this](const Term& a, const Term& b) { return wpo(a, b); }));
          dom.push_back(ext);
          case2b = Formula::all(std::move(dom));
        }
        f = case1 || (alg_ge(s, t) && (case2a || case2b));
      }
      f = sys().define(f);
    }
    wpo_.emplace(std::move(key), f);
    return f;
  }

  Formula marked_pair(const Term& s, const Term& t, bool strict) {
    Formula prec = strict ? prec_gt(s.symbol(), t.symbol()) : prec_ge(s.symbol(), t.symbol());
    Term us = s.marked(), ut = t.marked();
    return alg_gt(us, ut) || (alg_ge(us, ut) && prec);
  }

  Formula spo(const Term& s, const Term& t) {
    TermPair key{s, t};
    if (auto it = spo_.find(key); it != spo_.end()) return it->second;
    Formula f = false;
    if (!s.is_var() && !(s == t)) {
      std::vector<Formula> sub;
      for (const auto& si : s.args()) sub.push_back(si == t ? Formula(true) : spo(si, t));
      Formula case1 = Formula::any(std::move(sub));
      Formula case2 = false;
      if (!t.is_var() && !case1.is_true()) {
        std::vector<Formula> dom;
        for (const auto& tj : t.args()) dom.push_back(spo(s, tj));
        Formula ext = marked_pair(s, t, true) ||
                      (marked_pair(s, t, false) &&
                       lex(s, t, [this](const Term& a, const Term& b) { return spo(a, b); }));
        dom.push_back(ext);
        case2 = Formula::all(std::move(dom));
      }
      f = sys().define(case1 || case2);
    }
    spo_.emplace(std::move(key), f);
    return f;
  }

  Formula gwpo(const Term& l, const Term& r) { return sys().define(alg_ge(l, r) && spo(l, r)); }

  // A unary symbol of weight zero must be above every other symbol.
  Formula admissibility() {
    std::vector<Formula> parts;
    for (const auto& f : enc_.signature) {
      if (f.arity != 1) continue;
      std::vector<Formula> above;
      for (const auto& g : enc_.signature)
        if (g.name != f.name) above.push_back(prec_gt(f, g));
      parts.push_back(interp(f).constant >= one() || Formula::all(std::move(above)));
    }
    return Formula::all(std::move(parts));
  }

  const Trs& trs_;
  Encoding enc_;
  std::map<Symbol, ParamInterp> interps_;
  std::map<std::string, LinExpr> levels_;
  std::unordered_map<Term, ParamPoly, TermHash> polys_;
  std::unordered_map<Term, ParamMaxPlus, TermHash> maxplus_;
  std::unordered_map<TermPair, Formula, TermPairHash> alg_ge_, alg_gt_, wpo_, spo_;
};

}  // namespace

Encoding encode_orientation(const Trs& trs, const SearchSpace& space, const EncodeOptions& opts) {
  space.validate();
  for (const auto& r : trs.rules) {
    if (!r.well_formed()) throw EncodeError("ill-formed rule " + r.to_string());
    if (std::max(r.lhs.depth(), r.rhs.depth()) > opts.max_depth)
      throw EncodeError("rule " + r.to_string() + " exceeds nesting depth " + std::to_string(opts.max_depth));
  }
  return Encoder(trs, space).run();
}

}  // namespace gwpo
