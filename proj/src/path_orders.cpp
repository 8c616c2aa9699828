#include "gwpo/path_orders.hpp"

#include <algorithm>
#include <memory>

namespace gwpo {

std::int64_t Precedence::level_of(const std::string& f) const {
  auto it = level.find(f);
  return it == level.end() ? 0 : it->second;
}

std::string Precedence::to_string() const {
  std::vector<std::pair<std::string, std::int64_t>> items(level.begin(), level.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::string out;
  for (const auto& [f, l] : items) {
    if (!out.empty()) out += ' ';
    out += f + ":" + std::to_string(l);
  }
  return out;
}

std::string Derivation::to_string(std::size_t indent) const {
  std::string out(indent, ' ');
  if (!label.empty()) out += "[" + label + "] ";
  out += claim + "\n";
  for (const auto& p : premises) out += p.to_string(indent + 2);
  return out;
}

const NormalForm& AlgebraComparator::normal_form(const Term& t) {
  auto it = cache_.find(t);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(t, eval_symbolic(algebra_, t)).first->second;
}

namespace {

Derivation leaf(std::string claim) { return Derivation{"", std::move(claim), {}}; }

std::string rel(const Term& s, const char* op, const Term& t) { return s.to_string() + " " + op + " " + t.to_string(); }

OrderPair make_pair(const Algebra& a, const Precedence& p, bool marked) {
  auto cmp = std::make_shared<AlgebraComparator>(a);
  auto prec = std::make_shared<Precedence>(p);
  auto check = [marked](const Term& s, const Term& t) {
    if (s.is_var() || t.is_var())
      throw PreconditionError("order pair applied to variable term: " + s.to_string() + ", " + t.to_string());
    return marked ? std::pair{s.marked(), t.marked()} : std::pair{s, t};
  };
  OrderPair pair;
  pair.qge = [cmp, prec, check](const Term& s, const Term& t) {
    auto [u, v] = check(s, t);
    return cmp->gt(u, v) || (cmp->ge(u, v) && prec->ge(s.symbol(), t.symbol()));
  };
  pair.sgt = [cmp, prec, check](const Term& s, const Term& t) {
    auto [u, v] = check(s, t);
    return cmp->gt(u, v) || (cmp->ge(u, v) && prec->gt(s.symbol(), t.symbol()));
  };
  return pair;
}

}  // namespace

OrderPair build_wpo_pair(const Algebra& a, const Precedence& p) { return make_pair(a, p, false); }
OrderPair build_marked_pair(const Algebra& a, const Precedence& p) { return make_pair(a, p, true); }

// ---------------------------------------------------------------------------

bool WpoOrder::gt(const Term& s, const Term& t) {
  TermPair key{s, t};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool r = compute(s, t);
  memo_.emplace(std::move(key), r);
  return r;
}

bool WpoOrder::compute(const Term& s, const Term& t) {
  if (cmp_.gt(s, t)) return true;
  if (s.is_var() || !cmp_.ge(s, t)) return false;
  for (const auto& si : s.args())
    if (ge(si, t)) return true;
  if (t.is_var()) return false;
  for (const auto& tj : t.args())
    if (!gt(s, tj)) return false;
  if (prec_.gt(s.symbol(), t.symbol())) return true;
  return prec_.ge(s.symbol(), t.symbol()) &&
         lex_ext([this](const Term& a, const Term& b) { return gt(a, b); }, s.args(), t.args());
}

std::optional<Derivation> WpoOrder::derive(const Term& s, const Term& t) {
  if (!gt(s, t)) return std::nullopt;
  const std::string claim = rel(s, ">_wpo", t);
  if (cmp_.gt(s, t)) return Derivation{"WPO 1", claim, {leaf(rel(s, ">_A", t))}};

  for (const auto& si : s.args()) {
    if (si == t) return Derivation{"WPO 2a", claim, {leaf(rel(s, ">=_A", t)), leaf(rel(si, ">=_wpo", t))}};
    if (gt(si, t)) return Derivation{"WPO 2a", claim, {leaf(rel(s, ">=_A", t)), *derive(si, t)}};
  }

  std::vector<Derivation> premises{leaf(rel(s, ">=_A", t))};
  const bool strict = prec_.gt(s.symbol(), t.symbol());
  premises.push_back(leaf(s.symbol().name + (strict ? " > " : " >= ") + t.symbol().name));
  for (const auto& tj : t.args()) premises.push_back(*derive(s, tj));
  if (strict) return Derivation{"WPO 2b(i)", claim, std::move(premises)};

  const std::size_t n = std::min(s.args().size(), t.args().size());
  std::size_t k = 0;
  while (k < n && s.arg(k) == t.arg(k)) ++k;
  if (k < n)
    premises.push_back(*derive(s.arg(k), t.arg(k)));
  else
    premises.push_back(leaf("argument list of " + s.to_string() + " extends that of " + t.to_string()));
  return Derivation{"WPO 2b(ii)", claim, std::move(premises)};
}

// ---------------------------------------------------------------------------

bool SpoOrder::gt(const Term& s, const Term& t) {
  TermPair key{s, t};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool r = compute(s, t);
  memo_.emplace(std::move(key), r);
  return r;
}

bool SpoOrder::compute(const Term& s, const Term& t) {
  if (s.is_var()) return false;
  for (const auto& si : s.args())
    if (ge(si, t)) return true;
  if (t.is_var()) return false;
  for (const auto& tj : t.args())
    if (!gt(s, tj)) return false;
  if (pair_.sgt(s, t)) return true;
  return pair_.qge(s, t) &&
         lex_ext([this](const Term& a, const Term& b) { return gt(a, b); }, s.args(), t.args());
}

std::optional<Derivation> SpoOrder::derive(const Term& s, const Term& t) {
  if (!gt(s, t)) return std::nullopt;
  const std::string claim = rel(s, ">_spo", t);
  // Case 2 is tried before case 1.
  bool by_case2 = !t.is_var();
  if (by_case2)
    for (const auto& tj : t.args()) by_case2 = by_case2 && gt(s, tj);
  const bool strict = by_case2 && pair_.sgt(s, t);
  if (by_case2 && !strict)
    by_case2 = pair_.qge(s, t) && lex_ext([this](const Term& a, const Term& b) { return gt(a, b); }, s.args(), t.args());

  if (!by_case2) {
    for (const auto& si : s.args()) {
      if (si == t) return Derivation{"SPO 1", claim, {leaf(rel(si, ">=_spo", t))}};
      if (gt(si, t)) return Derivation{"SPO 1", claim, {*derive(si, t)}};
    }
  }
  std::vector<Derivation> premises;
  premises.push_back(leaf(rel(s, strict ? "|>" : "|>~", t)));
  for (const auto& tj : t.args()) premises.push_back(*derive(s, tj));
  if (strict) return Derivation{"SPO 2a", claim, std::move(premises)};

  const std::size_t n = std::min(s.args().size(), t.args().size());
  std::size_t k = 0;
  while (k < n && s.arg(k) == t.arg(k)) ++k;
  if (k < n)
    premises.push_back(*derive(s.arg(k), t.arg(k)));
  else
    premises.push_back(leaf("argument list of " + s.to_string() + " extends that of " + t.to_string()));
  return Derivation{"SPO 2b", claim, std::move(premises)};
}

std::optional<Derivation> GwpoOrder::derive(const Term& s, const Term& t) {
  if (!gt(s, t)) return std::nullopt;
  return Derivation{"MSPO", rel(s, ">_gwpo", t), {leaf(rel(s, ">=_A", t)), *spo_.derive(s, t)}};
}

// ---------------------------------------------------------------------------

bool wpo_gt(const Algebra& a, const Precedence& p, const Term& s, const Term& t) {
  return WpoOrder(a, p).gt(s, t);
}

bool spo_gt(const OrderPair& pair, const Term& s, const Term& t) { return SpoOrder(pair).gt(s, t); }

bool mspo_gt(const TermRelation& quasi, const OrderPair& pair, const Term& s, const Term& t) {
  return quasi(s, t) && spo_gt(pair, s, t);
}

bool gwpo_gt(const Algebra& a, const Precedence& p, const Term& s, const Term& t) {
  return GwpoOrder(a, p).gt(s, t);
}

OrientationReport orients(const TermRelation& order, const Trs& trs) {
  OrientationReport report;
  for (std::size_t i = 0; i < trs.rules.size(); ++i) {
    const Rule& r = trs.rules[i];
    if (!r.well_formed()) throw PreconditionError("ill-formed rule " + r.to_string());
    if (!order(r.lhs, r.rhs)) {
      report.oriented = false;
      report.failing.push_back(i);
    }
  }
  return report;
}

}  // namespace gwpo
