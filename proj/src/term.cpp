#include "gwpo/term.hpp"

#include <algorithm>
#include <functional>

namespace gwpo {

namespace detail {
struct TermNode {
  bool is_var = false;
  std::string var;
  Symbol symbol;
  std::vector<Term> args;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t depth = 1;
};
}  // namespace detail

namespace {
std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
}  // namespace

Term Term::var(std::string name) {
  auto n = std::make_shared<detail::TermNode>();
  n->is_var = true;
  n->hash = mix(0x5bd1e995, std::hash<std::string>{}(name));
  n->var = std::move(name);
  return Term(std::move(n));
}

Term Term::app(Symbol f, std::vector<Term> args) {
  if (args.size() != f.arity) {
    throw std::invalid_argument("symbol " + f.display() + " expects " + std::to_string(f.arity) +
                                " arguments, got " + std::to_string(args.size()));
  }
  auto n = std::make_shared<detail::TermNode>();
  std::size_t h = mix(std::hash<std::string>{}(f.name), f.marked ? 0x2f : 0x11);
  std::size_t depth = 0;
  for (const auto& a : args) {
    h = mix(h, a.hash());
    n->size += a.size();
    depth = std::max(depth, a.depth());
  }
  n->depth = depth + 1;
  n->hash = h;
  n->symbol = std::move(f);
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::is_var() const { return node_->is_var; }

const std::string& Term::var_name() const {
  if (!node_->is_var) throw std::logic_error("var_name() on application term");
  return node_->var;
}

const Symbol& Term::symbol() const {
  if (node_->is_var) throw std::logic_error("symbol() on variable " + node_->var);
  return node_->symbol;
}

std::span<const Term> Term::args() const { return node_->args; }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::depth() const { return node_->depth; }

Term Term::marked() const {
  if (is_var()) throw std::logic_error("cannot mark variable " + node_->var);
  return app(node_->symbol.with_mark(true), node_->args);
}

std::vector<std::string> Term::variables() const {
  std::vector<std::string> out;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    if (t.is_var()) {
      if (std::find(out.begin(), out.end(), t.var_name()) == out.end()) out.push_back(t.var_name());
      return;
    }
    for (const auto& a : t.args()) walk(a);
  };
  walk(*this);
  return out;
}

bool Term::contains_var(const std::string& x) const {
  if (is_var()) return node_->var == x;
  return std::any_of(node_->args.begin(), node_->args.end(),
                     [&](const Term& a) { return a.contains_var(x); });
}

std::vector<Term> Term::subterms() const {
  std::vector<Term> out;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    out.push_back(t);
    if (!t.is_var())
      for (const auto& a : t.args()) walk(a);
  };
  walk(*this);
  return out;
}

bool Term::is_proper_subterm_of(const Term& other) const {
  if (other.is_var()) return false;
  for (const auto& a : other.args())
    if (a == *this || is_proper_subterm_of(a)) return true;
  return false;
}

std::string Term::to_string() const {
  if (is_var()) return node_->var;
  std::string s = node_->symbol.display();
  if (node_->args.empty()) return s;
  s += '(';
  for (std::size_t i = 0; i < node_->args.size(); ++i) {
    if (i) s += ", ";
    s += node_->args[i].to_string();
  }
  s += ')';
  return s;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
  if (a.node_->is_var != b.node_->is_var) return false;
  if (a.node_->is_var) return a.node_->var == b.node_->var;
  return a.node_->symbol == b.node_->symbol && a.node_->args == b.node_->args;
}

const Term* Substitution::find(const std::string& x) const {
  auto it = map_.find(x);
  return it == map_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (t.is_var()) {
    const Term* r = find(t.var_name());
    return r ? *r : t;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(apply(a));
  return Term::app(t.symbol(), std::move(args));
}

Substitution Substitution::then(const Substitution& after) const {
  Substitution out;
  for (const auto& [x, t] : map_) out.bind(x, after.apply(t));
  for (const auto& [x, t] : after.map_)
    if (!map_.count(x)) out.bind(x, t);
  return out;
}

Term replace_at(const Term& t, std::span<const std::size_t> position, const Term& replacement) {
  if (position.empty()) return replacement;
  if (t.is_var() || position.front() >= t.args().size())
    throw std::out_of_range("invalid position in " + t.to_string());
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[position.front()] = replace_at(args[position.front()], position.subspan(1), replacement);
  return Term::app(t.symbol(), std::move(args));
}

bool Rule::well_formed() const {
  if (lhs.is_var()) return false;
  for (const auto& x : rhs.variables())
    if (!lhs.contains_var(x)) return false;
  return true;
}

const Symbol* Trs::find_symbol(const std::string& name) const {
  for (const auto& f : signature)
    if (f.name == name) return &f;
  return nullptr;
}

bool Trs::all_well_formed() const {
  return std::all_of(rules.begin(), rules.end(), [](const Rule& r) { return r.well_formed(); });
}

}  // namespace gwpo
