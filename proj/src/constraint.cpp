#include "gwpo/constraint.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

namespace gwpo {

LinExpr LinExpr::scaled(std::int64_t k) const {
  if (k == 0) return num(0);
  LinExpr out{constant * k, {}};
  for (const auto& [n, c] : terms) out.terms.emplace(n, c * k);
  return out;
}

LinExpr operator+(const LinExpr& a, const LinExpr& b) {
  LinExpr out = a;
  out.constant += b.constant;
  for (const auto& [n, c] : b.terms) {
    auto& slot = out.terms[n];
    slot += c;
    if (slot == 0) out.terms.erase(n);
  }
  return out;
}

LinExpr operator-(const LinExpr& a, const LinExpr& b) { return a + b.scaled(-1); }

// ---------------------------------------------------------------------------

struct Formula::Node {
  Kind kind = Kind::constant;
  bool value = true;
  CmpOp op = CmpOp::ge;
  LinExpr expr;
  std::vector<Formula> children;
  std::string name;
};

Formula::Formula(bool value) {
  static const auto t = std::make_shared<const Node>(Node{Kind::constant, true, CmpOp::ge, {}, {}, {}});
  static const auto f = std::make_shared<const Node>(Node{Kind::constant, false, CmpOp::ge, {}, {}, {}});
  node_ = value ? t : f;
}

Formula Formula::atom(CmpOp op, const LinExpr& lhs, const LinExpr& rhs) {
  LinExpr e = lhs - rhs;
  if (e.is_constant()) {
    switch (op) {
      case CmpOp::ge: return Formula(e.constant >= 0);
      case CmpOp::gt: return Formula(e.constant > 0);
      case CmpOp::eq: return Formula(e.constant == 0);
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::atom;
  n->op = op;
  n->expr = std::move(e);
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Formula Formula::ref(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ref;
  n->name = name;
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Formula Formula::all(std::vector<Formula> fs) {
  std::vector<Formula> flat;
  for (auto& f : fs) {
    if (f.kind() == Kind::constant) {
      if (!f.value()) return Formula(false);
      continue;
    }
    if (f.kind() == Kind::conj)
      flat.insert(flat.end(), f.children().begin(), f.children().end());
    else
      flat.push_back(std::move(f));
  }
  if (flat.empty()) return Formula(true);
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::conj;
  n->children = std::move(flat);
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Formula Formula::any(std::vector<Formula> fs) {
  std::vector<Formula> flat;
  for (auto& f : fs) {
    if (f.kind() == Kind::constant) {
      if (f.value()) return Formula(true);
      continue;
    }
    if (f.kind() == Kind::disj)
      flat.insert(flat.end(), f.children().begin(), f.children().end());
    else
      flat.push_back(std::move(f));
  }
  if (flat.empty()) return Formula(false);
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::disj;
  n->children = std::move(flat);
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Formula operator!(const Formula& a) {
  if (a.kind() == Formula::Kind::constant) return Formula(!a.value());
  if (a.kind() == Formula::Kind::negation) return a.children().front();
  auto n = std::make_shared<Formula::Node>();
  n->kind = Formula::Kind::negation;
  n->children = {a};
  return Formula(std::shared_ptr<const Formula::Node>(std::move(n)));
}

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::is_true() const { return node_->kind == Kind::constant && node_->value; }
bool Formula::is_false() const { return node_->kind == Kind::constant && !node_->value; }
bool Formula::value() const { return node_->value; }
CmpOp Formula::op() const { return node_->op; }
const LinExpr& Formula::expr() const { return node_->expr; }
const std::vector<Formula>& Formula::children() const { return node_->children; }
const std::string& Formula::name() const { return node_->name; }

std::size_t Formula::atom_count() const {
  if (node_->kind == Kind::atom) return 1;
  std::size_t n = 0;
  for (const auto& c : node_->children) n += c.atom_count();
  return n;
}

// ---------------------------------------------------------------------------

std::string smt_safe(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c)) {
      out += static_cast<char>(c);
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "_%02x", c);
      out += buf;
    }
  }
  return out;
}

namespace {
std::string unknown_name(UnknownVar::Role role, const Symbol& f, std::optional<std::size_t> index) {
  std::string prefix;
  switch (role) {
    case UnknownVar::Role::constant: prefix = "c0"; break;
    case UnknownVar::Role::coefficient:
    case UnknownVar::Role::offset: prefix = "c" + std::to_string(*index + 1); break;
    case UnknownVar::Role::slope: prefix = "d" + std::to_string(*index + 1); break;
    case UnknownVar::Role::level: prefix = "lvl"; break;
  }
  return prefix + "_" + smt_safe(f.name) + (f.marked ? "_sharp" : "");
}
}  // namespace

UnknownVar ConstraintSystem::add_unknown(UnknownVar::Role role, const Symbol& f,
                                                std::optional<std::size_t> index, std::int64_t lo,
                                                std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("empty range for unknown of " + f.display());
  UnknownVar u{role, f, index, unknown_name(role, f, index), lo, hi};
  if (unknown_index_.count(u.name)) throw std::logic_error("duplicate unknown " + u.name);
  unknown_index_.emplace(u.name, unknowns_.size());
  unknowns_.push_back(std::move(u));
  return unknowns_.back();
}

const UnknownVar* ConstraintSystem::find_unknown(const std::string& name) const {
  auto it = unknown_index_.find(name);
  return it == unknown_index_.end() ? nullptr : &unknowns_[it->second];
}

LinExpr ConstraintSystem::value(const UnknownVar& u) const {
  return u.lo == u.hi ? LinExpr::num(u.lo) : LinExpr::var(u.name);
}

bool ConstraintSystem::is_boolean(const std::string& name) const {
  if (boolean_.count(name)) return true;
  const UnknownVar* u = find_unknown(name);
  return u && u->lo >= 0 && u->hi <= 1;
}

std::string ConstraintSystem::product(const std::string& a, const std::string& b) {
  if (a == b) return a;
  auto key = std::minmax(a, b);
  auto it = products_.find({key.first, key.second});
  if (it != products_.end()) return it->second;
  std::string name = "p_" + std::to_string(next_id_++);
  products_.emplace(std::pair{key.first, key.second}, name);
  defs_.push_back(ProductDef{name, key.first, key.second});
  boolean_.emplace(name, true);
  return name;
}

LinExpr ConstraintSystem::times01(const LinExpr& b, const LinExpr& e) {
  if (b.is_constant()) return e.scaled(b.constant);
  if (e.is_constant()) return b.scaled(e.constant);
  if (b.constant != 0 || b.terms.size() != 1 || b.terms.begin()->second != 1 || !is_boolean(b.terms.begin()->first))
    return ite(b >= LinExpr::num(1), e, LinExpr::num(0));
  const std::string& bname = b.terms.begin()->first;
  bool all_boolean = std::all_of(e.terms.begin(), e.terms.end(), [&](const auto& kv) { return is_boolean(kv.first); });
  if (!all_boolean) return ite(b >= LinExpr::num(1), e, LinExpr::num(0));
  LinExpr out = b.scaled(e.constant);
  for (const auto& [n, c] : e.terms) out = out + LinExpr::var(product(bname, n)).scaled(c);
  return out;
}

LinExpr ConstraintSystem::ite(const Formula& cond, const LinExpr& then_expr, const LinExpr& else_expr) {
  if (cond.kind() == Formula::Kind::constant) return cond.value() ? then_expr : else_expr;
  if (then_expr == else_expr) return then_expr;
  std::string name = "e_" + std::to_string(next_id_++);
  defs_.push_back(IteDef{name, cond, then_expr, else_expr});
  return LinExpr::var(name);
}

Formula ConstraintSystem::define(const Formula& f) {
  if (f.kind() == Formula::Kind::constant || f.kind() == Formula::Kind::ref) return f;
  std::string name = "b_" + std::to_string(next_id_++);
  defs_.push_back(BoolDef{name, f});
  return Formula::ref(name);
}

std::size_t ConstraintSystem::atom_count() const {
  std::size_t n = root.atom_count();
  for (const auto& d : defs_) {
    if (const auto* b = std::get_if<BoolDef>(&d)) n += b->body.atom_count();
    if (const auto* i = std::get_if<IteDef>(&d)) n += i->cond.atom_count();
  }
  return n;
}

// ---------------------------------------------------------------------------

ModelEvaluator::ModelEvaluator(const ConstraintSystem& sys, const Model& unknowns) : ints_(unknowns) {
  for (const auto& d : sys.definitions()) {
    if (const auto* p = std::get_if<ProductDef>(&d)) {
      ints_[p->name] = eval(LinExpr::var(p->left)) * eval(LinExpr::var(p->right));
    } else if (const auto* i = std::get_if<IteDef>(&d)) {
      ints_[i->name] = eval(i->cond) ? eval(i->then_expr) : eval(i->else_expr);
    } else {
      const auto& b = std::get<BoolDef>(d);
      bools_[b.name] = eval(b.body);
    }
  }
}

std::int64_t ModelEvaluator::eval(const LinExpr& e) const {
  std::int64_t v = e.constant;
  for (const auto& [n, c] : e.terms) {
    auto it = ints_.find(n);
    if (it == ints_.end()) throw std::out_of_range("no value for " + n);
    v += c * it->second;
  }
  return v;
}

bool ModelEvaluator::eval(const Formula& f) const {
  switch (f.kind()) {
    case Formula::Kind::constant: return f.value();
    case Formula::Kind::atom: {
      std::int64_t v = eval(f.expr());
      switch (f.op()) {
        case CmpOp::ge: return v >= 0;
        case CmpOp::gt: return v > 0;
        case CmpOp::eq: return v == 0;
      }
      return false;
    }
    case Formula::Kind::conj:
      return std::all_of(f.children().begin(), f.children().end(), [&](const Formula& c) { return eval(c); });
    case Formula::Kind::disj:
      return std::any_of(f.children().begin(), f.children().end(), [&](const Formula& c) { return eval(c); });
    case Formula::Kind::negation: return !eval(f.children().front());
    case Formula::Kind::ref: {
      auto it = bools_.find(f.name());
      if (it == bools_.end()) throw std::out_of_range("no value for " + f.name());
      return it->second;
    }
  }
  return false;
}

}  // namespace gwpo
