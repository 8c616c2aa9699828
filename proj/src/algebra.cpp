#include "gwpo/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace gwpo {

const char* to_string(InterpKind k) { return k == InterpKind::linear ? "linear" : "maxplus"; }

void Algebra::set(const Symbol& f, LinearInterp interp) {
  if (kind_ != InterpKind::linear)
    throw AlgebraError("linear interpretation for " + f.display() + " in a max/plus algebra");
  if (interp.coeffs.size() != f.arity)
    throw AlgebraError("interpretation of " + f.display() + " has wrong arity");
  if (interp.constant < 0)
    throw AlgebraError("negative constant " + std::to_string(interp.constant) + " for " + f.display() +
                       ": values must stay in N");
  for (auto c : interp.coeffs)
    if (c < 0) throw AlgebraError("negative coefficient for " + f.display());
  interps_.insert_or_assign(f, std::move(interp));
}

void Algebra::set(const Symbol& f, MaxPlusInterp interp) {
  if (kind_ != InterpKind::maxplus)
    throw AlgebraError("max/plus interpretation for " + f.display() + " in a linear algebra");
  if (interp.offsets.size() != f.arity || interp.slopes.size() != f.arity)
    throw AlgebraError("interpretation of " + f.display() + " has wrong arity");
  if (interp.floor < 0)
    throw AlgebraError("negative constant " + std::to_string(interp.floor) + " for " + f.display() +
                       ": values must stay in N");
  for (auto d : interp.slopes)
    if (d < 0) throw AlgebraError("negative slope for " + f.display());
  interps_.insert_or_assign(f, std::move(interp));
}

void Algebra::set_shared(const Symbol& f, const Interp& interp) {
  std::visit(
      [&](const auto& i) {
        set(f.with_mark(false), i);
        set(f.with_mark(true), i);
      },
      interp);
}

const Interp& Algebra::at(const Symbol& f) const {
  auto it = interps_.find(f);
  if (it == interps_.end()) throw AlgebraError("no interpretation for " + f.display());
  return it->second;
}

// ---------------------------------------------------------------------------

namespace {
std::int64_t lookup(const Assignment& alpha, const std::string& x) {
  auto it = alpha.find(x);
  if (it == alpha.end()) throw AlgebraError("no value assigned to variable " + x);
  return it->second;
}
}  // namespace

std::int64_t LinearPoly::coeff(const std::string& x) const {
  auto it = coeffs.find(x);
  return it == coeffs.end() ? 0 : it->second;
}

std::int64_t LinearPoly::value(const Assignment& alpha) const {
  std::int64_t v = constant;
  for (const auto& [x, c] : coeffs) v += c * lookup(alpha, x);
  return v;
}

std::string LinearPoly::to_string() const {
  std::string s;
  if (constant != 0 || coeffs.empty()) s = std::to_string(constant);
  for (const auto& [x, c] : coeffs) {
    if (!s.empty()) s += " + ";
    s += c == 1 ? x : std::to_string(c) + "*" + x;
  }
  return s;
}

std::int64_t MaxPlusNF::value(const Assignment& alpha) const {
  std::int64_t v = floor;
  for (const auto& b : branches) v = std::max(v, b.constant + b.coeff * lookup(alpha, b.var));
  return v;
}

MaxPlusNF MaxPlusNF::pruned() const {
  std::vector<MaxPlusBranch> sorted = branches;
  std::sort(sorted.begin(), sorted.end(), [](const MaxPlusBranch& a, const MaxPlusBranch& b) {
    if (a.var != b.var) return a.var < b.var;
    if (a.coeff != b.coeff) return a.coeff > b.coeff;
    return a.constant > b.constant;
  });
  MaxPlusNF out{floor, {}};
  for (const auto& b : sorted) {
    bool dominated = std::any_of(out.branches.begin(), out.branches.end(), [&](const MaxPlusBranch& k) {
      return k.var == b.var && k.coeff >= b.coeff && k.constant >= b.constant;
    });
    if (!dominated) out.branches.push_back(b);
  }
  return out;
}

std::string MaxPlusNF::to_string() const {
  std::string s = "max{" + std::to_string(floor);
  for (const auto& b : branches) {
    s += ", ";
    if (b.constant != 0) s += std::to_string(b.constant) + " + ";
    s += b.coeff == 1 ? b.var : std::to_string(b.coeff) + "*" + b.var;
  }
  return s + "}";
}

std::int64_t value_of(const NormalForm& nf, const Assignment& alpha) {
  return std::visit([&](const auto& n) { return n.value(alpha); }, nf);
}

std::string to_string(const NormalForm& nf) {
  return std::visit([](const auto& n) { return n.to_string(); }, nf);
}

// ---------------------------------------------------------------------------

namespace {

LinearPoly eval_linear(const Algebra& a, const Term& t) {
  if (t.is_var()) return LinearPoly{0, {{t.var_name(), 1}}};
  const auto* interp = std::get_if<LinearInterp>(&a.at(t.symbol()));
  if (!interp) throw AlgebraError("algebra kind mismatch at " + t.symbol().display());
  LinearPoly out{interp->constant, {}};
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    const std::int64_t c = interp->coeffs[i];
    if (c == 0) continue;
    LinearPoly sub = eval_linear(a, t.arg(i));
    out.constant += c * sub.constant;
    for (const auto& [x, k] : sub.coeffs) out.coeffs[x] += c * k;
  }
  return out;
}

MaxPlusNF eval_maxplus(const Algebra& a, const Term& t, bool prune) {
  if (t.is_var()) return MaxPlusNF{0, {MaxPlusBranch{0, t.var_name(), 1}}};
  const auto* interp = std::get_if<MaxPlusInterp>(&a.at(t.symbol()));
  if (!interp) throw AlgebraError("algebra kind mismatch at " + t.symbol().display());
  MaxPlusNF out{interp->floor, {}};
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    const std::int64_t c = interp->offsets[i];
    const std::int64_t d = interp->slopes[i];
    if (d == 0) {
      out.floor = std::max(out.floor, c);
      continue;
    }
    MaxPlusNF sub = eval_maxplus(a, t.arg(i), prune);
    out.floor = std::max(out.floor, c + d * sub.floor);
    for (const auto& b : sub.branches)
      out.branches.push_back(MaxPlusBranch{c + d * b.constant, b.var, d * b.coeff});
  }
  return prune ? out.pruned() : out;
}

}  // namespace

NormalForm eval_symbolic(const Algebra& a, const Term& t, bool prune) {
  if (a.kind() == InterpKind::linear) return eval_linear(a, t);
  return eval_maxplus(a, t, prune);
}

std::int64_t eval_concrete(const Algebra& a, const Term& t, const Assignment& alpha) {
  if (t.is_var()) return lookup(alpha, t.var_name());
  const Interp& interp = a.at(t.symbol());
  if (const auto* lin = std::get_if<LinearInterp>(&interp)) {
    std::int64_t v = lin->constant;
    for (std::size_t i = 0; i < t.args().size(); ++i)
      if (lin->coeffs[i] != 0) v += lin->coeffs[i] * eval_concrete(a, t.arg(i), alpha);
    return v;
  }
  const auto& mp = std::get<MaxPlusInterp>(interp);
  std::int64_t v = mp.floor;
  for (std::size_t i = 0; i < t.args().size(); ++i)
    v = std::max(v, mp.offsets[i] + mp.slopes[i] * eval_concrete(a, t.arg(i), alpha));
  return v;
}

// ---------------------------------------------------------------------------

namespace {

bool linear_cmp(const LinearPoly& l, const LinearPoly& r, bool strict) {
  if (strict ? l.constant <= r.constant : l.constant < r.constant) return false;
  for (const auto& [x, c] : r.coeffs)
    if (l.coeff(x) < c) return false;
  return true;
}

bool maxplus_cmp(const MaxPlusNF& l, const MaxPlusNF& r, bool strict) {
  auto above = [strict](std::int64_t big, std::int64_t small) { return strict ? big > small : big >= small; };
  bool floor_ok = above(l.floor, r.floor) ||
                  std::any_of(l.branches.begin(), l.branches.end(),
                              [&](const MaxPlusBranch& b) { return above(b.constant, r.floor); });
  if (!floor_ok) return false;
  for (const auto& rb : r.branches) {
    bool ok = std::any_of(l.branches.begin(), l.branches.end(), [&](const MaxPlusBranch& lb) {
      return lb.var == rb.var && lb.coeff >= rb.coeff && above(lb.constant, rb.constant);
    });
    if (!ok) return false;
  }
  return true;
}

bool compare(const NormalForm& lhs, const NormalForm& rhs, bool strict) {
  if (lhs.index() != rhs.index()) throw AlgebraError("comparing normal forms of different kinds");
  if (const auto* l = std::get_if<LinearPoly>(&lhs)) return linear_cmp(*l, std::get<LinearPoly>(rhs), strict);
  return maxplus_cmp(std::get<MaxPlusNF>(lhs), std::get<MaxPlusNF>(rhs), strict);
}

}  // namespace

bool cmp_ge(const NormalForm& lhs, const NormalForm& rhs) { return compare(lhs, rhs, false); }
bool cmp_gt(const NormalForm& lhs, const NormalForm& rhs) { return compare(lhs, rhs, true); }

bool is_simple(const Algebra& a) {
  for (const auto& [f, interp] : a.interpretations()) {
    if (f.marked) continue;
    if (const auto* lin = std::get_if<LinearInterp>(&interp)) {
      for (auto c : lin->coeffs)
        if (c < 1) return false;
    } else {
      const auto& mp = std::get<MaxPlusInterp>(interp);
      for (std::size_t i = 0; i < mp.slopes.size(); ++i)
        if (mp.slopes[i] < 1 || mp.offsets[i] < 0) return false;
    }
  }
  return true;
}

bool is_weakly_monotone(const Algebra& a) {
  for (const auto& [f, interp] : a.interpretations()) {
    const auto& slopes = std::holds_alternative<LinearInterp>(interp) ? std::get<LinearInterp>(interp).coeffs
                                                                      : std::get<MaxPlusInterp>(interp).slopes;
    if (std::any_of(slopes.begin(), slopes.end(), [](std::int64_t s) { return s < 0; })) return false;
  }
  return true;
}

bool in_search_class(const Algebra& a) {
  for (const auto& [f, interp] : a.interpretations()) {
    const auto& slopes = std::holds_alternative<LinearInterp>(interp) ? std::get<LinearInterp>(interp).coeffs
                                                                      : std::get<MaxPlusInterp>(interp).slopes;
    if (std::any_of(slopes.begin(), slopes.end(), [](std::int64_t s) { return s != 0 && s != 1; })) return false;
  }
  return true;
}

bool marked_shared(const Algebra& a) {
  for (const auto& [f, interp] : a.interpretations()) {
    if (f.marked) continue;
    auto it = a.interpretations().find(f.with_mark(true));
    if (it != a.interpretations().end() && !(it->second == interp)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

std::string slope_term(std::int64_t k, std::size_t i) {
  std::string x = "x" + std::to_string(i);
  return k == 1 ? x : std::to_string(k) + "*" + x;
}

std::string lhs_text(const Symbol& f) {
  std::string s = f.display();
  if (f.arity == 0) return s;
  s += '(';
  for (std::size_t i = 0; i < f.arity; ++i) s += (i ? ", x" : "x") + std::to_string(i);
  return s + ')';
}

}  // namespace

std::string print_interp(const Symbol& f, const Interp& interp) {
  std::string rhs;
  if (const auto* lin = std::get_if<LinearInterp>(&interp)) {
    if (lin->constant != 0) rhs = std::to_string(lin->constant);
    for (std::size_t i = 0; i < lin->coeffs.size(); ++i) {
      if (lin->coeffs[i] == 0) continue;
      if (!rhs.empty()) rhs += " + ";
      rhs += slope_term(lin->coeffs[i], i);
    }
    if (rhs.empty()) rhs = "0";
  } else {
    const auto& mp = std::get<MaxPlusInterp>(interp);
    rhs = "max{" + std::to_string(mp.floor);
    for (std::size_t i = 0; i < mp.slopes.size(); ++i) {
      rhs += ", ";
      if (mp.slopes[i] == 0)
        rhs += std::to_string(mp.offsets[i]);
      else if (mp.offsets[i] == 0)
        rhs += slope_term(mp.slopes[i], i);
      else
        rhs += std::to_string(mp.offsets[i]) + " + " + slope_term(mp.slopes[i], i);
    }
    rhs += "}";
  }
  return lhs_text(f) + " = " + rhs;
}

std::string print_algebra(const Algebra& a) {
  std::string out;
  for (const auto& [f, interp] : a.interpretations()) out += print_interp(f, interp) + "\n";
  return out;
}

namespace {

std::string strip(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

std::int64_t parse_int(const std::string& s, const std::string& line) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw AlgebraError("bad number '" + s + "' in: " + line);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Sum of an integer and/or `[k*]xI`; returns (constant, slope, index or -1).
struct Affine {
  std::int64_t constant = 0;
  std::int64_t slope = 0;
  long index = -1;
};

Affine parse_affine(const std::string& expr, const std::string& line) {
  Affine out;
  for (const auto& part : split(expr, '+')) {
    if (part.empty()) throw AlgebraError("malformed expression in: " + line);
    auto xpos = part.find('x');
    if (xpos == std::string::npos) {
      out.constant += parse_int(part, line);
      continue;
    }
    std::int64_t k = 1;
    if (xpos > 0) {
      if (part[xpos - 1] != '*') throw AlgebraError("malformed coefficient in: " + line);
      k = parse_int(part.substr(0, xpos - 1), line);
    }
    long idx = static_cast<long>(parse_int(part.substr(xpos + 1), line));
    if (out.index >= 0 && out.index != idx) throw AlgebraError("two variables in one term: " + line);
    out.index = idx;
    out.slope += k;
  }
  return out;
}

}  // namespace

std::pair<Symbol, Interp> parse_interp(const std::string& line, InterpKind kind,
                                       const std::function<Symbol(const std::string&, std::size_t)>& resolve) {
  auto eq = line.find(" = ");
  if (eq == std::string::npos) throw AlgebraError("expected ' = ' in: " + line);
  std::string lhs = strip(line.substr(0, eq));
  std::string rhs = strip(line.substr(eq + 3));

  std::string name = lhs;
  std::size_t arity = 0;
  if (!lhs.empty() && lhs.back() == ')') {
    auto open = lhs.find('(');
    if (open == std::string::npos) throw AlgebraError("malformed left-hand side: " + line);
    name = lhs.substr(0, open);
    auto params = split(lhs.substr(open + 1, lhs.size() - open - 2), ',');
    for (std::size_t i = 0; i < params.size(); ++i)
      if (params[i] != "x" + std::to_string(i)) throw AlgebraError("unexpected parameter list in: " + line);
    arity = params.size();
  }
  Symbol f = resolve(name, arity);

  if (kind == InterpKind::linear) {
    LinearInterp li{0, std::vector<std::int64_t>(arity, 0)};
    for (const auto& part : split(rhs, '+')) {
      Affine t = parse_affine(part, line);
      li.constant += t.constant;
      if (t.index >= 0) {
        if (static_cast<std::size_t>(t.index) >= arity) throw AlgebraError("variable out of range: " + line);
        li.coeffs[t.index] += t.slope;
      }
    }
    return {f, li};
  }

  if (rhs.rfind("max{", 0) != 0 || rhs.back() != '}') throw AlgebraError("expected max{...}: " + line);
  auto entries = split(rhs.substr(4, rhs.size() - 5), ',');
  if (entries.size() != arity + 1) throw AlgebraError("expected " + std::to_string(arity + 1) + " entries: " + line);
  MaxPlusInterp mp{parse_int(entries[0], line), {}, {}};
  for (std::size_t i = 0; i < arity; ++i) {
    Affine t = parse_affine(entries[i + 1], line);
    if (t.index >= 0 && static_cast<std::size_t>(t.index) != i)
      throw AlgebraError("entry " + std::to_string(i + 1) + " must mention x" + std::to_string(i) + ": " + line);
    mp.offsets.push_back(t.constant);
    mp.slopes.push_back(t.slope);
  }
  return {f, mp};
}

}  // namespace gwpo
