#include "gwpo/certificate.hpp"

#include <sstream>

namespace gwpo {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool starts_with_word(const std::string& line, const std::string& word) {
  return line.rfind(word, 0) == 0 && (line.size() == word.size() || line[word.size()] == ' ');
}

}  // namespace

std::string print_certificate(const Certificate& c) {
  std::ostringstream out;
  out << "order " << to_string(c.order) << "\n";
  out << "interpretation " << to_string(c.algebra.kind()) << "\n";
  out << "precedence " << c.precedence.to_string() << "\n";
  out << print_algebra(c.algebra);
  return out.str();
}

Certificate parse_certificate(const std::string& text, const Trs& trs) {
  Certificate cert;
  std::optional<OrderKind> order;
  std::optional<InterpKind> kind;
  bool have_precedence = false;
  bool first_content = true;

  auto resolve = [&](const std::string& printed, std::size_t arity) {
    bool marked = !printed.empty() && printed.back() == '#';
    std::string name = marked ? printed.substr(0, printed.size() - 1) : printed;
    const Symbol* f = trs.find_symbol(name);
    if (f == nullptr) {
      // A symbol whose own name ends in '#'.
      f = trs.find_symbol(printed);
      marked = false;
    }
    if (f == nullptr) throw CertificateError("unknown symbol '" + printed + "'");
    if (f->arity != arity)
      throw CertificateError("symbol '" + printed + "' has arity " + std::to_string(f->arity) + ", not " +
                             std::to_string(arity));
    return f->with_mark(marked);
  };

  std::istringstream in(text);
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == ';') continue;
    const bool was_first = first_content;
    first_content = false;
    if (was_first && (line == "YES" || line == "NO" || line == "MAYBE" || line == "TIMEOUT")) continue;

    try {
      if (starts_with_word(line, "order")) {
        order = parse_order_kind(trim(line.substr(5)));
        if (!order) throw CertificateError("unknown order '" + trim(line.substr(5)) + "'");
      } else if (starts_with_word(line, "interpretation")) {
        kind = parse_interp_kind(trim(line.substr(14)));
        if (!kind) throw CertificateError("unknown interpretation class '" + trim(line.substr(14)) + "'");
        cert.algebra = Algebra(*kind);
      } else if (starts_with_word(line, "precedence")) {
        std::istringstream items(line.substr(10));
        for (std::string item; items >> item;) {
          auto colon = item.rfind(':');
          if (colon == std::string::npos || colon == 0) throw CertificateError("expected name:level, got '" + item + "'");
          std::int64_t level = 0;
          try {
            level = std::stoll(item.substr(colon + 1));
          } catch (const std::exception&) {
            throw CertificateError("bad level in '" + item + "'");
          }
          cert.precedence.level[item.substr(0, colon)] = level;
        }
        have_precedence = true;
      } else {
        if (!kind) throw CertificateError("interpretation line before 'interpretation' header");
        auto [f, interp] = parse_interp(line, *kind, resolve);
        if (cert.algebra.has(f)) throw CertificateError("duplicate interpretation for " + f.display());
        std::visit([&](const auto& i) { cert.algebra.set(f, i); }, interp);
      }
    } catch (const CertificateError& e) {
      throw CertificateError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const AlgebraError& e) {
      throw CertificateError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!order) throw CertificateError("missing 'order' line");
  if (!kind) throw CertificateError("missing 'interpretation' line");
  if (!have_precedence) throw CertificateError("missing 'precedence' line");
  cert.order = *order;
  return cert;
}

namespace {

std::string class_violation(const Trs& trs, const Certificate& c) {
  const Algebra& a = c.algebra;
  for (const auto& f : trs.signature)
    if (!a.has(f)) return "no interpretation for " + f.display();
  if (c.order == OrderKind::gwpo) {
    for (const auto& f : trs.signature)
      if (!a.has(f.with_mark(true))) return "no interpretation for " + f.with_mark(true).display();
    return "";
  }
  if (!is_simple(a)) return "algebra is not simple";
  if (!marked_shared(a)) return "marked interpretations differ from unmarked ones";
  if (c.order == OrderKind::kbo) {
    if (a.kind() != InterpKind::linear) return "kbo needs a linear algebra";
    for (const auto& f : trs.signature) {
      const auto& li = std::get<LinearInterp>(a.at(f));
      for (auto k : li.coeffs)
        if (k != 1) return "kbo weight function of " + f.display() + " has a coefficient other than 1";
      if (f.arity == 0 && li.constant < 1) return "kbo weight of constant " + f.display() + " is 0";
      if (f.arity == 1 && li.constant == 0) {
        for (const auto& g : trs.signature)
          if (g.name != f.name && !c.precedence.gt(f, g))
            return "unary " + f.display() + " has weight 0 but is not above " + g.display();
      }
    }
  }
  if (c.order == OrderKind::lpo) {
    if (a.kind() != InterpKind::maxplus) return "lpo needs a max/plus algebra";
    for (const auto& f : trs.signature) {
      const auto& mp = std::get<MaxPlusInterp>(a.at(f));
      if (mp.floor != 0) return "lpo interpretation of " + f.display() + " is not a projection maximum";
      for (std::size_t i = 0; i < mp.offsets.size(); ++i)
        if (mp.offsets[i] != 0 || mp.slopes[i] != 1)
          return "lpo interpretation of " + f.display() + " is not a projection maximum";
    }
  }
  return "";
}

}  // namespace

VerifyResult verify_certificate(const Trs& trs, const Certificate& c) {
  VerifyResult res;
  for (std::size_t i = 0; i < trs.rules.size(); ++i) {
    if (!trs.rules[i].well_formed()) {
      res.diagnostic = "rule " + std::to_string(i + 1) + " is not well formed: " + trs.rules[i].to_string();
      return res;
    }
  }
  if (std::string why = class_violation(trs, c); !why.empty()) {
    res.diagnostic = why;
    return res;
  }
  try {
    auto check = [&](auto& order) {
      for (std::size_t i = 0; i < trs.rules.size(); ++i) {
        const Rule& r = trs.rules[i];
        auto d = order.derive(r.lhs, r.rhs);
        if (!d) {
          res.diagnostic = "rule " + std::to_string(i + 1) + " is not oriented: " + r.to_string();
          res.derivations.clear();
          return;
        }
        res.derivations.push_back(std::move(*d));
      }
      res.ok = true;
    };
    if (c.order == OrderKind::gwpo) {
      GwpoOrder order(c.algebra, c.precedence);
      check(order);
    } else {
      WpoOrder order(c.algebra, c.precedence);
      check(order);
    }
  } catch (const AlgebraError& e) {
    res.ok = false;
    res.derivations.clear();
    res.diagnostic = e.what();
  }
  return res;
}

}  // namespace gwpo
