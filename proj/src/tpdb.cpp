#include "gwpo/tpdb.hpp"

#include <cctype>
#include <map>
#include <optional>

namespace gwpo {

namespace {

enum class Tok { lparen, rparen, comma, arrow, ident, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool is_ident_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return !std::isspace(u) && c != '(' && c != ')' && c != ',' && c != '"' && u >= 0x21;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (c == '(') {
      advance();
      t.kind = Tok::lparen;
    } else if (c == ')') {
      advance();
      t.kind = Tok::rparen;
    } else if (c == ',') {
      advance();
      t.kind = Tok::comma;
    } else if (starts_arrow()) {
      advance();
      advance();
      t.kind = Tok::arrow;
    } else if (is_ident_char(c)) {
      t.kind = Tok::ident;
      while (pos_ < text_.size() && is_ident_char(text_[pos_]) && !starts_arrow()) {
        t.text += text_[pos_];
        advance();
      }
    } else {
      throw ParseError(ParseError::Kind::syntax, line_, col_,
                       std::string("unexpected character '") + c + "'");
    }
    return t;
  }

  /// Skips the body of a section up to and including its closing paren.
  void skip_balanced() {
    int depth = 1;
    const std::size_t line = line_, col = col_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      advance();
      if (c == '(') ++depth;
      if (c == ')' && --depth == 0) return;
    }
    throw ParseError(ParseError::Kind::syntax, line, col, "unterminated section");
  }

 private:
  bool starts_arrow() const {
    return pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>';
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

// Terms are read before the VAR set is final, so they are kept raw first.
struct RawTerm {
  std::string name;
  std::vector<RawTerm> args;
  bool parens = false;
  std::size_t line = 0;
  std::size_t column = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { tok_ = lex_.next(); }

  Trs run() {
    std::vector<std::pair<RawTerm, RawTerm>> raw_rules;
    while (tok_.kind != Tok::end) {
      expect(Tok::lparen, "'('");
      if (tok_.kind != Tok::ident) fail(tok_, "expected section name");
      Token section = tok_;
      if (section.text == "COMMENT") {
        lex_.skip_balanced();
        tok_ = lex_.next();
        continue;
      }
      if (section.text == "VAR") {
        bump();
        while (tok_.kind == Tok::ident) {
          vars_.insert(tok_.text);
          bump();
        }
        expect(Tok::rparen, "')' closing VAR");
      } else if (section.text == "RULES") {
        bump();
        while (tok_.kind != Tok::rparen) {
          RawTerm l = term();
          expect(Tok::arrow, "'->'");
          RawTerm r = term();
          raw_rules.emplace_back(std::move(l), std::move(r));
        }
        bump();
      } else {
        throw ParseError(ParseError::Kind::unsupported_section, section.line, section.column,
                         "unsupported section (" + section.text + " ...)");
      }
    }

    Trs trs;
    trs.declared_vars = vars_;
    for (auto& [l, r] : raw_rules) {
      Term lhs = convert(l, trs);
      Term rhs = convert(r, trs);
      trs.rules.push_back(Rule{std::move(lhs), std::move(rhs)});
    }
    return trs;
  }

 private:
  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw ParseError(ParseError::Kind::syntax, t.line, t.column, msg);
  }
  void bump() { tok_ = lex_.next(); }
  void expect(Tok k, const char* what) {
    if (tok_.kind != k) fail(tok_, std::string("expected ") + what);
    bump();
  }

  RawTerm term() {
    if (tok_.kind != Tok::ident) fail(tok_, "expected term");
    RawTerm t;
    t.name = tok_.text;
    t.line = tok_.line;
    t.column = tok_.column;
    bump();
    if (tok_.kind == Tok::lparen) {
      t.parens = true;
      bump();
      if (tok_.kind != Tok::rparen) {
        t.args.push_back(term());
        while (tok_.kind == Tok::comma) {
          bump();
          t.args.push_back(term());
        }
      }
      expect(Tok::rparen, "')' or ','");
    }
    return t;
  }

  Term convert(const RawTerm& raw, Trs& trs) {
    if (vars_.count(raw.name)) {
      if (raw.parens)
        throw ParseError(ParseError::Kind::syntax, raw.line, raw.column,
                         "variable " + raw.name + " applied to arguments");
      return Term::var(raw.name);
    }
    auto it = arity_.find(raw.name);
    if (it == arity_.end()) {
      arity_.emplace(raw.name, raw.args.size());
      trs.signature.emplace_back(raw.name, raw.args.size());
    } else if (it->second != raw.args.size()) {
      throw ParseError(ParseError::Kind::arity_mismatch, raw.line, raw.column,
                       "symbol " + raw.name + " used with arity " + std::to_string(raw.args.size()) +
                           " but earlier with arity " + std::to_string(it->second));
    }
    std::vector<Term> args;
    args.reserve(raw.args.size());
    for (const auto& a : raw.args) args.push_back(convert(a, trs));
    return Term::app(Symbol(raw.name, raw.args.size()), std::move(args));
  }

  Lexer lex_;
  Token tok_;
  std::set<std::string> vars_;
  std::map<std::string, std::size_t> arity_;
};

}  // namespace

Trs parse_trs(std::string_view text) { return Parser(text).run(); }

std::string print_trs(const Trs& trs) {
  std::string out = "(VAR";
  for (const auto& x : trs.declared_vars) out += " " + x;
  out += ")\n(RULES\n";
  for (const auto& r : trs.rules) out += "  " + r.to_string() + "\n";
  out += ")\n";
  return out;
}

}  // namespace gwpo
