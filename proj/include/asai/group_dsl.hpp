#pragma once

// Text format for group laws.
//
//   group   := "group" NAME "dim" INT "char" INT mulstmt+
//   mulstmt := "mul" "[" INT "]" "=" poly
//   poly    := term (("+" | "-") term)*
//   term    := INT? factor ("*" factor)*
//   factor  := ("x" | "y") INT ("^" INT)?
//
// Whitespace (including newlines) separates tokens; '#' starts a comment.
// A '*' directly after a term's coefficient is accepted.

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "asai/errors.hpp"
#include "asai/group_law.hpp"

namespace asai {

namespace detail {

struct Token {
  enum class Kind { kIdent, kInt, kSymbol, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&] {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance();
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      tok.kind = Token::Kind::kIdent;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        tok.text.push_back(text[i]);
        advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      tok.kind = Token::Kind::kInt;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        tok.text.push_back(text[i]);
        advance();
      }
    } else if (std::string_view("[]=+-*^").find(ch) != std::string_view::npos) {
      tok.kind = Token::Kind::kSymbol;
      tok.text.assign(1, ch);
      advance();
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
    }
    out.push_back(std::move(tok));
  }
  out.push_back(Token{Token::Kind::kEnd, "", line, col});
  return out;
}

class DslParser {
 public:
  explicit DslParser(std::string_view text) : tokens_(tokenize(text)) {}

  GroupLaw parse() {
    expect_keyword("group");
    const auto name_tok = expect(Token::Kind::kIdent, "group name");
    expect_keyword("dim");
    const auto dim_tok = peek();
    dim_ = parse_int("dimension");
    if (dim_ == 0) throw ParseError("dimension must be positive", dim_tok.line, dim_tok.column);
    if (dim_ > 64) throw ParseError("dimension too large", dim_tok.line, dim_tok.column);
    expect_keyword("char");
    const auto p = parse_int("characteristic");
    if (!fp::is_prime(p)) throw ValidationError("characteristic must be prime, got " + std::to_string(p));
    p_ = static_cast<Residue>(p);

    std::vector<Polynomial> mul(dim_);
    std::vector<bool> seen(dim_, false);
    if (!is_keyword(peek(), "mul")) fail("expected 'mul'");
    while (is_keyword(peek(), "mul")) {
      next();
      expect_symbol("[");
      const auto idx_tok = peek();
      const auto idx = parse_int("coordinate index");
      if (idx < 1 || idx > dim_) {
        throw ParseError("coordinate index " + std::to_string(idx) + " out of range 1.." + std::to_string(dim_),
                         idx_tok.line, idx_tok.column);
      }
      if (seen[idx - 1]) {
        throw ParseError("duplicate mul[" + std::to_string(idx) + "]", idx_tok.line, idx_tok.column);
      }
      seen[idx - 1] = true;
      expect_symbol("]");
      expect_symbol("=");
      mul[idx - 1] = parse_poly();
    }
    if (peek().kind != Token::Kind::kEnd) fail("expected 'mul' or end of input");
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!seen[i]) fail("missing mul[" + std::to_string(i + 1) + "]");
    }
    return make_law(name_tok.text, p_, dim_, std::move(mul));
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& message) const {
    const auto& t = peek();
    const std::string found = t.kind == Token::Kind::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(message + ", found " + found, t.line, t.column);
  }

  static bool is_keyword(const Token& t, std::string_view kw) { return t.kind == Token::Kind::kIdent && t.text == kw; }
  bool is_symbol(std::string_view s) const { return peek().kind == Token::Kind::kSymbol && peek().text == s; }

  void expect_keyword(std::string_view kw) {
    if (!is_keyword(peek(), kw)) fail("expected '" + std::string(kw) + "'");
    next();
  }
  void expect_symbol(std::string_view s) {
    if (!is_symbol(s)) fail("expected '" + std::string(s) + "'");
    next();
  }
  Token expect(Token::Kind kind, const std::string& what) {
    if (peek().kind != kind) fail("expected " + what);
    return next();
  }

  std::uint64_t parse_int(const std::string& what) {
    const auto tok = expect(Token::Kind::kInt, what);
    if (tok.text.size() > 9) throw ParseError(what + " too large", tok.line, tok.column);
    return std::stoull(tok.text);
  }

  Polynomial parse_poly() {
    Polynomial out(p_, 2 * dim_);
    out = out + parse_term();
    while (is_symbol("+") || is_symbol("-")) {
      const bool minus = next().text == "-";
      auto term = parse_term();
      out = minus ? out - term : out + term;
    }
    return out;
  }

  Polynomial parse_term() {
    std::uint64_t coef = 1;
    if (peek().kind == Token::Kind::kInt) {
      coef = parse_int("coefficient");
      if (is_symbol("*")) next();
    }
    Exponents e(2 * dim_, 0);
    parse_factor(e);
    while (is_symbol("*")) {
      next();
      parse_factor(e);
    }
    return Polynomial::from_terms(p_, 2 * dim_, {Term{static_cast<Residue>(coef % p_), e}});
  }

  void parse_factor(Exponents& e) {
    const auto& tok = peek();
    if (tok.kind != Token::Kind::kIdent || tok.text.size() < 2 || (tok.text[0] != 'x' && tok.text[0] != 'y')) {
      fail("expected a variable x<i> or y<i>");
    }
    const auto digits = tok.text.substr(1);
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected a variable x<i> or y<i>");
    }
    if (digits.size() > 9) fail("variable index too large");
    const auto index = std::stoull(digits);
    if (index < 1 || index > dim_) {
      throw ParseError("variable " + tok.text + " out of range 1.." + std::to_string(dim_), tok.line, tok.column);
    }
    const std::size_t v = (tok.text[0] == 'x' ? 0 : dim_) + (index - 1);
    next();
    std::uint64_t power = 1;
    if (is_symbol("^")) {
      next();
      power = parse_int("exponent");
    }
    e[v] += static_cast<std::uint32_t>(power);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t dim_ = 0;
  Residue p_ = 2;
};

}  // namespace detail

/// Parses and validates a group law. Throws ParseError (with line/column) for
/// malformed text and ValidationError for non-prime characteristic, identity
/// violations, or non-triangular coordinates.
inline GroupLaw parse_group_dsl(std::string_view text) { return detail::DslParser(text).parse(); }

inline std::string variable_name(std::size_t v, std::size_t dim) {
  return (v < dim ? "x" : "y") + std::to_string((v < dim ? v : v - dim) + 1);
}

inline std::string format_polynomial(const Polynomial& poly, std::size_t dim) {
  std::string out;
  for (const auto& t : poly.terms()) {
    if (!out.empty()) out += " + ";
    std::vector<std::string> parts;
    if (t.coef != 1 || t.total_degree() == 0) parts.push_back(std::to_string(t.coef));
    for (std::size_t v = 0; v < t.exps.size(); ++v) {
      if (t.exps[v] == 0) continue;
      auto f = variable_name(v, dim);
      if (t.exps[v] > 1) f += "^" + std::to_string(t.exps[v]);
      parts.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
  }
  return out.empty() ? "0" : out;
}

/// Canonical text form; parse_group_dsl(print_group_dsl(law)) reproduces the law.
inline std::string print_group_dsl(const GroupLaw& law) {
  std::ostringstream os;
  os << "group " << law.name << " dim " << law.dim << " char " << law.p << "\n";
  for (std::size_t i = 0; i < law.dim; ++i) {
    os << "mul[" << (i + 1) << "] = " << format_polynomial(law.mul[i], law.dim) << "\n";
  }
  return os.str();
}

}  // namespace asai
