#pragma once

// Text form of terms.
//
//   expr    := primary ('+' primary)*
//   primary := NUMBER | 'w' ['^' operand] | 'phi' '(' NUMBER ',' expr ')'
//            | 'g' '(' NUMBER ')' | '(' expr ')'
//   operand := NUMBER | 'w' ['^' operand] | 'phi(...)' | 'g(...)' | '(' expr ')'
//
// NUMBER n is the n-fold sum 1+...+1 (so "0" is zero), "w" is ω = φ_0(1) and
// "w^e" is φ_0(e). The renderer emits the minimal form: runs of 1 as a
// numeral, "w" for φ_0(1), "w^(e)" for other φ_0 atoms, "phi(k,e)" for k > 0.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ordinal/error.hpp"
#include "ordinal/term.hpp"

namespace ordinal {

namespace detail {

inline bool is_one(const Atom& a) { return a.is_phi() && a.level() == 0 && a.arg().is_zero(); }

inline void render_into(std::string& out, const Term& t);

inline void render_atom(std::string& out, const Atom& a) {
  if (a.is_gen()) {
    out += "g(" + std::to_string(a.index()) + ")";
  } else if (a.level() == 0) {
    const Term& e = a.arg();
    if (e.is_zero()) {
      out += "1";
    } else if (e.is_atom() && is_one(e.head())) {
      out += "w";
    } else {
      out += "w^(";
      render_into(out, e);
      out += ")";
    }
  } else {
    out += "phi(" + std::to_string(a.level()) + ",";
    render_into(out, a.arg());
    out += ")";
  }
}

inline void render_into(std::string& out, const Term& t) {
  if (t.is_zero()) {
    out += "0";
    return;
  }
  auto atoms = t.atoms();
  for (std::size_t i = 0; i < atoms.size();) {
    if (i > 0) out += "+";
    if (is_one(atoms[i])) {
      std::size_t run = 0;
      while (i < atoms.size() && is_one(atoms[i])) ++run, ++i;
      out += std::to_string(run);
    } else {
      render_atom(out, atoms[i]);
      ++i;
    }
  }
}

class Parser {
 public:
  Parser(std::string_view text, const StructureDescriptor& sd) : text_(text), sd_(sd) {}

  Term parse() {
    Term raw = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return normalize(raw, sd_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::syntax, msg + " at position " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  std::size_t number() {
    skip_space();
    std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t digit = static_cast<std::size_t>(text_[pos_] - '0');
      if (__builtin_mul_overflow(value, 10, &value) || __builtin_add_overflow(value, digit, &value)) {
        fail("number too large");
      }
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return value;
  }

  // Raw sums only: normalization happens once, at the end.
  Term expr() {
    std::vector<Atom> atoms;
    do {
      Term piece = primary();
      atoms.insert(atoms.end(), piece.atoms().begin(), piece.atoms().end());
    } while (accept("+"));
    return Term::raw(std::move(atoms));
  }

  Term primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = number();
      if (n > kMaxNumeral) fail("numeral too large");
      return numeral(n, sd_);
    }
    if (accept("(")) {
      Term inner = expr();
      expect(")");
      return inner;
    }
    if (accept("phi")) {
      expect("(");
      std::size_t level = number();
      expect(",");
      Term arg = expr();
      expect(")");
      return Term(Atom::phi(level, std::move(arg)));
    }
    if (accept("g")) {
      expect("(");
      std::size_t index = number();
      expect(")");
      return Term(Atom::gen(index));
    }
    if (accept("w")) {
      if (accept("^")) return Term(Atom::phi(0, primary()));
      return Term(Atom::phi(0, Term(Atom::phi(0, Term()))));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  static constexpr std::size_t kMaxNumeral = 1u << 20;

  std::string_view text_;
  std::size_t pos_ = 0;
  const StructureDescriptor& sd_;
};

}  // namespace detail

inline std::string render(const Term& t) {
  std::string out;
  detail::render_into(out, t);
  return out;
}

/// Parses and normalizes an expression for the structure `sd`.
inline Term parse_expr(std::string_view text, const StructureDescriptor& sd) {
  return detail::Parser(text, sd).parse();
}

}  // namespace ordinal
