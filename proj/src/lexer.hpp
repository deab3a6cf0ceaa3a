#pragma once

// Shared tokenizer for the QBF and modal surface syntax.

#include <cctype>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>

#include "wgrz/error.hpp"

namespace wgrz {

enum class TokenKind {
  End,
  Var,       // p<digits>
  False,
  True,      // modal only
  Arrow,     // ->
  Bar,       // |
  Amp,       // &
  Tilde,     // ~
  LParen,
  RParen,
  Dot,       // qbf only
  Forall,    // A (qbf only)
  Exists,    // E (qbf only)
  Box,       // []
  Dia,       // <>
  BoxPlus,   // box+
  BoxLe,     // box<=N
  BoxPow,    // box^N
  DiaPow,    // dia^N
};

struct Token {
  TokenKind kind = TokenKind::End;
  int value = 0;
  std::size_t offset = 0;
  std::string_view text;
};

inline std::string describe(const Token& tok) {
  if (tok.kind == TokenKind::End) return "end of input";
  return "token '" + std::string(tok.text) + "'";
}

class Lexer {
 public:
  enum class Dialect { Qbf, Modal };

  Lexer(std::string_view text, Dialect dialect) : text_(text), dialect_(dialect) { advance(); }

  const Token& peek() const noexcept { return current_; }

  Token next() {
    Token tok = current_;
    advance();
    return tok;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    current_ = Token{TokenKind::End, 0, start, {}};
    if (pos_ >= text_.size()) return;

    const char c = text_[pos_];
    auto single = [&](TokenKind kind, std::size_t len) {
      pos_ += len;
      current_ = Token{kind, 0, start, text_.substr(start, len)};
    };
    switch (c) {
      case '|': return single(TokenKind::Bar, 1);
      case '&': return single(TokenKind::Amp, 1);
      case '~': return single(TokenKind::Tilde, 1);
      case '(': return single(TokenKind::LParen, 1);
      case ')': return single(TokenKind::RParen, 1);
      case '.':
        if (dialect_ == Dialect::Qbf) return single(TokenKind::Dot, 1);
        break;
      case '-':
        if (starts_with("->")) return single(TokenKind::Arrow, 2);
        break;
      case '[':
        if (dialect_ == Dialect::Modal && starts_with("[]")) return single(TokenKind::Box, 2);
        break;
      case '<':
        if (dialect_ == Dialect::Modal && starts_with("<>")) return single(TokenKind::Dia, 2);
        break;
      default:
        break;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw ParseError("unknown token '" + std::string(1, c) + "'", start);
    }

    std::size_t end = pos_;
    while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
    const std::string_view word = text_.substr(start, end - start);
    pos_ = end;

    if (word.size() > 1 && word[0] == 'p' && all_digits(word.substr(1))) {
      current_ = Token{TokenKind::Var, to_int(word.substr(1), start), start, word};
      if (current_.value < 1) throw ParseError("variable indices start at 1", start);
      return;
    }
    if (word == "false") return set(TokenKind::False, start, word);
    if (dialect_ == Dialect::Qbf) {
      if (word == "A") return set(TokenKind::Forall, start, word);
      if (word == "E") return set(TokenKind::Exists, start, word);
    } else {
      if (word == "true") return set(TokenKind::True, start, word);
      if (word == "box" && pos_ < text_.size()) {
        if (text_[pos_] == '+') {
          ++pos_;
          return set(TokenKind::BoxPlus, start, text_.substr(start, pos_ - start));
        }
        if (starts_with("<=")) return counted(TokenKind::BoxLe, start, 2);
        if (text_[pos_] == '^') return counted(TokenKind::BoxPow, start, 1);
      }
      if (word == "dia" && pos_ < text_.size() && text_[pos_] == '^') {
        return counted(TokenKind::DiaPow, start, 1);
      }
    }
    throw ParseError("unknown token '" + std::string(word) + "'", start);
  }

  void set(TokenKind kind, std::size_t start, std::string_view text) { current_ = Token{kind, 0, start, text}; }

  // Sugar tokens carrying a count, e.g. box<=3.
  void counted(TokenKind kind, std::size_t start, std::size_t marker_len) {
    pos_ += marker_len;
    std::size_t end = pos_;
    while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    if (end == pos_) throw ParseError("expected a count after '" + std::string(text_.substr(start, pos_ - start)) + "'", pos_);
    const int value = to_int(text_.substr(pos_, end - pos_), pos_);
    pos_ = end;
    current_ = Token{kind, value, start, text_.substr(start, end - start)};
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  static bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  }

  static int to_int(std::string_view digits, std::size_t offset) {
    long long value = 0;
    for (char c : digits) {
      value = value * 10 + (c - '0');
      if (value > std::numeric_limits<int>::max()) throw ParseError("number too large", offset);
    }
    return static_cast<int>(value);
  }

  std::string_view text_;
  Dialect dialect_;
  std::size_t pos_ = 0;
  Token current_;
};

}  // namespace wgrz
