#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "intensio/error.hpp"

namespace intensio::dodl {

enum class Tok {
  Ident,
  Integer,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Semicolon,
  Colon,
  Equals,
  Wildcard,  // _
  Arrow,     // ->
  Invalid,
  End,
};

[[nodiscard]] constexpr std::string_view describe(Tok t) noexcept {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Integer: return "integer";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semicolon: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Equals: return "'='";
    case Tok::Wildcard: return "'_'";
    case Tok::Arrow: return "'->'";
    case Tok::Invalid: return "invalid character";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  Span span;
};

/// Splits DODL text into tokens. `#` starts a comment running to end of
/// line. The last token is always Tok::End.
[[nodiscard]] inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::uint32_t line = 1;
  std::uint32_t col = 1;

  auto is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };

  auto emit = [&](Tok kind, std::size_t len) {
    out.push_back(Token{kind, src.substr(i, len), Span{i, len, line, col}});
    i += len;
    col += static_cast<std::uint32_t>(len);
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') {
        ++i;
        ++col;
      }
      continue;
    }
    if (is_alpha(c)) {
      std::size_t n = 1;
      while (i + n < src.size() && (is_alpha(src[i + n]) || is_digit(src[i + n]))) ++n;
      emit(n == 1 && c == '_' ? Tok::Wildcard : Tok::Ident, n);
      continue;
    }
    if (is_digit(c) || (c == '-' && i + 1 < src.size() && is_digit(src[i + 1]))) {
      std::size_t n = 1;
      while (i + n < src.size() && is_digit(src[i + n])) ++n;
      emit(Tok::Integer, n);
      continue;
    }
    switch (c) {
      case '{': emit(Tok::LBrace, 1); break;
      case '}': emit(Tok::RBrace, 1); break;
      case '(': emit(Tok::LParen, 1); break;
      case ')': emit(Tok::RParen, 1); break;
      case '[': emit(Tok::LBracket, 1); break;
      case ']': emit(Tok::RBracket, 1); break;
      case ',': emit(Tok::Comma, 1); break;
      case ';': emit(Tok::Semicolon, 1); break;
      case ':': emit(Tok::Colon, 1); break;
      case '=': emit(Tok::Equals, 1); break;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') {
          emit(Tok::Arrow, 2);
          break;
        }
        [[fallthrough]];
      default: {
        // One UTF-8 sequence becomes one invalid token.
        std::size_t n = 1;
        auto u = static_cast<unsigned char>(c);
        if (u >= 0xC0) n = u >= 0xF0 ? 4 : u >= 0xE0 ? 3 : 2;
        emit(Tok::Invalid, std::min(n, src.size() - i));
      }
    }
  }
  out.push_back(Token{Tok::End, {}, Span{src.size(), 0, line, col}});
  return out;
}

}  // namespace intensio::dodl
