#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "seqsavage/errors.hpp"
#include "seqsavage/logic.hpp"

namespace seqsavage::detail {

enum class Tok {
  Ident,
  KwTrue,
  KwFalse,
  KwNoop,
  KwDo,
  KwIf,
  KwThen,
  KwElse,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Semi,
  LParen,
  RParen,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view text);

// Recursive-descent formula parser over a shared token stream. `pos` is the
// cursor into `toks` and is advanced past the parsed formula; parsing stops
// at any token that cannot extend a formula (e.g. `then`, `;`, `)`).
class FormulaParser {
 public:
  FormulaParser(const std::vector<Token>& toks, std::size_t& pos,
                const PropSet& props)
      : toks_(toks), pos_(pos), props_(props) {}

  Formula parse() { return parse_iff(); }

 private:
  const Token& peek() const { return toks_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().pos);
  }

  Formula parse_iff();
  Formula parse_implies();
  Formula parse_or();
  Formula parse_and();
  Formula parse_unary();
  Formula parse_primary();

  const std::vector<Token>& toks_;
  std::size_t& pos_;
  const PropSet& props_;
};

}  // namespace seqsavage::detail
