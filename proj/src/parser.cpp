#include <cctype>

#include "parser_internal.hpp"

namespace seqsavage::detail {

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                       text[j] == '_'))
        ++j;
      std::string word(text.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (word == "true") kind = Tok::KwTrue;
      else if (word == "false") kind = Tok::KwFalse;
      else if (word == "noop") kind = Tok::KwNoop;
      else if (word == "do") kind = Tok::KwDo;
      else if (word == "if") kind = Tok::KwIf;
      else if (word == "then") kind = Tok::KwThen;
      else if (word == "else") kind = Tok::KwElse;
      out.push_back({kind, std::move(word), start});
      i = j;
      continue;
    }
    switch (c) {
      case '~':
        out.push_back({Tok::Not, "~", start});
        ++i;
        break;
      case '&':
        out.push_back({Tok::And, "&", start});
        ++i;
        break;
      case '|':
        out.push_back({Tok::Or, "|", start});
        ++i;
        break;
      case ';':
        out.push_back({Tok::Semi, ";", start});
        ++i;
        break;
      case '(':
        out.push_back({Tok::LParen, "(", start});
        ++i;
        break;
      case ')':
        out.push_back({Tok::RParen, ")", start});
        ++i;
        break;
      case '-':
        if (i + 1 < n && text[i + 1] == '>') {
          out.push_back({Tok::Implies, "->", start});
          i += 2;
        } else {
          throw ParseError("unexpected character '-'", start);
        }
        break;
      case '<':
        if (i + 2 < n && text[i + 1] == '-' && text[i + 2] == '>') {
          out.push_back({Tok::Iff, "<->", start});
          i += 3;
        } else {
          throw ParseError("unexpected character '<'", start);
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         start);
    }
  }
  out.push_back({Tok::End, "", n});
  return out;
}

Formula FormulaParser::parse_iff() {
  Formula lhs = parse_implies();
  if (peek().kind == Tok::Iff) {
    ++pos_;
    return Formula::biconditional(std::move(lhs), parse_iff());
  }
  return lhs;
}

Formula FormulaParser::parse_implies() {
  Formula lhs = parse_or();
  if (peek().kind == Tok::Implies) {
    ++pos_;
    return Formula::implication(std::move(lhs), parse_implies());
  }
  return lhs;
}

Formula FormulaParser::parse_or() {
  Formula acc = parse_and();
  while (peek().kind == Tok::Or) {
    ++pos_;
    acc = Formula::disjunction(std::move(acc), parse_and());
  }
  return acc;
}

Formula FormulaParser::parse_and() {
  Formula acc = parse_unary();
  while (peek().kind == Tok::And) {
    ++pos_;
    acc = Formula::conjunction(std::move(acc), parse_unary());
  }
  return acc;
}

Formula FormulaParser::parse_unary() {
  if (peek().kind == Tok::Not) {
    ++pos_;
    return Formula::negation(parse_unary());
  }
  return parse_primary();
}

Formula FormulaParser::parse_primary() {
  const Token& t = peek();
  switch (t.kind) {
    case Tok::Ident: {
      auto idx = props_.index_of(t.text);
      if (!idx)
        throw ParseError("unknown proposition '" + t.text + "'", t.pos);
      ++pos_;
      return Formula::prop(t.text, *idx);
    }
    case Tok::KwTrue:
      ++pos_;
      return Formula::top();
    case Tok::KwFalse:
      ++pos_;
      return Formula::bottom();
    case Tok::LParen: {
      ++pos_;
      Formula f = parse_iff();
      if (peek().kind != Tok::RParen) fail("expected ')'");
      ++pos_;
      return f;
    }
    default:
      fail("expected a formula");
  }
}

}  // namespace seqsavage::detail

namespace seqsavage {

Formula parse_formula(std::string_view text, const PropSet& props) {
  auto toks = detail::lex(text);
  std::size_t pos = 0;
  detail::FormulaParser parser(toks, pos, props);
  Formula f = parser.parse();
  if (toks[pos].kind != detail::Tok::End)
    throw ParseError("unexpected trailing input '" + toks[pos].text + "'",
                     toks[pos].pos);
  return f;
}

}  // namespace seqsavage
