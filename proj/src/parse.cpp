#include <cctype>
#include <charconv>
#include <set>

#include "profcheck/errors.hpp"
#include "profcheck/presentation.hpp"

namespace profcheck {

namespace {

enum class Tok { ident, integer, define, lt, gt, bar, comma, equals, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      std::size_t const l = line_;
      std::size_t const c = col_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::end, "", l, c});
        return out;
      }
      char const ch = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_')) {
          advance();
        }
        out.push_back({Tok::ident, std::string(text_.substr(start, pos_ - start)), l, c});
      } else if (std::isdigit(static_cast<unsigned char>(ch)) ||
                 (ch == '-' && pos_ + 1 < text_.size() &&
                  std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        std::size_t start = pos_;
        advance();
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          advance();
        }
        out.push_back({Tok::integer, std::string(text_.substr(start, pos_ - start)), l, c});
      } else if (ch == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
        advance();
        advance();
        out.push_back({Tok::define, ":=", l, c});
      } else {
        Tok kind;
        switch (ch) {
          case '<': kind = Tok::lt; break;
          case '>': kind = Tok::gt; break;
          case '|': kind = Tok::bar; break;
          case ',': kind = Tok::comma; break;
          case '=': kind = Tok::equals; break;
          case '^': kind = Tok::caret; break;
          case '(': kind = Tok::lparen; break;
          case ')': kind = Tok::rparen; break;
          default:
            throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
        }
        advance();
        out.push_back({kind, std::string(1, ch), l, c});
      }
    }
  }

 private:
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
    while (pos_ < text_.size()) {
      char const ch = text_[pos_];
      if (ch == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') {
          advance();
        }
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

char const* describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::integer: return "integer";
    case Tok::define: return "':='";
    case Tok::lt: return "'<'";
    case Tok::gt: return "'>'";
    case Tok::bar: return "'|'";
    case Tok::comma: return "','";
    case Tok::equals: return "'='";
    case Tok::caret: return "'^'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::end: return "end of input";
  }
  return "token";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

  std::vector<NamedPresentation> file() {
    std::vector<NamedPresentation> out;
    std::set<std::string> names;
    while (peek().kind != Tok::end) {
      Token const name = expect(Tok::ident);
      expect(Tok::define);
      if (!names.insert(name.text).second) {
        throw ParseError("group '" + name.text + "' defined twice", name.line, name.column);
      }
      out.push_back({name.text, group()});
    }
    return out;
  }

  Presentation single() {
    if (peek().kind == Tok::ident) {
      next();
      expect(Tok::define);
    }
    Presentation p = group();
    expect(Tok::end);
    return p;
  }

  Word bare_word(Presentation const& p) {
    names_ = p.generators();
    if (peek().kind == Tok::end) {
      return {};
    }
    Word w = word();
    expect(Tok::end);
    return w;
  }

 private:
  Presentation group() {
    expect(Tok::lt);
    names_.clear();
    while (peek().kind == Tok::ident) {
      Token const t = next();
      for (auto const& existing : names_) {
        if (existing == t.text) {
          throw ParseError("duplicate generator name '" + t.text + "'", t.line, t.column);
        }
      }
      names_.push_back(t.text);
    }
    expect(Tok::bar);
    std::vector<Word> relators;
    if (peek().kind != Tok::gt) {
      while (true) {
        Token const start = peek();
        Word lhs = word();
        if (peek().kind == Tok::equals) {
          next();
          Word rhs = word();
          Word const rinv = inverse(rhs);
          lhs.insert(lhs.end(), rinv.begin(), rinv.end());
        }
        if (cyclically_reduce(lhs).empty()) {
          throw ParseError("relator normalizes to the empty word", start.line, start.column);
        }
        relators.push_back(std::move(lhs));
        if (peek().kind != Tok::comma) {
          break;
        }
        next();
      }
    }
    expect(Tok::gt);
    return Presentation(names_, std::move(relators));
  }

  Word word() {
    Word w;
    if (!starts_term()) {
      Token const& t = peek();
      throw ParseError(std::string("expected a word, found ") + describe(t.kind), t.line, t.column);
    }
    while (starts_term()) {
      Word t = term();
      w.insert(w.end(), t.begin(), t.end());
    }
    return w;
  }

  bool starts_term() const {
    return peek().kind == Tok::ident || peek().kind == Tok::lparen;
  }

  Word term() {
    Word base;
    if (peek().kind == Tok::lparen) {
      next();
      base = word();
      expect(Tok::rparen);
    } else {
      Token const t = next();
      std::uint32_t index = 0;
      bool found = false;
      for (; index < names_.size(); ++index) {
        if (names_[index] == t.text) {
          found = true;
          break;
        }
      }
      if (!found) {
        throw ParseError("unknown generator '" + t.text + "'", t.line, t.column);
      }
      base = Word{gen(index)};
    }
    if (peek().kind == Tok::caret) {
      next();
      Token const e = expect(Tok::integer);
      long exponent = 0;
      auto const* first = e.text.data();
      auto const* last = first + e.text.size();
      auto const res = std::from_chars(first, last, exponent);
      if (res.ec != std::errc{} || res.ptr != last || exponent > 1'000'000 ||
          exponent < -1'000'000) {
        throw ParseError("exponent out of range", e.line, e.column);
      }
      return power(base, exponent);
    }
    return base;
  }

  Token const& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  Token expect(Tok kind) {
    Token const& t = peek();
    if (t.kind != kind) {
      throw ParseError(std::string("expected ") + describe(kind) + ", found " +
                           describe(t.kind),
                       t.line, t.column);
    }
    return next();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
};

}  // namespace

Presentation parse_presentation(std::string_view text) {
  return Parser(text).single();
}

std::vector<NamedPresentation> parse_presentation_file(std::string_view text) {
  return Parser(text).file();
}

Word parse_word(std::string_view text, Presentation const& p) {
  return Parser(text).bare_word(p);
}

}  // namespace profcheck
