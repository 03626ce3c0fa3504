#include "asymrep/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <sstream>
#include <utility>

#include "asymrep/error.hpp"

namespace asymrep {

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

Word Word::letter(std::size_t generator, int sign) {
  return Word({Letter{generator, sign < 0 ? -1 : 1}});
}

std::optional<std::size_t> GroupPresentation::find_generator(std::string_view name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == name) return i;
  return std::nullopt;
}

namespace {

enum class Tok { lt, gt, bar, comma, lbracket, rbracket, caret, ident, integer, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t{Tok::end, {}, line_, col_};
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    auto single = [&](Tok k) {
      t.kind = k;
      t.text = std::string(1, c);
      advance();
      return t;
    };
    switch (c) {
      case '<': return single(Tok::lt);
      case '>': return single(Tok::gt);
      case '|': return single(Tok::bar);
      case ',': return single(Tok::comma);
      case '[': return single(Tok::lbracket);
      case ']': return single(Tok::rbracket);
      case '^': return single(Tok::caret);
      default: break;
    }
    if (c >= 'a' && c <= 'z') {
      t.kind = Tok::ident;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        bool ok = (d >= 'a' && d <= 'z') || (d >= '0' && d <= '9') || d == '_';
        if (!ok) break;
        t.text.push_back(d);
        advance();
      }
      return t;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::integer;
      t.text.push_back(c);
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        t.text.push_back(src_[pos_]);
        advance();
      }
      if (t.text == "-") throw ParseError("expected digits after '-'", t.line, t.column);
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

const char* describe(Tok k) {
  switch (k) {
    case Tok::lt: return "'<'";
    case Tok::gt: return "'>'";
    case Tok::bar: return "'|'";
    case Tok::comma: return "','";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::caret: return "'^'";
    case Tok::ident: return "identifier";
    case Tok::integer: return "integer";
    case Tok::end: return "end of input";
  }
  return "token";
}

constexpr long kMaxExponent = 1'000'000;

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { cur_ = lex_.next(); }

  GroupPresentation presentation() {
    GroupPresentation p;
    expect(Tok::lt);
    do {
      Token id = expect(Tok::ident);
      if (std::find(p.generators.begin(), p.generators.end(), id.text) != p.generators.end())
        throw ParseError("duplicate generator '" + id.text + "'", id.line, id.column);
      p.generators.push_back(id.text);
    } while (accept(Tok::comma));
    expect(Tok::bar);
    if (cur_.kind != Tok::gt) {
      do {
        p.relators.push_back(word(p));
      } while (accept(Tok::comma));
    }
    expect(Tok::gt);
    expect(Tok::end);
    return p;
  }

  Word bare_word(const GroupPresentation& p) {
    if (cur_.kind == Tok::end) return Word{};
    Word w = word(p);
    expect(Tok::end);
    return w;
  }

 private:
  std::vector<Letter> term(const GroupPresentation& p) {
    if (cur_.kind == Tok::ident) {
      Token id = cur_;
      advance();
      auto g = p.find_generator(id.text);
      if (!g) throw ParseError("undeclared generator '" + id.text + "'", id.line, id.column);
      long exponent = 1;
      if (accept(Tok::caret)) {
        Token num = expect(Tok::integer);
        exponent = std::strtol(num.text.c_str(), nullptr, 10);
        if (std::labs(exponent) > kMaxExponent)
          throw ParseError("exponent out of range", num.line, num.column);
      }
      std::vector<Letter> out(static_cast<std::size_t>(std::labs(exponent)),
                              Letter{*g, exponent < 0 ? -1 : 1});
      return out;
    }
    if (accept(Tok::lbracket)) {
      Word x = word(p);
      expect(Tok::comma);
      Word y = word(p);
      expect(Tok::rbracket);
      std::vector<Letter> out = x.letters();
      out.insert(out.end(), y.letters().begin(), y.letters().end());
      Word xi = word_inverse_raw(x), yi = word_inverse_raw(y);
      out.insert(out.end(), xi.letters().begin(), xi.letters().end());
      out.insert(out.end(), yi.letters().begin(), yi.letters().end());
      return out;
    }
    throw ParseError(std::string("expected identifier or '[', found ") + describe(cur_.kind),
                     cur_.line, cur_.column);
  }

  Word word(const GroupPresentation& p) {
    std::vector<Letter> letters = term(p);
    while (cur_.kind == Tok::ident || cur_.kind == Tok::lbracket) {
      auto more = term(p);
      letters.insert(letters.end(), more.begin(), more.end());
    }
    return Word(std::move(letters));
  }

  // Commutator expansion keeps the letters literally; no reduction.
  static Word word_inverse_raw(const Word& w) {
    std::vector<Letter> out(w.letters().rbegin(), w.letters().rend());
    for (auto& l : out) l.sign = -l.sign;
    return Word(std::move(out));
  }

  void advance() { cur_ = lex_.next(); }
  bool accept(Tok k) {
    if (cur_.kind != k) return false;
    advance();
    return true;
  }
  Token expect(Tok k) {
    if (cur_.kind != k)
      throw ParseError(std::string("expected ") + describe(k) + ", found " + describe(cur_.kind),
                       cur_.line, cur_.column);
    Token t = cur_;
    advance();
    return t;
  }

  Lexer lex_;
  Token cur_;
};

// Relator of the form g h g^-1 h^-1 with g != h; returns the unordered pair.
std::optional<std::pair<std::size_t, std::size_t>> as_commutator(const Word& w) {
  const auto& l = w.letters();
  if (l.size() != 4) return std::nullopt;
  if (l[0].sign != 1 || l[1].sign != 1 || l[2].sign != -1 || l[3].sign != -1) return std::nullopt;
  if (l[0].generator != l[2].generator || l[1].generator != l[3].generator) return std::nullopt;
  if (l[0].generator == l[1].generator) return std::nullopt;
  return std::minmax(l[0].generator, l[1].generator);
}

}  // namespace

bool relators_are_full_commutators(const GroupPresentation& p) {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& r : p.relators) {
    auto c = as_commutator(r);
    if (!c) return false;
    pairs.insert(*c);
  }
  std::size_t n = p.rank();
  return pairs.size() == n * (n - 1) / 2;
}

GroupPresentation parse_presentation(std::string_view text) {
  GroupPresentation p = Parser(text).presentation();
  p.normal_form = (p.rank() >= 2 && relators_are_full_commutators(p)) ? NormalForm::abelian
                                                                      : NormalForm::free;
  return p;
}

GroupPresentation parse_presentation(std::string_view text, NormalForm normal_form) {
  GroupPresentation p = Parser(text).presentation();
  if (normal_form == NormalForm::abelian && !relators_are_full_commutators(p))
    throw DomainError("abelian normal form requires the relators to be the generator-pair commutators");
  p.normal_form = normal_form;
  return p;
}

Word parse_word(std::string_view text, const GroupPresentation& p) {
  return Parser(text).bare_word(p);
}

std::string format_word(const Word& w, const GroupPresentation& p) {
  std::ostringstream os;
  const auto& l = w.letters();
  bool first = true;
  for (std::size_t i = 0; i < l.size();) {
    std::size_t j = i;
    while (j < l.size() && l[j] == l[i]) ++j;
    long exponent = static_cast<long>(j - i) * l[i].sign;
    if (!first) os << ' ';
    first = false;
    os << p.generators.at(l[i].generator);
    if (exponent != 1) os << '^' << exponent;
    i = j;
  }
  return os.str();
}

std::string format_presentation(const GroupPresentation& p) {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < p.generators.size(); ++i) os << (i ? "," : "") << p.generators[i];
  os << '|';
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    if (i) os << ", ";
    // An empty relator has no terms in the grammar; spell it as g^0.
    os << (p.relators[i].empty() ? p.generators.front() + "^0" : format_word(p.relators[i], p));
  }
  os << '>';
  return os.str();
}

Word reduce_word(const Word& w, NormalForm normal_form) {
  if (normal_form == NormalForm::abelian) {
    std::map<std::size_t, long> exponents;
    for (const auto& l : w.letters()) exponents[l.generator] += l.sign;
    std::vector<Letter> out;
    for (auto [g, e] : exponents)
      out.insert(out.end(), static_cast<std::size_t>(std::labs(e)), Letter{g, e < 0 ? -1 : 1});
    return Word(std::move(out));
  }
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (const auto& l : w.letters()) {
    if (!stack.empty() && stack.back().generator == l.generator && stack.back().sign == -l.sign)
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word(std::move(stack));
}

Word word_inverse(const Word& w) {
  std::vector<Letter> out(w.letters().rbegin(), w.letters().rend());
  for (auto& l : out) l.sign = -l.sign;
  return reduce_word(Word(std::move(out)), NormalForm::free);
}

namespace {
void check_over(const Word& w, const GroupPresentation& p) {
  for (const auto& l : w.letters())
    if (l.generator >= p.rank())
      throw DomainError("mismatched presentations: word uses generator index " +
                        std::to_string(l.generator) + " but the presentation has rank " +
                        std::to_string(p.rank()));
}
}  // namespace

Word word_multiply(const Word& u, const Word& v, const GroupPresentation& p) {
  check_over(u, p);
  check_over(v, p);
  std::vector<Letter> letters = u.letters();
  letters.insert(letters.end(), v.letters().begin(), v.letters().end());
  return reduce_word(Word(std::move(letters)), p.normal_form);
}

bool FiniteSubset::contains(const Word& w) const { return index_.count(w) != 0; }

std::optional<std::size_t> FiniteSubset::index_of(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FiniteSubset FiniteSubset::from_words(const GroupPresentation& p, std::vector<Word> words) {
  FiniteSubset s;
  s.normal_form_ = p.normal_form;
  s.rank_ = p.rank();
  for (auto& w : words) {
    check_over(w, p);
    Word nf = reduce_word(w, p.normal_form);
    if (s.index_.count(nf)) throw DomainError("duplicate normal form in finite subset");
    s.index_.emplace(nf, s.words_.size());
    s.words_.push_back(std::move(nf));
  }
  if (!s.contains(Word{})) throw DomainError("finite subset must contain the identity");
  for (const auto& w : s.words_)
    if (!s.contains(reduce_word(word_inverse(w), p.normal_form)))
      throw DomainError("finite subset is not closed under inversion");
  return s;
}

FiniteSubset ball(const GroupPresentation& p, int r) {
  if (r < 0) throw DomainError("ball radius must be nonnegative");
  FiniteSubset s;
  s.normal_form_ = p.normal_form;
  s.rank_ = p.rank();
  s.radius_ = r;
  s.index_.emplace(Word{}, 0);
  s.words_.push_back(Word{});
  std::size_t layer_begin = 0;
  for (int step = 0; step < r; ++step) {
    std::size_t layer_end = s.words_.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (std::size_t g = 0; g < p.rank(); ++g) {
        for (int sign : {1, -1}) {
          Word next = word_multiply(s.words_[i], Word::letter(g, sign), p);
          if (s.index_.count(next)) continue;
          s.index_.emplace(next, s.words_.size());
          s.words_.push_back(std::move(next));
        }
      }
    }
    layer_begin = layer_end;
  }
  return s;
}

}  // namespace asymrep
