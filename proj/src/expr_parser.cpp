#include "prres/expr_parser.hpp"

#include <cctype>
#include <map>
#include <vector>

namespace prres::ncalg {

namespace {

using Letters = std::vector<Generator>;
using Sum = std::map<Letters, GaussRational>;

class Parser {
 public:
  Parser(const std::string& text, std::size_t max_letters) : s_(text), max_letters_(max_letters) {}

  Sum run() {
    Sum e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static void add(Sum& into, const Letters& w, const GaussRational& c) {
    auto [it, inserted] = into.try_emplace(w, c);
    if (!inserted) it->second += c;
    if (it->second.is_zero()) into.erase(it);
  }

  Sum multiply(const Sum& a, const Sum& b) {
    Sum out;
    std::size_t letters = 0;
    for (const auto& [wa, ca] : a) {
      for (const auto& [wb, cb] : b) {
        Letters w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        letters += w.size();
        if (letters > max_letters_) throw FuelExhausted("expression expansion exceeds the letter budget");
        add(out, w, ca * cb);
      }
    }
    return out;
  }

  Sum expr() {
    Sum out;
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    while (true) {
      for (const auto& [w, c] : term()) add(out, w, negate ? -c : c);
      if (accept('+')) negate = false;
      else if (accept('-')) negate = true;
      else break;
    }
    return out;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'X' || c == 'R' || c == 'i' ||
           c == 'e' || c == 'm' || c == 'c';
  }

  Sum term() {
    Sum out = factor();
    while (true) {
      if (accept('*')) {
        out = multiply(out, factor());
      } else if (starts_factor()) {
        out = multiply(out, factor());
      } else {
        break;
      }
    }
    return out;
  }

  Sum factor() {
    Sum base = primary();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer exponent");
    if (pos_ - start > 6) fail("exponent too large");
    const unsigned long e = std::stoul(s_.substr(start, pos_ - start));
    Sum out{{Letters{}, GaussRational(1)}};
    for (unsigned long k = 0; k < e; ++k) out = multiply(out, base);
    return out;
  }

  bool accept_word(const std::string& w) {
    skip_ws();
    if (s_.compare(pos_, w.size(), w) != 0) return false;
    pos_ += w.size();
    return true;
  }

  Sum primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (accept('(')) {
      Sum e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return {{Letters{}, GaussRational(number())}};
    if (accept_word("comm")) {
      expect('(');
      Sum a = expr();
      expect(',');
      Sum b = expr();
      expect(')');
      Sum out = multiply(a, b);
      for (const auto& [w, cf] : multiply(b, a)) add(out, w, -cf);
      return out;
    }
    for (const char* name : {"eta+", "eta-", "mu+", "mu-"}) {
      if (accept_word(name)) return {{Letters{*parse_generator(name)}, GaussRational(1)}};
    }
    if (c == 'X' || c == 'R') {
      ++pos_;
      return {{Letters{c == 'X' ? Generator::X : Generator::R}, GaussRational(1)}};
    }
    if (c == 'i') {
      ++pos_;
      return {{Letters{}, GaussRational::i()}};
    }
    if (c == 'e' || c == 'm') fail("expected eta+, eta-, mu+ or mu-");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Rational number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    std::string text = s_.substr(start, pos_ - start);
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      skip_ws();
      const std::size_t ds = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (ds == pos_) fail("expected a denominator");
      text += "/" + s_.substr(ds, pos_ - ds);
    }
    try {
      return parse_rational(text);
    } catch (const std::exception& e) {
      pos_ = start;
      fail("bad number '" + text + "'");
    }
  }

  const std::string& s_;
  std::size_t max_letters_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_expression(const std::string& text, std::size_t max_letters) {
  Word out;
  for (auto& [letters, c] : Parser(text, max_letters).run()) out.push_back({c, letters});
  return out;
}

}  // namespace prres::ncalg
