#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "invwalk/cli.hpp"
#include "invwalk/common.hpp"

namespace invwalk::cli {

namespace {

// expr   := term (('+' | '-') term)*
// term   := unary (('*' | '/') unary)*
// unary  := '-' unary | power
// power  := atom ('^' unary)?
// atom   := number | 'm' | 'pi' | 'log' '(' expr ')' | '(' expr ')'
class Parser {
 public:
  Parser(const std::string& text, int m) : text_(text), m_(m) {}

  long double parse() {
    const long double v = expr();
    skip();
    if (pos_ != text_.size()) {
      fail("unexpected '" + text_.substr(pos_, 1) + "'");
    }
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad n expression '" + text_ + "': " + why);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_word(const std::string& word) {
    skip();
    if (text_.compare(pos_, word.size(), word) != 0) {
      return false;
    }
    const std::size_t end = pos_ + word.size();
    if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) {
      return false;
    }
    pos_ = end;
    return true;
  }

  long double expr() {
    long double v = term();
    for (;;) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  long double term() {
    long double v = unary();
    for (;;) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        const long double d = unary();
        if (d == 0) {
          fail("division by zero");
        }
        v /= d;
      } else {
        return v;
      }
    }
  }

  long double unary() {
    if (accept('-')) {
      return -unary();
    }
    return power();
  }

  long double power() {
    const long double base = atom();
    if (accept('^')) {
      return std::pow(base, unary());
    }
    return base;
  }

  long double atom() {
    skip();
    if (accept('(')) {
      const long double v = expr();
      if (!accept(')')) {
        fail("missing ')'");
      }
      return v;
    }
    if (accept_word("log")) {
      if (!accept('(')) {
        fail("log needs '('");
      }
      const long double v = expr();
      if (!accept(')')) {
        fail("missing ')'");
      }
      if (!(v > 0)) {
        fail("log of a non-positive value");
      }
      return std::log(v);
    }
    if (accept_word("pi")) {
      return boost::math::constants::pi<long double>();
    }
    if (accept_word("m")) {
      return m_;
    }
    if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' || text_[pos_] == 'e' ||
              text_[pos_] == 'E' ||
              ((text_[pos_] == '+' || text_[pos_] == '-') && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
        ++pos_;
      }
      const mpq_class q = parse_rational(text_.substr(start, pos_ - start));
      return static_cast<long double>(q.get_d());
    }
    fail(pos_ < text_.size() ? "unexpected '" + text_.substr(pos_, 1) + "'" : "unexpected end");
  }

  const std::string& text_;
  int m_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t evaluate_n_expression(const std::string& expr, int m) {
  const long double v = Parser(expr, m).parse();
  if (!std::isfinite(static_cast<double>(v)) || v < 0 || v > 1.8e19L) {
    throw std::invalid_argument("n expression '" + expr + "' is not a valid step count");
  }
  return static_cast<std::uint64_t>(std::llroundl(v));
}

std::vector<int> parse_m_list(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) {
      throw std::invalid_argument("bad m list '" + text + "'");
    }
    return v;
  };
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == ':') {
        parts.push_back(text.substr(start, i - start));
        start = i + 1;
      }
    }
    if (parts.size() < 2 || parts.size() > 3) {
      throw std::invalid_argument("bad m range '" + text + "' (lo:hi[:step])");
    }
    const int lo = to_int(parts[0]);
    const int hi = to_int(parts[1]);
    const int step = parts.size() == 3 ? to_int(parts[2]) : 1;
    if (step < 1 || hi < lo) {
      throw std::invalid_argument("bad m range '" + text + "'");
    }
    for (int v = lo; v <= hi; v += step) {
      out.push_back(v);
    }
  } else {
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == ',') {
        out.push_back(to_int(text.substr(start, i - start)));
        start = i + 1;
      }
    }
  }
  for (int v : out) {
    if (v < 1) {
      throw std::invalid_argument("m values must be >= 1");
    }
  }
  return out;
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) {
    return field;
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace invwalk::cli
