#include "fsl/term.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <string_view>

#include "fsl/errors.hpp"

namespace fsl {

Term::Term(std::vector<Literal> literals) : literals_(std::move(literals)) {
  if (literals_.empty()) throw ShapeError("a term needs at least one literal");
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
}

Term Term::variable(const GroupSpec& group, std::size_t var) { return Term({Literal{group.identity(), var}}); }

std::size_t Term::max_var() const {
  std::size_t m = 0;
  for (const auto& l : literals_) m = std::max(m, l.var);
  return m;
}

Term Term::translated(const GroupSpec& group, const GroupElement& g) const {
  std::vector<Literal> out;
  out.reserve(literals_.size());
  for (const auto& l : literals_) out.push_back({group.mul(g, l.shift), l.var});
  return Term(std::move(out));
}

Term Term::meet(const Term& other) const {
  std::vector<Literal> out = literals_;
  out.insert(out.end(), other.literals_.begin(), other.literals_.end());
  return Term(std::move(out));
}

namespace {

std::string literal_to_string(const Literal& l, std::span<const std::string> names) {
  std::string inner = l.var < names.size() ? names[l.var] : "v" + std::to_string(l.var);
  // Highest generator index outermost so the text reads g0(...) innermost-first.
  for (std::size_t i = 0; i < l.shift.coords.size(); ++i) {
    const auto c = l.shift.coords[i];
    if (c == 0) continue;
    std::string head = "g" + std::to_string(i);
    if (c != 1) head += "^" + std::to_string(c);
    inner = head + "(" + inner + ")";
  }
  return inner;
}

std::string equation_to_string(const Equation& e, std::span<const std::string> names) {
  return to_string(e.lhs, names) + " = " + to_string(e.rhs, names);
}

class Parser {
 public:
  Parser(std::string_view text, const GroupSpec& group) : text_(text), group_(group) {}

  QuasiIdentity parse() {
    QuasiIdentity qi{{}, {}, Equation{Term::variable(group_, 0), Term::variable(group_, 0)}};
    skip_ws();
    if (peek_arrow()) {
      pos_ += 2;
      qi.conclusion = equation();
    } else {
      auto first = equation();
      skip_ws();
      if (at_end()) {
        qi.conclusion = std::move(first);
      } else {
        qi.premises.push_back(std::move(first));
        while (consume('&')) qi.premises.push_back(equation());
        skip_ws();
        if (!peek_arrow()) fail("expected '->' or '&'");
        pos_ += 2;
        qi.conclusion = equation();
      }
    }
    skip_ws();
    if (!at_end()) fail("unexpected trailing input");
    qi.variables = std::move(vars_);
    return qi;
  }

 private:
  Equation equation() {
    auto lhs = term();
    if (!consume('=')) fail("expected '='");
    auto rhs = term();
    return Equation{std::move(lhs), std::move(rhs)};
  }

  Term term() {
    auto t = factor();
    while (consume('^')) t = t.meet(factor());
    return t;
  }

  Term factor() {
    skip_ws();
    if (at_end()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto t = term();
      if (!consume(')')) fail("expected ')'");
      return t;
    }
    if (c == 'g' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      const auto gen = number();
      if (gen < 0 || static_cast<std::size_t>(gen) >= group_.rank()) {
        fail("generator g" + std::to_string(gen) + " does not exist in " + group_.describe());
      }
      std::int64_t power = 1;
      skip_ws();
      if (!at_end() && text_[pos_] == '^') {
        ++pos_;
        skip_ws();
        bool neg = false;
        if (!at_end() && text_[pos_] == '-') {
          neg = true;
          ++pos_;
        }
        power = number();
        if (neg) power = -power;
      }
      if (!consume('(')) fail("expected '(' after generator");
      auto inner = term();
      if (!consume(')')) fail("expected ')'");
      auto shift = group_.pow(group_.generator(static_cast<std::size_t>(gen)), power);
      return inner.translated(group_, shift);
    }
    if (std::islower(static_cast<unsigned char>(c)) && c != 'g') {
      std::size_t end = pos_ + 1;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      std::string name(text_.substr(pos_, end - pos_));
      pos_ = end;
      return Term::variable(group_, var_index(name));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::size_t var_index(const std::string& name) {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it != vars_.end()) return static_cast<std::size_t>(it - vars_.begin());
    vars_.push_back(name);
    return vars_.size() - 1;
  }

  std::int64_t number() {
    std::int64_t v = 0;
    const auto* begin = text_.data() + pos_;
    const auto* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

  bool consume(char c) {
    skip_ws();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_arrow() {
    skip_ws();
    return text_.substr(pos_, 2) == "->";
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("quasi-identity parse error at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  std::string_view text_;
  const GroupSpec& group_;
  std::size_t pos_ = 0;
  std::vector<std::string> vars_;
};

}  // namespace

std::string to_string(const Term& t, std::span<const std::string> var_names) {
  std::string out;
  for (const auto& l : t.literals()) {
    if (!out.empty()) out += " ^ ";
    out += literal_to_string(l, var_names);
  }
  return out;
}

std::string to_string(const QuasiIdentity& qi) {
  std::ostringstream os;
  for (std::size_t i = 0; i < qi.premises.size(); ++i) {
    if (i) os << " & ";
    os << equation_to_string(qi.premises[i], qi.variables);
  }
  if (!qi.premises.empty()) os << ' ';
  os << "-> " << equation_to_string(qi.conclusion, qi.variables);
  return os.str();
}

QuasiIdentity parse_quasi_identity(std::string_view text, const GroupSpec& group) {
  return Parser(text, group).parse();
}

}  // namespace fsl
