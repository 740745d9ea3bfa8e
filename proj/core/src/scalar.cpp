#include "hwalg/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hwalg/errors.hpp"

namespace hwalg {

namespace registry {
namespace {

struct State {
  std::shared_mutex mutex;
  std::set<std::string, std::less<>> names{"hbar", "c",      "v",    "m",    "aNR",  "aUR",
                                           "q",    "Q",      "lambda", "phi1", "phi2", "phi3"};
};

State& state() {
  static State s;
  return s;
}

bool is_identifier(std::string_view name) {
  if (name.empty() || name == "i") return false;
  if (!std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

}  // namespace

bool contains(std::string_view name) {
  auto& s = state();
  std::shared_lock lock(s.mutex);
  return s.names.find(name) != s.names.end();
}

void add(std::string_view name) {
  if (!is_identifier(name)) {
    throw std::invalid_argument("invalid parameter symbol name '" + std::string(name) + "'");
  }
  auto& s = state();
  std::unique_lock lock(s.mutex);
  s.names.emplace(name);
}

std::vector<std::string> names() {
  auto& s = state();
  std::shared_lock lock(s.mutex);
  return {s.names.begin(), s.names.end()};
}

}  // namespace registry

namespace {

Exponents multiply_exponents(const Exponents& a, const Exponents& b) {
  Exponents out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.push_back(*ib++);
    } else {
      int e = ia->second + ib->second;
      if (e != 0) out.emplace_back(ia->first, e);
      ++ia;
      ++ib;
    }
  }
  return out;
}

std::string gaussian_part_text(const Rational& r, bool imaginary, bool has_factors) {
  std::string s;
  if (!imaginary) {
    if (has_factors && r.is_one()) return "";
    if (has_factors && r == Rational(-1)) return "-";
    return r.to_string() + (has_factors ? "*" : "");
  }
  if (r.is_one()) return has_factors ? "i*" : "i";
  if (r == Rational(-1)) return has_factors ? "-i*" : "-i";
  return r.to_string() + "i" + (has_factors ? "*" : "");
}

std::string factors_text(const Exponents& e) {
  std::string s;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k) s += '*';
    s += e[k].first;
    if (e[k].second != 1) s += "^" + std::to_string(e[k].second);
  }
  return s;
}

int parse_exponent(std::string_view s, std::string_view whole) {
  int v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad exponent in scalar '" + std::string(whole) + "'");
  }
  return v;
}

bool is_number_start(char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; }

ScalarValue parse_factor(std::string_view f, std::string_view whole) {
  if (f.empty()) throw ParseError("empty factor in scalar '" + std::string(whole) + "'");
  if (f == "i") return ScalarValue::imag();
  if (is_number_start(f.front())) {
    bool imaginary = f.back() == 'i';
    if (imaginary) f.remove_suffix(1);
    Rational r;
    try {
      r = Rational::parse(f);
    } catch (const std::invalid_argument&) {
      throw ParseError("bad number in scalar '" + std::string(whole) + "'");
    }
    return imaginary ? ScalarValue(Gaussian(0, r)) : ScalarValue(r);
  }
  auto caret = f.find('^');
  std::string_view name = f.substr(0, caret);
  int e = caret == std::string_view::npos ? 1 : parse_exponent(f.substr(caret + 1), whole);
  if (!registry::contains(name)) {
    throw ParseError("unknown parameter symbol '" + std::string(name) + "'");
  }
  return ScalarValue::symbol(name, e);
}

}  // namespace

ScalarValue::ScalarValue(Gaussian g) {
  if (!g.is_zero()) terms_.emplace(Exponents{}, g);
}

ScalarValue::ScalarValue(Rational r) : ScalarValue(Gaussian(r)) {}
ScalarValue::ScalarValue(std::int64_t n) : ScalarValue(Gaussian(Rational(n))) {}

ScalarValue ScalarValue::symbol(std::string_view name, int exponent) {
  if (!registry::contains(name)) {
    throw std::invalid_argument("unknown parameter symbol '" + std::string(name) + "'");
  }
  if (exponent == 0) return ScalarValue(1);
  return monomial(Gaussian(1), Exponents{{std::string(name), exponent}});
}

ScalarValue ScalarValue::monomial(Gaussian coeff, Exponents exps) {
  std::sort(exps.begin(), exps.end());
  Exponents merged;
  for (auto& [name, e] : exps) {
    if (!merged.empty() && merged.back().first == name) {
      merged.back().second += e;
      if (merged.back().second == 0) merged.pop_back();
    } else if (e != 0) {
      merged.emplace_back(std::move(name), e);
    }
  }
  ScalarValue s;
  s.add_term(merged, coeff);
  return s;
}

bool ScalarValue::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second.is_one();
}

std::optional<Gaussian> ScalarValue::constant() const {
  if (terms_.empty()) return Gaussian{};
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

bool ScalarValue::depends_on(std::string_view name) const {
  for (const auto& [e, g] : terms_) {
    for (const auto& [n, k] : e) {
      if (n == name) return true;
    }
  }
  return false;
}

std::vector<std::string> ScalarValue::symbols() const {
  std::set<std::string> out;
  for (const auto& [e, g] : terms_) {
    for (const auto& [n, k] : e) out.insert(n);
  }
  return {out.begin(), out.end()};
}

void ScalarValue::add_term(const Exponents& e, const Gaussian& g) {
  if (g.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, g);
    return;
  }
  it->second += g;
  if (it->second.is_zero()) terms_.erase(it);
}

ScalarValue ScalarValue::operator-() const {
  ScalarValue out = *this;
  for (auto& [e, g] : out.terms_) g = -g;
  return out;
}

ScalarValue& ScalarValue::operator+=(const ScalarValue& o) {
  for (const auto& [e, g] : o.terms_) add_term(e, g);
  return *this;
}

ScalarValue& ScalarValue::operator-=(const ScalarValue& o) {
  for (const auto& [e, g] : o.terms_) add_term(e, -g);
  return *this;
}

ScalarValue operator*(const ScalarValue& a, const ScalarValue& b) {
  ScalarValue out;
  for (const auto& [ea, ga] : a.terms_) {
    for (const auto& [eb, gb] : b.terms_) {
      out.add_term(multiply_exponents(ea, eb), ga * gb);
    }
  }
  return out;
}

ScalarValue& ScalarValue::operator*=(const ScalarValue& o) { return *this = *this * o; }

ScalarValue ScalarValue::inverse() const {
  if (!is_unit()) {
    throw std::domain_error("scalar '" + to_string() + "' is not invertible in the parameter ring");
  }
  const auto& [e, g] = *terms_.begin();
  Exponents inv = e;
  for (auto& p : inv) p.second = -p.second;
  ScalarValue out;
  out.terms_.emplace(std::move(inv), g.inverse());
  return out;
}

ScalarValue ScalarValue::pow(int e) const {
  ScalarValue base = e < 0 ? inverse() : *this;
  ScalarValue out(1);
  for (int k = 0; k < (e < 0 ? -e : e); ++k) out *= base;
  return out;
}

ScalarValue ScalarValue::substitute(
    const std::map<std::string, ScalarValue, std::less<>>& bindings) const {
  if (bindings.empty()) return *this;
  ScalarValue out;
  for (const auto& [e, g] : terms_) {
    ScalarValue term(g);
    Exponents kept;
    for (const auto& [name, k] : e) {
      auto it = bindings.find(name);
      if (it == bindings.end()) {
        kept.emplace_back(name, k);
      } else {
        term *= it->second.pow(k);
      }
    }
    out += term * monomial(Gaussian(1), kept);
  }
  return out;
}

std::complex<double> ScalarValue::evaluate(const Bindings& bindings) const {
  std::complex<double> sum = 0.0;
  for (const auto& [e, g] : terms_) {
    std::complex<double> t = g.to_complex();
    for (const auto& [name, k] : e) {
      auto it = bindings.find(name);
      if (it == bindings.end()) throw UnboundSymbol(name);
      t *= std::pow(it->second, k);
    }
    sum += t;
  }
  return sum;
}

std::string ScalarValue::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  auto emit = [&](const std::string& piece) {
    if (!out.empty()) out += " + ";
    out += piece;
  };
  for (const auto& [e, g] : terms_) {
    std::string f = factors_text(e);
    if (!g.re.is_zero()) emit(gaussian_part_text(g.re, false, !e.empty()) + f);
    if (!g.im.is_zero()) emit(gaussian_part_text(g.im, true, !e.empty()) + f);
  }
  return out;
}

std::string ScalarValue::to_latex() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  auto rational_latex = [](const Rational& r) {
    Rational a = r < Rational(0) ? -r : r;
    if (a.is_integer()) return a.to_string();
    return "\\frac{" + std::to_string(a.num()) + "}{" + std::to_string(a.den()) + "}";
  };
  for (const auto& [e, g] : terms_) {
    std::string f;
    for (const auto& [name, k] : e) {
      if (!f.empty()) f += " ";
      f += symbol_latex(name);
      if (k != 1) f += "^{" + std::to_string(k) + "}";
    }
    for (int part = 0; part < 2; ++part) {
      const Rational& r = part == 0 ? g.re : g.im;
      if (r.is_zero()) continue;
      bool negative = r < Rational(0);
      if (!first) out += negative ? " - " : " + ";
      else if (negative) out += "-";
      first = false;
      Rational a = negative ? -r : r;
      std::string coeff = (a.is_one() && !(f.empty() && part == 0)) ? "" : rational_latex(a);
      if (part == 1) coeff += coeff.empty() ? "i" : " i";
      out += coeff;
      if (!f.empty()) out += (coeff.empty() ? "" : " ") + f;
    }
  }
  return out;
}

ScalarValue ScalarValue::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw ParseError("empty scalar");
  if (s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);

  // Split on binary + / - (a sign right after '^', '*', '/' or at the start is unary).
  std::vector<std::pair<bool, std::string>> pieces;
  std::string cur;
  bool negative = false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    char ch = s[k];
    bool unary_context = cur.empty() || cur.back() == '^' || cur.back() == '*' || cur.back() == '/';
    if ((ch == '+' || ch == '-') && !unary_context) {
      pieces.emplace_back(negative, cur);
      cur.clear();
      negative = ch == '-';
      continue;
    }
    if ((ch == '+' || ch == '-') && cur.empty()) {
      if (ch == '-') negative = !negative;
      continue;
    }
    cur += ch;
  }
  pieces.emplace_back(negative, cur);

  ScalarValue out;
  for (const auto& [neg, term] : pieces) {
    if (term.empty()) throw ParseError("dangling sign in scalar '" + std::string(text) + "'");
    ScalarValue t(1);
    std::size_t start = 0;
    while (start <= term.size()) {
      auto star = term.find('*', start);
      std::string_view f(term.data() + start,
                         (star == std::string::npos ? term.size() : star) - start);
      t *= parse_factor(f, text);
      if (star == std::string::npos) break;
      start = star + 1;
    }
    out += neg ? -t : t;
  }
  return out;
}

nlohmann::json to_json(const ScalarValue& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [e, g] : s.terms()) {
    nlohmann::json exps = nlohmann::json::object();
    for (const auto& [name, k] : e) exps[name] = k;
    arr.push_back({{"coeff", {g.re.num(), g.re.den(), g.im.num(), g.im.den()}}, {"exps", exps}});
  }
  return arr;
}

ScalarValue scalar_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("scalar JSON must be an array");
  ScalarValue out;
  for (const auto& t : j) {
    const auto& c = t.at("coeff");
    if (!c.is_array() || c.size() != 4) throw ParseError("scalar coeff must have four integers");
    Gaussian g(Rational(c[0].get<std::int64_t>(), c[1].get<std::int64_t>()),
               Rational(c[2].get<std::int64_t>(), c[3].get<std::int64_t>()));
    Exponents e;
    for (const auto& [name, k] : t.at("exps").items()) {
      if (!registry::contains(name)) throw ParseError("unknown parameter symbol '" + name + "'");
      e.emplace_back(name, k.get<int>());
    }
    out += ScalarValue::monomial(g, e);
  }
  return out;
}

std::string symbol_latex(std::string_view name) {
  if (name == "hbar") return "\\hbar";
  if (name == "aNR") return "a_{NR}";
  if (name == "aUR") return "a^{*}_{UR}";
  if (name == "lambda") return "\\lambda";
  if (name.size() == 4 && name.substr(0, 3) == "phi") return "\\phi_{" + std::string(1, name[3]) + "}";
  return std::string(name);
}

namespace sym {
ScalarValue hbar(int e) { return ScalarValue::symbol("hbar", e); }
ScalarValue c(int e) { return ScalarValue::symbol("c", e); }
ScalarValue v(int e) { return ScalarValue::symbol("v", e); }
ScalarValue m(int e) { return ScalarValue::symbol("m", e); }
ScalarValue a_nr(int e) { return ScalarValue::symbol("aNR", e); }
ScalarValue a_ur(int e) { return ScalarValue::symbol("aUR", e); }
ScalarValue q(int e) { return ScalarValue::symbol("q", e); }
ScalarValue Q(int e) { return ScalarValue::symbol("Q", e); }
ScalarValue phi(int axis, int e) {
  if (axis < 1 || axis > 3) throw std::out_of_range("potential component index must be 1..3");
  return ScalarValue::symbol("phi" + std::to_string(axis), e);
}
ScalarValue i() { return ScalarValue::imag(); }
}  // namespace sym

}  // namespace hwalg
