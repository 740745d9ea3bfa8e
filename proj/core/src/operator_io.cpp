#include <cctype>
#include <string>

#include <nlohmann/json.hpp>

#include "hwalg/errors.hpp"
#include "hwalg/operator.hpp"

namespace hwalg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Split at depth-0 occurrences of `sep`; for '+'/'-' splitting use split_sum.
std::vector<std::string_view> split_factors(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '(') ++depth;
    if (s[k] == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced parentheses in operator text");
    if (s[k] == '*' && depth == 0) {
      out.push_back(trim(s.substr(start, k - start)));
      start = k + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in operator text");
  out.push_back(trim(s.substr(start)));
  return out;
}

// Top-level terms with their sign. A '+' or '-' is binary when it follows an
// operand character (not '^', '*' or '(').
std::vector<std::pair<bool, std::string_view>> split_sum(std::string_view s) {
  std::vector<std::pair<bool, std::string_view>> out;
  int depth = 0;
  std::size_t start = 0;
  bool negative = false;
  char prev = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    char ch = s[k];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-')) {
      bool unary = prev == 0 || prev == '^' || prev == '*' || prev == '(' || prev == '+' ||
                   prev == '-';
      if (!unary) {
        out.emplace_back(negative, trim(s.substr(start, k - start)));
        negative = ch == '-';
        start = k + 1;
        prev = ch;
        continue;
      }
    }
    if (!std::isspace(static_cast<unsigned char>(ch))) prev = ch;
  }
  out.emplace_back(negative, trim(s.substr(start)));
  return out;
}

int parse_power(std::string_view& factor) {
  auto caret = factor.find('^');
  if (caret == std::string_view::npos) return 1;
  std::string exp(trim(factor.substr(caret + 1)));
  factor = trim(factor.substr(0, caret));
  try {
    std::size_t used = 0;
    int n = std::stoi(exp, &used);
    if (used != exp.size() || n < 0) throw ParseError("bad exponent '" + exp + "'");
    return n;
  } catch (const std::logic_error&) {
    throw ParseError("bad exponent '" + exp + "'");
  }
}

std::optional<Letter> letter_from_name(std::string_view name) {
  if (name.size() != 2 || (name[0] != 'x' && name[0] != 'p') || name[1] < '0' || name[1] > '3') {
    return std::nullopt;
  }
  int mu = name[1] - '0';
  return name[0] == 'x' ? x_letter(mu) : p_letter(mu);
}

Word parse_word(std::string_view text) {
  Word w;
  text = trim(text);
  if (text.empty()) return w;
  for (auto f : split_factors(text)) {
    int n = parse_power(f);
    auto l = letter_from_name(f);
    if (!l) throw ParseError("unknown letter '" + std::string(f) + "'");
    w.exps[static_cast<int>(*l)] += static_cast<std::uint8_t>(n);
  }
  return w;
}

OperatorExpr parse_term(std::string_view text, int dim, const TablePtr& table) {
  if (text.empty()) throw ParseError("empty operator term");
  OperatorExpr acc = OperatorExpr::identity(dim, table);
  for (auto f : split_factors(text)) {
    if (f.empty()) throw ParseError("empty factor in '" + std::string(text) + "'");
    if (f.front() == '(') {
      if (f.back() != ')') throw ParseError("bad parenthesised factor '" + std::string(f) + "'");
      acc *= ScalarValue::parse(f.substr(1, f.size() - 2));
      continue;
    }
    std::string_view base = f;
    int n = parse_power(base);
    OperatorExpr factor(dim, table);
    if (auto l = letter_from_name(base)) {
      factor = OperatorExpr::letter(*l, dim, table);
    } else if (base == "H") {
      factor = OperatorExpr::letter(p_letter(0), dim, table) * sym::c();
    } else if (base == "t") {
      factor = OperatorExpr::letter(x_letter(0), dim, table) * sym::c(-1);
    } else if (int b = basis_index(dim, std::string(base)); b >= 0) {
      factor = OperatorExpr::matrix(basis_matrix(dim, b), table);
    } else {
      acc *= ScalarValue::parse(f);
      continue;
    }
    for (int k = 0; k < n; ++k) acc = acc * factor;
  }
  return acc;
}

std::string letter_latex(Letter l) {
  int k = static_cast<int>(l);
  return std::string(k < 4 ? "\\hat{x}" : "\\hat{p}") + "_{" + std::to_string(k % 4) + "}";
}

std::string power_suffix(int n, bool latex) {
  if (n == 1) return "";
  return latex ? "^{" + std::to_string(n) + "}" : "^" + std::to_string(n);
}

}  // namespace

std::string to_string(const OperatorExpr& e) {
  auto terms = e.canonical_terms();
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += " + ";
    out += "(" + t.coeff.to_string() + ")*" + basis_name(e.dim(), t.basis);
    if (!t.word.is_empty()) out += "*" + t.word.to_string();
  }
  return out;
}

OperatorExpr parse_operator(std::string_view text, int dim, TablePtr table) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty operator text");
  OperatorExpr out(dim, table);
  if (text == "0") return out;
  for (auto [negative, term] : split_sum(text)) {
    OperatorExpr t = parse_term(term, dim, table);
    out += negative ? -t : t;
  }
  return out;
}

std::string to_latex(const OperatorExpr& e) {
  auto terms = e.canonical_terms();
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& t : terms) {
    std::string coeff = t.coeff.to_latex();
    if (t.coeff.is_unit()) {
      if (coeff == "1") coeff.clear();
      if (coeff == "-1") coeff = "-";
    } else {
      coeff = "\\left(" + coeff + "\\right)";
    }
    std::string body = basis_latex(e.dim(), t.basis);
    for (int k = 0; k < kLetterCount; ++k) {
      if (t.word.exps[k] == 0) continue;
      body += letter_latex(static_cast<Letter>(k)) + power_suffix(t.word.exps[k], true);
    }
    if (body.empty() && (coeff.empty() || coeff == "-")) coeff += "1";
    std::string piece = coeff + body;
    if (out.empty()) {
      out = piece;
    } else if (piece.front() == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

std::string to_physics_string(const OperatorExpr& e) {
  auto terms = e.canonical_terms();
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& t : terms) {
    const int nt = t.word[x_letter(0)];
    const int nh = t.word[p_letter(0)];
    // x0^a p0^b = c^(a - b) t^a H^b
    ScalarValue coeff = t.coeff * sym::c(nt - nh);
    std::vector<std::string> factors;
    if (!coeff.is_one()) factors.push_back("(" + coeff.to_string() + ")");
    if (t.basis != 0) factors.push_back(basis_name(e.dim(), t.basis));
    if (nt > 0) factors.push_back("t" + power_suffix(nt, false));
    for (int mu = 1; mu < 4; ++mu) {
      if (int n = t.word[x_letter(mu)]; n > 0) {
        factors.push_back("x" + std::to_string(mu) + power_suffix(n, false));
      }
    }
    if (nh > 0) factors.push_back("H" + power_suffix(nh, false));
    for (int mu = 1; mu < 4; ++mu) {
      if (int n = t.word[p_letter(mu)]; n > 0) {
        factors.push_back("p" + std::to_string(mu) + power_suffix(n, false));
      }
    }
    if (factors.empty()) factors.emplace_back("1");
    std::string piece;
    for (const auto& f : factors) piece += (piece.empty() ? "" : "*") + f;
    out += (out.empty() ? "" : " + ") + piece;
  }
  return out;
}

nlohmann::json to_json(const OperatorExpr& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : e.canonical_terms()) {
    terms.push_back({{"word", t.word.to_string()},
                     {"basis", basis_name(e.dim(), t.basis)},
                     {"coeff", to_json(t.coeff)}});
  }
  return {{"dim", e.dim()}, {"terms", terms}};
}

OperatorExpr operator_from_json(const nlohmann::json& j, TablePtr table) {
  const int dim = j.at("dim").get<int>();
  OperatorExpr out(dim, table);
  for (const auto& t : j.at("terms")) {
    const std::string name = t.at("basis").get<std::string>();
    const int b = basis_index(dim, name);
    if (b < 0) throw ParseError("unknown basis element '" + name + "'");
    out += OperatorExpr::term(basis_matrix(dim, b) * scalar_from_json(t.at("coeff")),
                              parse_word(t.at("word").get<std::string>()), table);
  }
  return out;
}

}  // namespace hwalg
