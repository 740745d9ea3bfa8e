#include "hwalg/operator.hpp"

#include <set>
#include <stdexcept>

#include "hwalg/errors.hpp"

namespace hwalg {

namespace {

const ScalarValue& i_hbar() {
  static const ScalarValue v = ScalarValue::imag() * sym::hbar();
  return v;
}

CommutationTable::Array4 zero4() { return {}; }

void check_antisymmetric(const CommutationTable::Array4& a, const char* what) {
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      if (!(a[mu][nu] + a[nu][mu]).is_zero()) {
        throw std::invalid_argument(std::string(what) + " must be antisymmetric");
      }
    }
  }
}

void require_compatible(const OperatorExpr& a, const OperatorExpr& b) {
  if (a.dim() != b.dim()) throw IncompatibleOperands("operator matrix dimension mismatch");
  if (a.table() != b.table() && !(*a.table() == *b.table())) {
    throw IncompatibleOperands("operators use different commutation tables");
  }
}

}  // namespace

std::string letter_name(Letter l) {
  int k = static_cast<int>(l);
  return std::string(1, k < 4 ? 'x' : 'p') + std::to_string(k % 4);
}

Word Word::of(Letter l, int power) {
  Word w;
  w.exps[static_cast<int>(l)] = static_cast<std::uint8_t>(power);
  return w;
}

int Word::degree() const {
  int d = 0;
  for (auto e : exps) d += e;
  return d;
}

std::vector<Letter> Word::letters() const {
  std::vector<Letter> out;
  for (int k = 0; k < kLetterCount; ++k) {
    for (int n = 0; n < exps[k]; ++n) out.push_back(static_cast<Letter>(k));
  }
  return out;
}

std::string Word::to_string() const {
  std::string s;
  for (int k = 0; k < kLetterCount; ++k) {
    if (exps[k] == 0) continue;
    if (!s.empty()) s += '*';
    s += letter_name(static_cast<Letter>(k));
    if (exps[k] > 1) s += "^" + std::to_string(exps[k]);
  }
  return s;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return a.exps <=> b.exps;
}

CommutationTable::CommutationTable(Array4 g, Array4 theta, Array4 sigma)
    : g_(std::move(g)), theta_(std::move(theta)), sigma_(std::move(sigma)) {
  check_antisymmetric(theta_, "theta");
  check_antisymmetric(sigma_, "Sigma");
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      brackets_[mu][nu] = i_hbar() * theta_[mu][nu];
      brackets_[4 + mu][4 + nu] = i_hbar() * sigma_[mu][nu];
      brackets_[mu][4 + nu] = i_hbar() * g_[mu][nu];
      brackets_[4 + nu][mu] = -(i_hbar() * g_[mu][nu]);
    }
  }
}

std::shared_ptr<const CommutationTable> CommutationTable::minkowski() {
  static const auto table = [] {
    Array4 g = zero4();
    for (int mu = 0; mu < 4; ++mu) g[mu][mu] = eta(mu, mu);
    return std::make_shared<const CommutationTable>(g, zero4(), zero4());
  }();
  return table;
}

bool CommutationTable::is_degenerate() const {
  for (const auto& row : brackets_) {
    for (const auto& b : row) {
      if (!b.is_zero()) return false;
    }
  }
  return true;
}

CommutationTable CommutationTable::substitute(
    const std::map<std::string, ScalarValue, std::less<>>& b) const {
  // hbar lives outside g/theta/Sigma, so substitute it by scaling the tables.
  auto hb = b.find("hbar");
  ScalarValue scale = hb == b.end() ? ScalarValue(1) : hb->second * sym::hbar(-1);
  auto sub = [&](const Array4& a) {
    Array4 out;
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) out[mu][nu] = a[mu][nu].substitute(b) * scale;
    }
    return out;
  };
  return {sub(g_), sub(theta_), sub(sigma_)};
}

std::vector<std::pair<Word, ScalarValue>> multiply_words(const CommutationTable& table,
                                                         const Word& u, const Word& w) {
  // Append the letters of w one at a time. For a normal word W = A B, with A
  // the letters <= l and B the letters > l, the brackets are central so
  //   W l = A l B + sum_b e_b [b, l] (W without one b).
  std::map<Word, ScalarValue> cur{{u, ScalarValue(1)}};
  for (int li = 0; li < kLetterCount; ++li) {
    for (int rep = 0; rep < w.exps[li]; ++rep) {
      const auto l = static_cast<Letter>(li);
      std::map<Word, ScalarValue> next;
      for (const auto& [word, s] : cur) {
        Word main = word;
        ++main.exps[li];
        next[main] += s;
        for (int bi = li + 1; bi < kLetterCount; ++bi) {
          if (word.exps[bi] == 0) continue;
          const ScalarValue& c = table.bracket(static_cast<Letter>(bi), l);
          if (c.is_zero()) continue;
          Word reduced = word;
          --reduced.exps[bi];
          next[reduced] += s * c * ScalarValue(static_cast<std::int64_t>(word.exps[bi]));
        }
      }
      cur.clear();
      for (auto& [word, s] : next) {
        if (!s.is_zero()) cur.emplace(word, std::move(s));
      }
    }
  }
  return {cur.begin(), cur.end()};
}

OperatorExpr::OperatorExpr(int dim, TablePtr table) : dim_(dim), table_(std::move(table)) {
  if (dim != 1 && dim != 2 && dim != 4) throw std::invalid_argument("dimension must be 1, 2 or 4");
  if (!table_) throw std::invalid_argument("null commutation table");
}

OperatorExpr OperatorExpr::identity(int dim, TablePtr table) {
  return scalar(ScalarValue(1), dim, std::move(table));
}

OperatorExpr OperatorExpr::scalar(const ScalarValue& s, int dim, TablePtr table) {
  return term(MatrixValue::scalar(dim, s), Word{}, std::move(table));
}

OperatorExpr OperatorExpr::matrix(const MatrixValue& m, TablePtr table) {
  return term(m, Word{}, std::move(table));
}

OperatorExpr OperatorExpr::letter(Letter l, int dim, TablePtr table) {
  return term(MatrixValue::identity(dim), Word::of(l), std::move(table));
}

OperatorExpr OperatorExpr::term(const MatrixValue& m, const Word& w, TablePtr table) {
  OperatorExpr e(m.dim(), std::move(table));
  e.add(w, m);
  return e;
}

OperatorExpr OperatorExpr::H(int dim) { return p(0, dim) * sym::c(); }
OperatorExpr OperatorExpr::t(int dim) { return x(0, dim) * sym::c(-1); }

int OperatorExpr::degree() const {
  int d = 0;
  for (const auto& [w, m] : terms_) d = std::max(d, w.degree());
  return d;
}

std::vector<Term> OperatorExpr::canonical_terms() const {
  std::vector<Term> out;
  for (const auto& [w, m] : terms_) {
    auto coeffs = m.decompose();
    for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) {
      if (!coeffs[k].is_zero()) out.push_back({w, k, std::move(coeffs[k])});
    }
  }
  return out;
}

MatrixValue OperatorExpr::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? MatrixValue(dim_) : it->second;
}

void OperatorExpr::add(const Word& w, const MatrixValue& m) {
  if (m.dim() != dim_) throw IncompatibleOperands("matrix coefficient dimension mismatch");
  if (m.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, m);
    return;
  }
  it->second += m;
  if (it->second.is_zero()) terms_.erase(it);
}

OperatorExpr OperatorExpr::operator-() const {
  OperatorExpr out = *this;
  for (auto& [w, m] : out.terms_) m = -m;
  return out;
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& o) {
  require_compatible(*this, o);
  for (const auto& [w, m] : o.terms_) add(w, m);
  return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& o) {
  require_compatible(*this, o);
  for (const auto& [w, m] : o.terms_) add(w, -m);
  return *this;
}

OperatorExpr& OperatorExpr::operator*=(const ScalarValue& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
  require_compatible(a, b);
  OperatorExpr out(a.dim_, a.table_);
  for (const auto& [u, ma] : a.terms_) {
    for (const auto& [w, mb] : b.terms_) {
      MatrixValue m = ma * mb;
      if (m.is_zero()) continue;
      for (const auto& [word, s] : multiply_words(*a.table_, u, w)) out.add(word, m * s);
    }
  }
  return out;
}

OperatorExpr operator*(const MatrixValue& m, const OperatorExpr& a) {
  return OperatorExpr::matrix(m, a.table()) * a;
}

bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
  if (a.dim_ != b.dim_) return false;
  if (a.table_ != b.table_ && !(*a.table_ == *b.table_)) return false;
  return a.terms_ == b.terms_;
}

OperatorExpr OperatorExpr::substitute(
    const std::map<std::string, ScalarValue, std::less<>>& bindings) const {
  OperatorExpr out(dim_, table_);
  for (const auto& [w, m] : terms_) out.add(w, m.substitute(bindings));
  return out;
}

OperatorExpr OperatorExpr::with_table(TablePtr table) const {
  OperatorExpr out(dim_, std::move(table));
  out.terms_ = terms_;
  return out;
}

OperatorExpr OperatorExpr::lifted(int dim) const {
  if (dim == dim_) return *this;
  if (dim_ != 1) throw IncompatibleOperands("only scalar (d = 1) expressions can be lifted");
  OperatorExpr out(dim, table_);
  for (const auto& [w, m] : terms_) out.add(w, MatrixValue::scalar(dim, m.at(0, 0)));
  return out;
}

std::vector<std::string> OperatorExpr::symbols() const {
  std::set<std::string> out;
  for (const auto& [w, m] : terms_) {
    for (const auto& e : m.entries()) {
      for (auto& s : e.symbols()) out.insert(std::move(s));
    }
  }
  return {out.begin(), out.end()};
}

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) { return a * b - b * a; }

OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b) {
  return a * b + b * a;
}

AdjointSeries adjoint_series(const OperatorExpr& d, const OperatorExpr& x, int max_depth) {
  AdjointSeries out{x, 0, {x}};
  Rational inv_factorial = 1;
  for (int n = 1; n <= max_depth; ++n) {
    OperatorExpr next = commutator(d, out.nested.back());
    if (next.is_zero()) return out;
    inv_factorial /= Rational(n);
    out.value += next * ScalarValue(inv_factorial);
    out.nested.push_back(std::move(next));
    out.order = n;
  }
  throw NonNilpotentError("adjoint series did not terminate within depth " +
                          std::to_string(max_depth));
}

OperatorExpr substitute_letters(const OperatorExpr& expr,
                                const std::map<Letter, OperatorExpr>& replacements) {
  OperatorExpr out(expr.dim(), expr.table());
  for (const auto& [w, m] : expr.terms()) {
    OperatorExpr acc = OperatorExpr::matrix(m, expr.table());
    for (Letter l : w.letters()) {
      auto it = replacements.find(l);
      acc = acc * (it == replacements.end() ? OperatorExpr::letter(l, expr.dim(), expr.table())
                                            : it->second);
    }
    out += acc;
  }
  return out;
}

}  // namespace hwalg
