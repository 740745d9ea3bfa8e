#include "poly_oracle.hpp"

#include <algorithm>
#include <sstream>

namespace oracle {

std::string C::str() const {
  std::ostringstream s;
  s << "(" << re << ")+(" << im << ")i";
  return s.str();
}

namespace {

void accumulate(Poly& p, const Exponents& e, const C& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.emplace(e, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) p.erase(it);
  }
}

Poly scale(const Poly& f, const C& c) {
  Poly out;
  for (const auto& [e, v] : f) accumulate(out, e, v * c);
  return out;
}

}  // namespace

Poly multiply_by(const Poly& f, int mu) {
  Poly out;
  for (const auto& [exps, v] : f) {
    Exponents e = exps;
    ++e[mu];
    accumulate(out, e, v);
  }
  return out;
}

Poly derivative(const Poly& f, int mu) {
  Poly out;
  for (const auto& [exps, v] : f) {
    if (exps[mu] == 0) continue;
    Exponents e = exps;
    const C k{Q(e[mu])};
    --e[mu];
    accumulate(out, e, v * k);
  }
  return out;
}

Field apply_letters(const std::vector<int>& letters, const Field& f, const Params& params) {
  Field g = f;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    const int l = *it;
    for (auto& comp : g) {
      if (l < kMomentumBase) {
        comp = multiply_by(comp, l - kPositionBase);
      } else {
        const int mu = l - kMomentumBase;
        const C factor = C{Q(0), Q(-1)} * params.hbar * params.metric[mu];
        comp = scale(derivative(comp, mu), factor);
      }
    }
  }
  return g;
}

Field apply(const RawOperator& op, const Field& f, const Params& params) {
  Field out(op.dim);
  for (const auto& term : op.terms) {
    const Field g = apply_letters(term.letters, f, params);
    for (int r = 0; r < op.dim; ++r) {
      for (int c = 0; c < op.dim; ++c) {
        if (term.matrix[r][c].is_zero()) continue;
        for (const auto& [e, v] : g[c]) accumulate(out[r], e, term.matrix[r][c] * v);
      }
    }
  }
  return out;
}

Field bracket_action(const RawOperator& a, const RawOperator& b, const Field& f, const Params& params) {
  const Field ab = apply(a, apply(b, f, params), params);
  const Field ba = apply(b, apply(a, f, params), params);
  Field out(a.dim);
  for (int r = 0; r < a.dim; ++r) {
    out[r] = ab[r];
    for (const auto& [e, v] : ba[r]) accumulate(out[r], e, C{} - v);
  }
  return out;
}

std::vector<Field> probe_fields(int dim, int max_degree) {
  std::vector<Exponents> monomials;
  for (int a = 0; a <= max_degree; ++a) {
    for (int b = 0; a + b <= max_degree; ++b) {
      for (int c = 0; a + b + c <= max_degree; ++c) {
        for (int d = 0; a + b + c + d <= max_degree; ++d) monomials.push_back({a, b, c, d});
      }
    }
  }
  std::vector<Field> out;
  for (int comp = 0; comp < dim; ++comp) {
    for (const auto& m : monomials) {
      Field f(dim);
      f[comp][m] = C{Q(1)};
      out.push_back(std::move(f));
    }
  }
  return out;
}

int order(const RawOperator& op) {
  int best = 0;
  for (const auto& t : op.terms) {
    int n = 0;
    for (int l : t.letters) n += l >= kMomentumBase ? 1 : 0;
    best = std::max(best, n);
  }
  return best;
}

std::string to_string(const Field& f) {
  std::ostringstream s;
  for (std::size_t c = 0; c < f.size(); ++c) {
    s << "[" << c << "]";
    for (const auto& [e, v] : f[c]) {
      s << " " << v.str() << "*y^(" << e[0] << "," << e[1] << "," << e[2] << "," << e[3] << ")";
    }
    s << "\n";
  }
  return s.str();
}

}  // namespace oracle
