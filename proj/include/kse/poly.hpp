#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kse/errors.hpp"
#include "kse/numeric.hpp"

namespace kse {

using Exp = std::vector<int>;

// Sparse multivariate polynomial with exact integer coefficients.
// Terms are kept in an ordered map (lex order on exponent vectors), which
// makes iteration order, printing and serialization canonical.
struct Poly {
  int nvars = 0;
  std::map<Exp, Int> terms;

  Poly() = default;
  explicit Poly(int n) : nvars(n) {}

  static Poly zero(int n) { return Poly(n); }

  static Poly constant(int n, Int c) {
    Poly p(n);
    if (c != 0) p.terms.emplace(Exp(n, 0), std::move(c));
    return p;
  }

  static Poly monomial(Exp e, Int c) {
    Poly p(static_cast<int>(e.size()));
    if (c != 0) p.terms.emplace(std::move(e), std::move(c));
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  bool operator==(const Poly& o) const { return nvars == o.nvars && terms == o.terms; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  void add_term(const Exp& e, const Int& c) {
    if (c == 0) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
      terms.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms) add_term(e, c);
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms) add_term(e, -c);
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
  friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }

  Poly operator-() const {
    Poly r(nvars);
    for (const auto& [e, c] : terms) r.terms.emplace(e, -c);
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.nvars);
    for (const auto& [ea, ca] : a.terms)
      for (const auto& [eb, cb] : b.terms) {
        Exp e(ea);
        for (int i = 0; i < r.nvars; ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

  void scale(const Int& c) {
    if (c == 0) { terms.clear(); return; }
    for (auto& [e, v] : terms) v *= c;
  }

  // multiply by the monomial var^k
  void shift_var(int var, int k) {
    std::map<Exp, Int> nt;
    for (auto& [e, c] : terms) {
      Exp e2(e);
      e2[var] += k;
      nt.emplace(std::move(e2), std::move(c));
    }
    terms.swap(nt);
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms) {
      int t = 0;
      for (int x : e) t += x;
      if (t > d) d = t;
    }
    return d;
  }

  Int eval_all_ones() const {
    Int s = 0;
    for (const auto& [e, c] : terms) s += c;
    return s;
  }

  std::vector<std::pair<Exp, Int>> negative_terms() const {
    std::vector<std::pair<Exp, Int>> out;
    for (const auto& [e, c] : terms)
      if (c < 0) out.emplace_back(e, c);
    return out;
  }

  bool has_nonneg_coeffs() const { return negative_terms().empty(); }

  std::string to_string(const std::vector<std::string>& varnames) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
      Int a = c;
      bool negv = a < 0;
      if (negv) a = -a;
      std::string mono;
      for (int i = 0; i < nvars; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += varnames[i];
        if (e[i] != 1) mono += "^" + std::to_string(e[i]);
      }
      std::string body;
      if (mono.empty()) body = a.str();
      else if (a == 1) body = mono;
      else body = a.str() + "*" + mono;
      if (first) {
        if (negv) os << "-";
        os << body;
        first = false;
      } else {
        os << (negv ? " - " : " + ") << body;
      }
    }
    return os.str();
  }
};

// var i |-> c * prod_j y_j^{e[j]}  (exact; used for specialization maps)
struct Subst {
  Int c;
  Exp e;
};

inline Poly poly_pow(const Poly& base, int k) {
  Poly r = Poly::constant(base.nvars, 1);
  Poly b = base;
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

inline Poly substitute(const Poly& p, const std::vector<Subst>& subst, int out_nvars) {
  if (static_cast<int>(subst.size()) != p.nvars)
    throw ValidationError("substitution arity mismatch");
  for (const auto& s : subst)
    if (static_cast<int>(s.e.size()) != out_nvars)
      throw ValidationError("substitution target arity mismatch");
  Poly r(out_nvars);
  for (const auto& [e, c] : p.terms) {
    Poly t = Poly::constant(out_nvars, c);
    for (int i = 0; i < p.nvars; ++i) {
      if (e[i] == 0) continue;
      Poly img = Poly::monomial(subst[i].e, subst[i].c);
      t = t * poly_pow(img, e[i]);
    }
    r += t;
  }
  return r;
}

// collapse every variable to the single variable q (grading by total degree)
inline Poly collapse_to_single(const Poly& p) {
  std::vector<Subst> s(p.nvars, Subst{Int(1), Exp{1}});
  return substitute(p, s, 1);
}

}  // namespace kse
