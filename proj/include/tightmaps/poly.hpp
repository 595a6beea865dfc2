#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tightmaps/series.hpp"

namespace tightmaps {

class UniPoly {
public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  static UniPoly constant(const Rational& c);
  static UniPoly x();

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](int i) const;
  Rational eval(const Rational& x) const;
  Series eval(const Series& x) const;
  // P(a x + b)
  UniPoly compose_affine(const Rational& a, const Rational& b) const;
  // Q with Q(x^2) = P(x); requires P even
  UniPoly even_part_in_square() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Rational& s, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "x") const;

private:
  void trim();
  std::vector<Rational> c_;
};

template <class C>
class MultiPolyT {
public:
  using Exps = std::vector<int>;

  MultiPolyT() = default;
  explicit MultiPolyT(int arity) : arity_(arity) {}

  static MultiPolyT constant(int arity, const C& c) {
    MultiPolyT p(arity);
    p.add_term(Exps(arity, 0), c);
    return p;
  }
  static MultiPolyT variable(int arity, int i) {
    MultiPolyT p(arity);
    Exps e(arity, 0);
    e[i] = 1;
    p.add_term(e, C(1));
    return p;
  }

  int arity() const { return arity_; }
  const std::map<Exps, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exps& e, const C& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!is_zero_coef(c)) terms_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (is_zero_coef(it->second)) terms_.erase(it);
  }

  C coefficient(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C() : it->second;
  }

  int total_degree() const {
    int d = -1;
    for (auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  MultiPolyT derivative(int i) const {
    MultiPolyT p(arity_);
    for (auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exps f = e;
      f[i] -= 1;
      p.add_term(f, c * Rational(e[i]));
    }
    return p;
  }

  // p(x_{perm[0]}, ..., ): variable i of the result is variable perm[i] of the input
  MultiPolyT permuted(const std::vector<int>& perm) const {
    MultiPolyT p(arity_);
    for (auto& [e, c] : terms_) {
      Exps f(arity_);
      for (int i = 0; i < arity_; ++i) f[i] = e[perm[i]];
      p.add_term(f, c);
    }
    return p;
  }

  template <class V>
  V eval(const std::vector<V>& x, const V& one) const {
    V sum = one * C();
    for (auto& [e, c] : terms_) {
      V term = one;
      for (int i = 0; i < arity_; ++i)
        for (int k = 0; k < e[i]; ++k) term = term * x[i];
      sum = sum + term * c;
    }
    return sum;
  }

  friend MultiPolyT operator+(const MultiPolyT& a, const MultiPolyT& b) {
    MultiPolyT p = a;
    if (p.arity_ == 0) p.arity_ = b.arity_;
    for (auto& [e, c] : b.terms_) p.add_term(e, c);
    return p;
  }
  friend MultiPolyT operator-(const MultiPolyT& a, const MultiPolyT& b) {
    MultiPolyT p = a;
    if (p.arity_ == 0) p.arity_ = b.arity_;
    for (auto& [e, c] : b.terms_) p.add_term(e, C() - c);
    return p;
  }
  friend MultiPolyT operator*(const MultiPolyT& a, const MultiPolyT& b) {
    MultiPolyT p(std::max(a.arity_, b.arity_));
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        Exps e = ea;
        for (int i = 0; i < p.arity_; ++i) e[i] += eb[i];
        p.add_term(e, ca * cb);
      }
    return p;
  }
  friend MultiPolyT operator*(const Rational& s, const MultiPolyT& a) {
    MultiPolyT p(a.arity_);
    for (auto& [e, c] : a.terms_) p.add_term(e, c * s);
    return p;
  }
  friend bool operator==(const MultiPolyT& a, const MultiPolyT& b) { return a.terms_ == b.terms_; }

private:
  static bool is_zero_coef(const Rational& c) { return sgn(c) == 0; }
  static bool is_zero_coef(const Series& c) { return c.empty() && c.is_exact(); }

  int arity_ = 0;
  std::map<Exps, C> terms_;
};

using MultiPoly = MultiPolyT<Rational>;

std::string to_string(const MultiPoly& p, const std::vector<std::string>& names);
bool is_symmetric(const MultiPoly& p);
Rational eval(const MultiPoly& p, const std::vector<Rational>& x);

// B_{n,k}(r_1..r_{n-k+1}); arity n-k+1
MultiPoly bell(int n, int k);
Series bnk(int n, int k, const std::vector<Series>& r_derivs, const Series& R);
// outer[k-1] = f^{(k)}(g), inner[k-1] = g^{(k)}
Series faa_di_bruno(const std::vector<Series>& outer, const std::vector<Series>& inner, int n);

enum class PFamily { P, Q, PTilde };
// polynomial in x = l^2
UniPoly pk_uni(int k, PFamily family);
// p_k(l_1..l_n) in x_i = l_i^2; PTilde puts p~ in the first two slots
MultiPoly pk_multi(int k, int n, PFamily family);
Rational pk_value(int k, const std::vector<Rational>& l, PFamily family = PFamily::P);

bool string_equation_check(int k, int n, int lmax);
bool string_equation_holds(int k, const std::vector<int>& l);

std::vector<Rational> bernoulli_numbers(int n);  // B_0..B_n with B_1 = +1/2
// polynomial S_p(N) = sum_{m=1}^{N} m^p
UniPoly faulhaber(int p);

enum class Parity { Even, Odd };
// sum_{0<m<l, m = par mod 2} m P(m^2) (+ (l/2) P(l^2)), as a polynomial in l^2 on the given parity of l
UniPoly discrete_sum(const UniPoly& P, Parity m_parity, bool boundary_term, Parity l_parity);
Rational discrete_sum_direct(const UniPoly& P, Parity m_parity, bool boundary_term, int l);

Rational euler_characteristic(int g, int n);

Rational factorial(int n);
Rational binomial(int n, int k);
Rational multinomial(const std::vector<int>& parts);
// binom(x, k) for rational x
Rational binomial_rational(const Rational& x, int k);

}  // namespace tightmaps
