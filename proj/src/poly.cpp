#include "tightmaps/poly.hpp"

#include <mutex>
#include <numeric>
#include <sstream>

namespace tightmaps {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }
UniPoly UniPoly::x() { return UniPoly({0, 1}); }

void UniPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational UniPoly::operator[](int i) const { return i >= 0 && i <= degree() ? c_[i] : Rational(0); }

Rational UniPoly::eval(const Rational& x) const {
  Rational r = 0;
  for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
  return r;
}

Series UniPoly::eval(const Series& x) const {
  Series r;
  for (int i = degree(); i >= 0; --i) r = r * x + Series::constant(c_[i]);
  return r;
}

UniPoly UniPoly::compose_affine(const Rational& a, const Rational& b) const {
  UniPoly lin({b, a});
  UniPoly r;
  for (int i = degree(); i >= 0; --i) r = r * lin + constant(c_[i]);
  return r;
}

UniPoly UniPoly::even_part_in_square() const {
  std::vector<Rational> q;
  for (int i = 0; i <= degree(); ++i) {
    if (i % 2 == 1) {
      if (sgn(c_[i]) != 0) throw Error(ErrorCode::ParityMismatch, "polynomial is not even");
      continue;
    }
    q.push_back(c_[i]);
  }
  return UniPoly(q);
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[int(i)] + b[int(i)];
  return UniPoly(c);
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + Rational(-1) * b; }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(c);
}

UniPoly operator*(const Rational& s, const UniPoly& a) {
  std::vector<Rational> c = a.c_;
  for (auto& x : c) x *= s;
  return UniPoly(c);
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (sgn(c_[i]) == 0) continue;
    if (!first) os << (sgn(c_[i]) < 0 ? " - " : " + ");
    else if (sgn(c_[i]) < 0) os << '-';
    first = false;
    Rational a = abs(c_[i]);
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) os << (a != 1 ? "*" : "") << var << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

std::string to_string(const MultiPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : p.terms()) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << '-';
    first = false;
    Rational a = abs(c);
    bool mono = std::any_of(e.begin(), e.end(), [](int x) { return x != 0; });
    if (!mono || a != 1) os << a.get_str();
    bool star = !mono || a != 1;
    for (int i = 0; i < p.arity(); ++i) {
      if (!e[i]) continue;
      os << (star ? "*" : "") << names[i];
      if (e[i] > 1) os << '^' << e[i];
      star = true;
    }
  }
  return os.str();
}

bool is_symmetric(const MultiPoly& p) {
  std::vector<int> perm(p.arity());
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end()))
    if (!(p.permuted(perm) == p)) return false;
  return true;
}

Rational eval(const MultiPoly& p, const std::vector<Rational>& x) { return p.eval(x, Rational(1)); }

Rational factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(r);
}

Rational binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Rational multinomial(const std::vector<int>& parts) {
  int n = 0;
  for (int p : parts) {
    if (p < 0) return 0;
    n += p;
  }
  Rational r = factorial(n);
  for (int p : parts) r /= factorial(p);
  return r;
}

Rational binomial_rational(const Rational& x, int k) {
  if (k < 0) return 0;
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= (x - i);
  return r / factorial(k);
}

namespace {

MultiPoly resize(const MultiPoly& p, int arity) {
  MultiPoly q(arity);
  for (auto& [e, c] : p.terms()) {
    std::vector<int> f(arity, 0);
    for (int i = 0; i < std::min<int>(arity, e.size()); ++i) f[i] = e[i];
    for (int i = arity; i < int(e.size()); ++i)
      if (e[i]) throw Error(ErrorCode::InvalidRange, "resize drops a used variable");
    q.add_term(f, c);
  }
  return q;
}

}  // namespace

MultiPoly bell(int n, int k) {
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidRange, "bell(" + std::to_string(n) + "," + std::to_string(k) + ")");
  // table[m][j] = B_{m,j} with arity n
  std::vector<std::vector<MultiPoly>> table(n + 1, std::vector<MultiPoly>(k + 1, MultiPoly(n)));
  table[0][0] = MultiPoly::constant(n, 1);
  for (int m = 1; m <= n; ++m)
    for (int j = 1; j <= std::min(m, k); ++j)
      for (int i = 1; i <= m - j + 1; ++i) {
        if (table[m - i][j - 1].is_zero()) continue;
        table[m][j] = table[m][j] + binomial(m - 1, i - 1) * (MultiPoly::variable(n, i - 1) * table[m - i][j - 1]);
      }
  return resize(table[n][k], n - k + 1);
}

Series bnk(int n, int k, const std::vector<Series>& r_derivs, const Series& R) {
  MultiPoly b = bell(n, k);
  if (int(r_derivs.size()) < n - k + 1) throw Error(ErrorCode::InsufficientOrders, "bnk needs R derivatives up to " + std::to_string(n - k + 1));
  Series invR = invert(R);
  std::vector<Series> r;
  for (int i = 0; i < n - k + 1; ++i) r.push_back(r_derivs[i] * invR);
  return b.eval(r, Series::constant(1));
}

Series faa_di_bruno(const std::vector<Series>& outer, const std::vector<Series>& inner, int n) {
  if (int(outer.size()) < n || int(inner.size()) < n)
    throw Error(ErrorCode::InsufficientOrders, "Faa di Bruno needs " + std::to_string(n) + " derivatives");
  Series sum;
  for (int k = 1; k <= n; ++k) {
    std::vector<Series> r(inner.begin(), inner.begin() + (n - k + 1));
    sum = sum + outer[k - 1] * bell(n, k).eval(r, Series::constant(1));
  }
  return sum;
}

UniPoly pk_uni(int k, PFamily family) {
  UniPoly p = UniPoly::constant(1);
  for (int i = 1; i <= k; ++i) {
    Rational root;
    switch (family) {
      case PFamily::P: root = Rational(i * i); break;
      case PFamily::Q: root = Rational((i - 1) * (i - 1)); break;
      case PFamily::PTilde: root = frac(2 * i - 1, 2) * frac(2 * i - 1, 2); break;
    }
    p = p * UniPoly({-root, 1});
  }
  Rational f = factorial(k);
  return (1 / (f * f)) * p;
}

namespace {

MultiPoly embed(const UniPoly& p, int arity, int slot) {
  MultiPoly m(arity);
  for (int i = 0; i <= p.degree(); ++i) {
    std::vector<int> e(arity, 0);
    e[slot] = i;
    m.add_term(e, p[i]);
  }
  return m;
}

void compositions(int k, int n, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& fn) {
  if (int(cur.size()) == n - 1) {
    cur.push_back(k);
    fn(cur);
    cur.pop_back();
    return;
  }
  for (int a = 0; a <= k; ++a) {
    cur.push_back(a);
    compositions(k - a, n, cur, fn);
    cur.pop_back();
  }
}

}  // namespace

MultiPoly pk_multi(int k, int n, PFamily family) {
  if (family == PFamily::PTilde && n < 2) throw Error(ErrorCode::InvalidRange, "p~ needs two slots");
  if (n < 1 || k < 0) throw Error(ErrorCode::InvalidRange, "pk_multi");
  MultiPoly sum(n);
  std::vector<int> cur;
  compositions(k, n, cur, [&](const std::vector<int>& ks) {
    MultiPoly term = MultiPoly::constant(n, 1);
    for (int i = 0; i < n; ++i) {
      PFamily f = PFamily::Q;
      if (family == PFamily::PTilde && i < 2) f = PFamily::PTilde;
      if (family == PFamily::P && i == 0) f = PFamily::P;
      term = term * embed(pk_uni(ks[i], f), n, i);
    }
    sum = sum + term;
  });
  return sum;
}

Rational pk_value(int k, const std::vector<Rational>& l, PFamily family) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, MultiPoly> cache;
  MultiPoly p;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(k, int(l.size()), int(family));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, pk_multi(k, int(l.size()), family)).first;
    p = it->second;
  }
  std::vector<Rational> x;
  for (auto& v : l) x.push_back(v * v);
  return eval(p, x);
}

bool string_equation_holds(int k, const std::vector<int>& l) {
  auto val = [&](int kk, const std::vector<int>& v) {
    std::vector<Rational> r(v.begin(), v.end());
    return pk_value(kk, r);
  };
  int sum = std::accumulate(l.begin(), l.end(), 0);
  Rational rhs = Rational(sum - k - 1) * val(k, l);
  for (std::size_t i = 0; i < l.size(); ++i)
    for (int m = 1; m < l[i]; ++m) {
      std::vector<int> v = l;
      v[i] = m;
      rhs += 2 * m * val(k, v);
    }
  return Rational(k + 1) * val(k + 1, l) == rhs;
}

bool string_equation_check(int k, int n, int lmax) {
  std::vector<int> l(n, 0);
  while (true) {
    if (!string_equation_holds(k, l)) return false;
    int i = 0;
    while (i < n && l[i] == lmax) l[i++] = 0;
    if (i == n) return true;
    ++l[i];
  }
}

std::vector<Rational> bernoulli_numbers(int n) {
  std::vector<Rational> B(n + 1);
  B[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    for (int k = 0; k < m; ++k) s += binomial(m + 1, k) * B[k];
    B[m] = -s / (m + 1);
  }
  if (n >= 1) B[1] = frac(1, 2);
  return B;
}

UniPoly faulhaber(int p) {
  auto B = bernoulli_numbers(p);
  std::vector<Rational> c(p + 2);
  for (int j = 0; j <= p; ++j) c[p + 1 - j] = binomial(p + 1, j) * B[j] / (p + 1);
  return UniPoly(c);
}

namespace {

bool covered(Parity m, bool boundary, Parity l) {
  if (l == Parity::Even) return (m == Parity::Even) == boundary;
  return (m == Parity::Odd) == boundary;
}

}  // namespace

UniPoly discrete_sum(const UniPoly& P, Parity m_parity, bool boundary_term, Parity l_parity) {
  if (!covered(m_parity, boundary_term, l_parity))
    throw Error(ErrorCode::ParityMismatch, "combination not covered by the discrete integration lemma");
  // number of summands I as an affine function a*l + b
  Rational a(1, 2), b;
  if (l_parity == Parity::Even) b = m_parity == Parity::Even ? Rational(-1) : Rational(0);
  else b = frac(-1, 2);
  UniPoly result;
  for (int j = 0; j <= P.degree(); ++j) {
    int p = 2 * j + 1;
    UniPoly s;
    if (m_parity == Parity::Even) {
      s = Rational(mpz_class(1) << p) * faulhaber(p);
    } else {
      // (2i-1)^p expanded
      for (int q = 0; q <= p; ++q) {
        Rational c = binomial(p, q) * Rational(mpz_class(1) << q) * ((p - q) % 2 ? -1 : 1);
        s = s + c * faulhaber(q);
      }
    }
    result = result + P[j] * s.compose_affine(a, b);
  }
  if (boundary_term) {
    UniPoly half_l({0, frac(1, 2)});
    UniPoly Pl;
    for (int j = 0; j <= P.degree(); ++j) {
      std::vector<Rational> c(2 * j + 1);
      c[2 * j] = P[j];
      Pl = Pl + UniPoly(c);
    }
    result = result + half_l * Pl;
  }
  return result.even_part_in_square();
}

Rational discrete_sum_direct(const UniPoly& P, Parity m_parity, bool boundary_term, int l) {
  Rational s = 0;
  for (int m = 1; m < l; ++m) {
    if ((m % 2 == 0) != (m_parity == Parity::Even)) continue;
    s += m * P.eval(Rational(m * m));
  }
  if (boundary_term) s += frac(l, 2) * P.eval(Rational(l * l));
  return s;
}

Rational euler_characteristic(int g, int n) {
  if (2 - 2 * g - n >= 0) throw Error(ErrorCode::OutOfRange, "chi(M_{g,n}) needs 2-2g-n < 0");
  int sign = (n - 1) % 2 == 0 ? 1 : -1;
  if (g == 0) return sign * factorial(n - 3);
  auto B = bernoulli_numbers(2 * g);
  Rational zeta = -B[2 * g] / (2 * g);
  return sign * factorial(2 * g + n - 3) / factorial(2 * g - 2) * zeta;
}

}  // namespace tightmaps
