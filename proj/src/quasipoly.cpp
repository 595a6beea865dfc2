#include "tightmaps/quasipoly.hpp"

#include <algorithm>
#include <numeric>

namespace tightmaps {

const SeriesPoly* QuasiPolynomial::find(const OddSet& odd) const {
  auto it = classes_.find(odd);
  return it == classes_.end() ? nullptr : &it->second;
}

QuasiPolynomial::OddSet QuasiPolynomial::odd_positions(const std::vector<int>& l) {
  OddSet odd;
  for (int i = 0; i < int(l.size()); ++i)
    if (l[i] % 2 != 0) odd.push_back(i);
  return odd;
}

namespace {

Rational monomial_value(const std::vector<int>& e, const std::vector<int>& l) {
  Rational v = 1;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) v *= l[i] * l[i];
  return v;
}

Series eval_poly(const SeriesPoly& p, const std::vector<int>& l) {
  Series s;
  for (auto& [e, c] : p.terms()) s = s + monomial_value(e, l) * c;
  return s;
}

std::vector<std::vector<int>> basis(int arity, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(arity, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == arity) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, degree);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int sa = std::accumulate(a.begin(), a.end(), 0), sb = std::accumulate(b.begin(), b.end(), 0);
    return sa != sb ? sa < sb : a < b;
  });
  return out;
}

}  // namespace

Series QuasiPolynomial::eval(const std::vector<int>& l) const {
  if (int(l.size()) != arity_) throw Error(ErrorCode::InvalidIndex, "quasi-polynomial arity");
  const SeriesPoly* p = find(odd_positions(l));
  if (!p) throw Error(ErrorCode::InvalidIndex, "no polynomial for this parity class");
  return eval_poly(*p, l);
}

int QuasiPolynomial::total_degree() const {
  int d = -1;
  for (auto& [odd, p] : classes_) d = std::max(d, p.total_degree());
  return d;
}

bool same_poly(const SeriesPoly& a, const SeriesPoly& b) {
  for (auto& [e, c] : a.terms())
    if (!(c == b.coefficient(e))) return false;
  for (auto& [e, c] : b.terms())
    if (!(c == a.coefficient(e))) return false;
  return true;
}

bool QuasiPolynomial::is_symmetric() const {
  std::vector<int> perm(arity_);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (auto& [odd, p] : classes_) {
      OddSet image;
      for (int i = 0; i < arity_; ++i)
        if (std::binary_search(odd.begin(), odd.end(), perm[i])) image.push_back(i);
      const SeriesPoly* q = find(image);
      SeriesPoly moved = p.permuted(perm);
      if (!q) {
        if (!moved.is_zero()) return false;
        continue;
      }
      if (!same_poly(*q, moved)) return false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

bool QuasiPolynomial::operator==(const QuasiPolynomial& o) const {
  if (arity_ != o.arity_ || classes_.size() != o.classes_.size()) return false;
  for (auto& [odd, p] : classes_) {
    const SeriesPoly* q = o.find(odd);
    if (!q || !same_poly(p, *q)) return false;
  }
  return true;
}

nlohmann::json QuasiPolynomial::to_json() const {
  nlohmann::json j;
  j["arity"] = arity_;
  auto classes = nlohmann::json::array();
  for (auto& [odd, p] : classes_) {
    auto poly = nlohmann::json::array();
    for (auto& [e, c] : p.terms()) poly.push_back({{"exps", e}, {"coef", c.to_json()}});
    classes.push_back({{"odd_positions", odd}, {"poly", poly}});
  }
  j["classes"] = classes;
  return j;
}

QuasiPolynomial fit_quasipolynomial(const SampleSet& samples, int arity, int degree) {
  if (degree < 0) throw Error(ErrorCode::InvalidRange, "negative degree bound");
  std::map<QuasiPolynomial::OddSet, std::vector<std::pair<std::vector<int>, Series>>> by_class;
  for (auto& [l, s] : samples) {
    if (int(l.size()) != arity) throw Error(ErrorCode::InvalidIndex, "sample arity");
    by_class[QuasiPolynomial::odd_positions(l)].emplace_back(l, s);
  }
  auto mons = basis(arity, degree);
  const int B = int(mons.size());
  QuasiPolynomial qp(arity);
  for (auto& [odd, rows] : by_class) {
    // Gauss-Jordan over the rationals, right-hand sides are series
    std::vector<std::vector<Rational>> M;
    std::vector<Series> rhs;
    for (auto& [l, s] : rows) {
      std::vector<Rational> r(B);
      for (int b = 0; b < B; ++b) r[b] = monomial_value(mons[b], l);
      M.push_back(std::move(r));
      rhs.push_back(s);
    }
    const int n = int(M.size());
    int rank = 0;
    for (int col = 0; col < B && rank < n; ++col) {
      int piv = -1;
      for (int r = rank; r < n; ++r)
        if (sgn(M[r][col]) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(M[piv], M[rank]);
      std::swap(rhs[piv], rhs[rank]);
      Rational inv = 1 / M[rank][col];
      for (auto& x : M[rank]) x *= inv;
      rhs[rank] = inv * rhs[rank];
      for (int r = 0; r < n; ++r) {
        if (r == rank || sgn(M[r][col]) == 0) continue;
        Rational f = M[r][col];
        for (int c = 0; c < B; ++c) M[r][c] -= f * M[rank][c];
        rhs[r] = rhs[r] - f * rhs[rank];
      }
      ++rank;
    }
    if (rank < B)
      throw Error(ErrorCode::InsufficientSamples, "parity class needs " + std::to_string(B) + " independent samples, got rank " + std::to_string(rank));
    SeriesPoly p(arity);
    for (int r = 0; r < B; ++r) {
      int col = 0;
      while (sgn(M[r][col]) == 0) ++col;
      p.add_term(mons[col], rhs[r]);
    }
    for (auto& [l, s] : rows) {
      Series pred = eval_poly(p, l);
      if (!(pred == s)) throw Error(ErrorCode::NotQuasiPolynomial, "sample mismatch at " + nlohmann::json(l).dump());
    }
    qp.set_class(odd, std::move(p));
  }
  return qp;
}

SampleSet select_independent(const SampleSet& samples, int arity, int degree) {
  auto mons = basis(arity, degree);
  std::map<QuasiPolynomial::OddSet, std::vector<std::vector<Rational>>> echelon;
  SampleSet out;
  for (auto& [l, s] : samples) {
    auto& rows = echelon[QuasiPolynomial::odd_positions(l)];
    if (int(rows.size()) == int(mons.size())) continue;
    std::vector<Rational> v(mons.size());
    for (std::size_t b = 0; b < mons.size(); ++b) v[b] = monomial_value(mons[b], l);
    // reduce against rows, each normalised with a leading 1
    for (auto& r : rows) {
      std::size_t lead = 0;
      while (sgn(r[lead]) == 0) ++lead;
      if (sgn(v[lead]) == 0) continue;
      Rational f = v[lead];
      for (std::size_t b = 0; b < v.size(); ++b) v[b] -= f * r[b];
    }
    std::size_t lead = 0;
    while (lead < v.size() && sgn(v[lead]) == 0) ++lead;
    if (lead == v.size()) continue;
    Rational inv = 1 / v[lead];
    for (auto& x : v) x *= inv;
    for (auto& r : rows)
      if (sgn(r[lead]) != 0) {
        Rational f = r[lead];
        for (std::size_t b = 0; b < v.size(); ++b) r[b] -= f * v[b];
      }
    rows.push_back(std::move(v));
    out[l] = s;
  }
  return out;
}

}  // namespace tightmaps
