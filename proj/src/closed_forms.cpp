#include "tightmaps/closed_forms.hpp"

#include <algorithm>
#include <numeric>

#include "tightmaps/insertion.hpp"
#include "tightmaps/poly.hpp"

namespace tightmaps {

namespace {

void need_derivs(const DiskData& data, int k) {
  if (data.kmax() < k)
    throw Error(ErrorCode::InsufficientOrder, "needs R, S derivatives up to " + std::to_string(k) + ", have " + std::to_string(data.kmax()));
}

// R^{d/2 - 1} R' for d even, R^{(d-1)/2} S' for d odd
Series pants_branch(int d, const DiskData& data) {
  need_derivs(data, 1);
  if (d % 2 == 0) return data.R_half_power(d - 2) * data.R_deriv(1);
  return data.R_half_power(d - 1) * data.S_deriv(1);
}

Series inv_t(int order2) { return Series::monomial(Monomial::t_power(-2), 1, order2); }

Series nth_derivative(Series s, int d) {
  for (int i = 0; i < d; ++i) s = derive_t(s);
  return s;
}

}  // namespace

Series pants(int l1, int l2, int l3, const DiskData& data) {
  if (l1 < 0 || l2 < 0 || l3 < 0) throw Error(ErrorCode::InvalidIndex, "negative length");
  int d = l1 + l2 + l3;
  if (d > 0) return pants_branch(d, data);
  need_derivs(data, 1);
  // R'/R - 1/t = (t R' - R) / (t R), pole cancels
  const Series& R = data.R();
  Series v = divide(Series::t() * data.R_deriv(1) - R, Series::t() * R);
  if (v.min_t2() < 0) throw Error(ErrorCode::AssumptionViolated, "pole of T_{0,0,0} did not cancel");
  return v;
}

Series strict_pants(int l1, int l2, int l3, const DiskData& data) {
  if (l1 < 0 || l2 < 0 || l3 < 0) throw Error(ErrorCode::InvalidIndex, "negative length");
  if (l1 + l2 <= l3) throw Error(ErrorCode::AssumptionViolated, "strict pants needs l1 + l2 > l3");
  return pants_branch(l1 + l2 - l3, data);
}

Series double_strict(int l1, int l2, int l3, const DiskData& data) {
  if (l1 < 0 || l2 < 0 || l3 < 0) throw Error(ErrorCode::InvalidIndex, "negative length");
  if (l1 <= l2 + l3) throw Error(ErrorCode::AssumptionViolated, "doubly strict pants needs l1 > l2 + l3");
  return pants_branch(l1 - l2 - l3, data);
}

Series cylinder(int l1, int l2, const DiskData& data) {
  if (l1 < 0 || l2 < 0) throw Error(ErrorCode::InvalidIndex, "negative length");
  if (l1 == 0 && l2 == 0) return log_unit(shift_t(data.R(), -2));
  if (l1 != l2) return Series(data.R().order2());
  return frac(1, l1) * data.R_half_power(2 * l1);
}

Series collet_fusy(const std::vector<int>& L, int s, const DiskData& data) {
  if (!data.spec().bipartite()) throw Error(ErrorCode::NonBipartiteWeights, data.spec().to_string());
  if (L.empty()) throw Error(ErrorCode::UnsupportedCase, "needs at least one boundary face");
  if (s < 0) throw Error(ErrorCode::InvalidRange, "negative vertex count");
  int odd = 0, sum = 0;
  Rational prod = 1;
  for (int l : L) {
    if (l < 1) throw Error(ErrorCode::InvalidIndex, "boundary lengths must be positive");
    sum += l;
    prod *= frac(l, 2);
    if (l % 2) {
      ++odd;
      prod *= 4 * binomial(l - 1, (l - 1) / 2);
    } else {
      prod *= binomial(l, l / 2);
    }
  }
  if (odd != 0 && odd != 2) throw Error(ErrorCode::UnsupportedCase, "needs zero or two odd boundaries");
  prod /= frac(sum, 2);
  int n = int(L.size());
  int d = n - 2 + s;
  Series Rp = data.R_half_power(sum);
  if (d == -1) return prod * integrate_t(Rp);
  return prod * nth_derivative(Rp, d);
}

namespace {

Series tgen_impl(const std::vector<int>& l, const DiskData& data, PFamily family) {
  const int n = int(l.size());
  if (n < 3) throw Error(ErrorCode::UnsupportedCase, "needs at least three boundaries");
  if (!data.spec().bipartite()) throw Error(ErrorCode::NonBipartiteWeights, data.spec().to_string());
  need_derivs(data, n - 2);
  std::vector<Rational> half;
  int sum = 0;
  for (int x : l) {
    if (x < 0) throw Error(ErrorCode::InvalidIndex, "negative length");
    half.emplace_back(x, 2);
    sum += x;
  }
  std::vector<Series> rd;
  for (int k = 1; k <= n - 2; ++k) rd.push_back(data.R_deriv(k));
  Series acc;
  for (int k = 0; k <= n - 3; ++k) {
    Rational c = factorial(k) * pk_value(k, half, family);
    if (sgn(c) == 0) continue;
    acc = acc + c * bnk(n - 2, k + 1, rd, data.R());
  }
  Series v = data.R_half_power(sum) * acc;
  if (sum == 0 && family == PFamily::P) {
    Rational c = factorial(n - 3) * (n % 2 ? -1 : 1);
    v = v + c * pow(inv_t(kExact), n - 2);
  }
  return v;
}

}  // namespace

Series tgen(const std::vector<int>& l, const DiskData& data) {
  for (int x : l)
    if (x % 2) throw Error(ErrorCode::ParityMismatch, "tgen needs even lengths");
  return tgen_impl(l, data, PFamily::P);
}

Series tgen_quasi(const std::vector<int>& l, const DiskData& data) {
  if (l.size() < 3 || l[0] % 2 == 0 || l[1] % 2 == 0) throw Error(ErrorCode::ParityMismatch, "tgen_quasi needs two leading odd lengths");
  for (std::size_t i = 2; i < l.size(); ++i)
    if (l[i] % 2) throw Error(ErrorCode::ParityMismatch, "tgen_quasi needs the remaining lengths even");
  return tgen_impl(l, data, PFamily::PTilde);
}

namespace {

// (R'/R)^2 - S'^2/R as t^{-2} u
Series genus1_argument(const DiskData& data) {
  need_derivs(data, 1);
  Series invR = invert(data.R());
  Series a = data.R_deriv(1) * invR;
  return a * a - data.S_deriv(1) * data.S_deriv(1) * invR;
}

}  // namespace

Series genus1_F(const DiskData& data) {
  LogSeries l = log(genus1_argument(data));
  // ln t markers: -2/24 from the log, +1/12 explicit
  if (l.log_t != -2) throw Error(ErrorCode::LogOfNonUnit, "genus one argument is not t^-2 times a unit");
  return frac(1, 24) * l.series;
}

Series genus1_T(int l, const DiskData& data, const TrumpetMatrix& A) {
  if (l < 0) throw Error(ErrorCode::InvalidIndex, "negative length");
  need_derivs(data, 1);
  Series invR = invert(data.R());
  Series a = data.R_deriv(1) * invR;
  Series b = data.S_deriv(1) * invert(data.sqrtR());
  InsertionOperator D = build_D(l, A);
  Series num = a * D.apply(a, data.spec()) - b * D.apply(b, data.spec());
  Series v = divide(num, Rational(12) * (a * a - b * b));
  if (l == 0) v = v + frac(1, 12) * inv_t(kExact);
  return v;
}

Series genus1_T_bipartite(int l, const DiskData& data) {
  if (l < 0 || l % 2) throw Error(ErrorCode::ParityMismatch, "bipartite genus one needs an even length");
  if (!data.spec().bipartite()) throw Error(ErrorCode::NonBipartiteWeights, data.spec().to_string());
  need_derivs(data, 2);
  int h = l / 2;
  Series inner = Rational(h * h - 1) * (data.R_deriv(1) * invert(data.R())) + data.R_deriv(2) * invert(data.R_deriv(1));
  Series v = frac(1, 12) * data.R_half_power(l) * inner;
  if (l == 0) v = v + frac(1, 12) * inv_t(kExact);
  return v;
}

Series genus0_closed(const Lengths& l, const DiskData& data) {
  if (l.size() == 2) return cylinder(l[0], l[1], data);
  if (l.size() == 3) return pants(l[0], l[1], l[2], data);
  throw Error(ErrorCode::UnsupportedGenus, "no genus-0 closed form for n = " + std::to_string(l.size()));
}

}  // namespace tightmaps
