#include "tightmaps/sampling.hpp"

#include <algorithm>

namespace tightmaps {

namespace {

std::vector<std::vector<int>> grid(int n, int lmax) {
  std::vector<std::vector<int>> out;
  std::vector<int> l(n, 0);
  while (true) {
    if (std::any_of(l.begin(), l.end(), [](int x) { return x != 0; })) out.push_back(l);
    int p = 0;
    while (p < n && ++l[p] > lmax) l[p++] = 0;
    if (p == n) break;
  }
  return out;
}

void refuse(int g, int n) {
  if (g == 0 && n == 2) throw Error(ErrorCode::NotQuasiPolynomial, "(0,2) is not a quasi-polynomial");
  if (g < 0 || n < 1 || 2 - 2 * g - n >= 0) throw Error(ErrorCode::UnsupportedCase, "need 2g - 2 + n > 0 and n >= 1");
  if (g >= 2) throw Error(ErrorCode::UnsupportedGenus, "genus >= 2 is only sampled by the census spot check");
}

Series chi_term(int g, int n, const Rational& chi) {
  return Series::monomial(Monomial::t_power(2 * (2 - 2 * g - n)), chi);
}

}  // namespace

SampleSet tau_samples(int g, int n, int lmax, const DiskData& data, const TrumpetMatrix& A) {
  refuse(g, n);
  TableBuilder b(data, A);
  SampleSet out;
  for (auto& l : grid(n, lmax)) out[l] = normalize_tau(b.build(g, l), l, data);
  return out;
}

QuasiFit quasipoly_fit(int g, int n, int lmax, const DiskData& data, const TrumpetMatrix& A) {
  refuse(g, n);
  QuasiFit r;
  r.genus = g, r.arity = n, r.lmax = lmax;
  r.degree_bound = 3 * g - 3 + n;
  TableBuilder b(data, A);
  SampleSet all, rest;
  for (auto& l : grid(n, lmax)) all[l] = normalize_tau(b.build(g, l), l, data);
  SampleSet fit = select_independent(all, n, r.degree_bound);
  for (auto& [l, s] : all)
    if (!fit.count(l)) rest[l] = s;
  r.fitted = int(fit.size());
  r.held_out = int(rest.size());
  r.qp = fit_quasipolynomial(fit, n, r.degree_bound);
  r.held_out_ok = true;
  for (auto& [l, s] : rest)
    if (!(r.qp.eval(l) == s)) r.held_out_ok = false;
  for (auto& [odd, p] : r.qp.classes())
    for (auto& [e, c] : p.terms()) r.coefficient_order2 = std::min(r.coefficient_order2, c.order2());
  r.symmetric = r.qp.is_symmetric();
  r.degree_ok = r.qp.total_degree() <= r.degree_bound;
  r.chi = euler_characteristic(g, n);
  std::vector<int> zeros(n, 0);
  r.all_zero_lhs = b.build(g, zeros);
  r.all_zero_rhs = r.qp.eval(zeros) - chi_term(g, n, r.chi);
  r.all_zero_ok = r.all_zero_lhs == r.all_zero_rhs;
  return r;
}

nlohmann::json QuasiFit::to_json() const {
  return {{"genus", genus},
          {"arity", arity},
          {"lmax", lmax},
          {"degree_bound", degree_bound},
          {"total_degree", qp.total_degree()},
          {"fitted", fitted},
          {"held_out", held_out},
          {"held_out_ok", held_out_ok},
          {"coefficient_order", rational_string(frac(coefficient_order2, 2))},
          {"symmetric", symmetric},
          {"degree_ok", degree_ok},
          {"chi", rational_string(chi)},
          {"all_zero", {{"T", all_zero_lhs.to_json()}, {"fit_minus_chi", all_zero_rhs.to_json()}, {"ok", all_zero_ok}}},
          {"quasipolynomial", qp.to_json()},
          {"ok", ok()}};
}

// ---- g = 2

bool GenusTwoCheck::ok() const {
  return !orders.empty() && std::all_of(orders.begin(), orders.end(), [](const Order& o) { return o.consistent; });
}

nlohmann::json GenusTwoCheck::to_json() const {
  auto arr = nlohmann::json::array();
  for (auto& o : orders)
    arr.push_back({{"grade", o.grade}, {"lengths", o.lengths}, {"held_out", o.held_out}, {"consistent", o.consistent}, {"quasipolynomial", o.qp.to_json()}});
  return {{"orders", arr}, {"ok", ok()}};
}

GenusTwoCheck genus2_spot_check(int mmax, const WeightSpec& spec) {
  const int g = 2, n = 1, chi = 2 - 2 * g - n;
  const int N = mmax + 2 - 2 * g - n;
  if (N < chi + 1) throw Error(ErrorCode::InsufficientOrders, "genus 2 needs mmax >= 4");
  WeightSpec sp = WeightSpec::make(spec.faces, std::max(N, 1));
  DiskData data = solve_RS(sp);
  const int Lmax = 2 * mmax;
  TrumpetMatrix A = trumpet_matrix(Lmax, data);
  std::vector<Series> tau(Lmax + 1);
  for (int l = 0; l <= Lmax; ++l) tau[l] = normalize_tau(census_T(g, {l}, mmax, sp, A), {l}, data);
  // the quasi-polynomial at 0 differs from T by the chi term
  tau[0] = tau[0] + chi_term(g, n, euler_characteristic(g, n));

  GenusTwoCheck out;
  for (int grade = chi; grade <= chi + 1; ++grade) {
    GenusTwoCheck::Order o;
    o.grade = grade;
    o.qp = QuasiPolynomial(1);
    o.consistent = true;
    for (int parity = 0; parity < 2; ++parity) {
      std::vector<int> ls;
      for (int l = parity; l <= Lmax; l += 2)
        if (tau[l].order2() >= 2 * grade) ls.push_back(l);
      if (ls.empty()) continue;
      const int basis = std::min<int>(3 * g - 3 + n + 1, int(ls.size()));
      SampleSet fit;
      for (int i = 0; i < basis; ++i) fit[{ls[i]}] = tau[ls[i]].truncated(2 * grade);
      QuasiPolynomial q = fit_quasipolynomial(fit, 1, basis - 1);
      for (auto& [odd, p] : q.classes()) o.qp.set_class(odd, p);
      for (std::size_t i = basis; i < ls.size(); ++i) {
        ++o.held_out;
        if (!(q.eval({ls[i]}) == tau[ls[i]].truncated(2 * grade))) o.consistent = false;
      }
      o.lengths.insert(o.lengths.end(), ls.begin(), ls.end());
    }
    std::sort(o.lengths.begin(), o.lengths.end());
    out.orders.push_back(std::move(o));
  }
  return out;
}

}  // namespace tightmaps
