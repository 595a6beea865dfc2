#include <random>

#include <doctest.h>

#include "oracle.hpp"
#include "tightmaps/closed_forms.hpp"
#include "tightmaps/poly.hpp"
#include "tightmaps/insertion.hpp"
#include "tightmaps/sampling.hpp"

using namespace tightmaps;
using oracle::q;

namespace {

DiskData disk(std::vector<int> faces, int N, int k) { return derivatives(solve_RS(WeightSpec::make(faces, N)), k); }

Series tpow(int p) { return shift_t(Series::constant(1), 2 * p); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Parse;
}

}  // namespace

TEST_CASE("exact recovery of a synthetic quasi-polynomial") {
  // per class: a + b (x1 + x2) + c x1 x2 + d (x1^2 + x2^2), x = l^2
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> d(-7, 7);
  std::map<std::vector<int>, std::array<Rational, 4>> coef;
  for (auto odd : {std::vector<int>{}, {0}, {1}, {0, 1}}) coef[odd] = {q(d(rng), 3), d(rng), d(rng), q(d(rng), 2)};
  coef[{1}] = coef[{0}];
  auto value = [&](int a, int b) {
    auto& c = coef[QuasiPolynomial::odd_positions({a, b})];
    Rational x1 = a * a, x2 = b * b;
    return Series::constant(c[0] + c[1] * (x1 + x2) + c[2] * x1 * x2 + c[3] * (x1 * x1 + x2 * x2), 8);
  };
  SampleSet all;
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) all[{a, b}] = value(a, b);
  SampleSet fit = select_independent(all, 2, 2);
  CHECK(fit.size() < all.size());
  QuasiPolynomial qp = fit_quasipolynomial(fit, 2, 2);
  for (auto& [l, v] : all) CHECK(qp.eval(l) == v);
  CHECK(qp.is_symmetric());
  CHECK(qp.total_degree() == 2);
  CHECK(QuasiPolynomial::odd_positions({3, 2, 5}) == QuasiPolynomial::OddSet{0, 2});

  SampleSet few{{{0, 0}, value(0, 0)}, {{2, 0}, value(2, 0)}};
  CHECK(code_of([&] { fit_quasipolynomial(few, 2, 2); }) == ErrorCode::InsufficientSamples);
}

TEST_CASE("normalised n = 4 bipartite values") {
  DiskData b = disk({2, 4, 6}, 7, 4);
  const Series &R = b.R(), &R1 = b.R_deriv(1), &R2 = b.R_deriv(2);
  Series Ri = invert(R);
  for (auto& l : multisets(4, 0, 2)) {
    if (l == Lengths(4, 0)) continue;
    Lengths ev;
    int m2 = 0;
    for (int x : l) ev.push_back(2 * x), m2 += x * x;
    Series tau = normalize_tau(tgen(ev, b), ev, b);
    CHECK(tau == (m2 - 1) * R1 * R1 * Ri * Ri + R2 * Ri);
  }
}

TEST_CASE("even-length fits with bipartite weights") {
  DiskData b = disk({2, 4, 6, 8}, 8, 4);
  TrumpetMatrix B = trumpet_matrix(8, b);
  const Series &R = b.R(), &R1 = b.R_deriv(1), &R2 = b.R_deriv(2);
  Series Ri = invert(R);

  // (0,4): fit on part of the even grid, predict the rest
  SampleSet s4;
  for (auto& l : multisets(4, 0, 3)) {
    if (l == Lengths(4, 0)) continue;
    Lengths ev;
    for (int x : l) ev.push_back(2 * x);
    s4[ev] = normalize_tau(build_T(0, ev, b, B), ev, b);
  }
  SampleSet fit4 = select_independent(s4, 4, 1);
  CHECK(fit4.size() < s4.size());
  QuasiPolynomial q4 = fit_quasipolynomial(fit4, 4, 1);
  for (auto& [l, v] : s4) CHECK(q4.eval(l) == v);
  CHECK(q4.eval({2, 2, 0, 0}) == (2 - 1) * R1 * R1 * Ri * Ri + R2 * Ri);
  // all-zero tuple: T_0000 = qp(0) - chi(M_{0,4}) t^-2
  CHECK(build_T(0, {0, 0, 0, 0}, b, B) == q4.eval({0, 0, 0, 0}) + tpow(-2));

  // (1,1)
  SampleSet s1;
  for (int m = 1; m <= 4; ++m) s1[{2 * m}] = normalize_tau(build_T(1, {2 * m}, b, B), {2 * m}, b);
  QuasiPolynomial q1 = fit_quasipolynomial(SampleSet(s1.begin(), std::next(s1.begin(), 2)), 1, 1);
  for (auto& [l, v] : s1) CHECK(q1.eval(l) == v);
  for (int m = 0; m <= 4; ++m) {
    Series expect = q(1, 12) * ((m * m - 1) * R1 * Ri + R2 * invert(R1));
    Series got = q1.eval({2 * m});
    CHECK(got == expect.truncated(got.order2()));
  }
  Series chi_term = q(1, 12) * tpow(-1);
  CHECK(build_T(1, {0}, b, B) == q1.eval({0}) + chi_term);
}

TEST_CASE("general weights (0,3)") {
  DiskData g = disk({1, 2, 3, 4}, 8, 3);
  QuasiFit f = quasipoly_fit(0, 3, 4, g, trumpet_matrix(4, g));
  CHECK(f.ok());
  CHECK(f.symmetric);
  CHECK(f.degree_bound == 0);
  CHECK(f.coefficient_order2 > 2 * (2 - 3));
  auto j = f.to_json();
  CHECK(j.contains("coefficient_order"));
}

TEST_CASE("refusals") {
  DiskData g = disk({1, 2, 3}, 6, 3);
  TrumpetMatrix A = trumpet_matrix(3, g);
  CHECK(code_of([&] { quasipoly_fit(0, 2, 3, g, A); }) == ErrorCode::NotQuasiPolynomial);
  CHECK(code_of([&] { quasipoly_fit(0, 1, 3, g, A); }) == ErrorCode::UnsupportedCase);
  CHECK(code_of([&] { quasipoly_fit(2, 1, 3, g, A); }) == ErrorCode::UnsupportedGenus);
}

TEST_CASE("genus two spot check") {
  GenusTwoCheck c = genus2_spot_check(5, WeightSpec::make({1, 2, 3, 4}, 2));
  CHECK(c.orders.size() == 2);
  CHECK(c.ok());
  CHECK(c.orders[0].grade == -3);
  CHECK(c.orders[0].held_out > 0);
  // leading grade at l = 8: 21/8 t^-3
  CHECK(c.orders[0].qp.eval({8}).coefficient(Monomial::t_power(-6)) == q(21, 8));
  CHECK(c.orders[0].qp.eval({0}).coefficient(Monomial::t_power(-6)) == q(1, 120));
}
