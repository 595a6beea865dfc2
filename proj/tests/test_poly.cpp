#include <random>

#include <doctest.h>

#include "oracle.hpp"
#include "tightmaps/disk.hpp"
#include "tightmaps/poly.hpp"

using namespace tightmaps;
using oracle::q;

namespace {

// n!/k! [u^n] (sum_j x_j u^j / j!)^k
Rational bell_reference(int n, int k, const std::vector<Rational>& x) {
  oracle::Vec base(n + 1, 0), pw(n + 1, 0);
  Rational f = 1;
  for (int j = 1; j <= n; ++j) {
    f *= j;
    if (j - 1 < int(x.size())) base[j] = x[j - 1] / f;
  }
  pw[0] = 1;
  for (int i = 0; i < k; ++i) pw = oracle::mul(pw, base);
  return factorial(n) / factorial(k) * pw[n];
}

Rational sym_power_sum(const std::vector<Rational>& l, int p) {
  Rational s = 0;
  for (auto& x : l) {
    Rational y = 1;
    for (int i = 0; i < p; ++i) y *= x;
    s += y;
  }
  return s;
}

}  // namespace

TEST_CASE("Bell polynomials") {
  // B_{4,2} = 4 r1 r3 + 3 r2^2, B_{3,3} = r1^3
  MultiPoly b42 = bell(4, 2);
  CHECK(b42.coefficient({1, 0, 1}) == 4);
  CHECK(b42.coefficient({0, 2, 0}) == 3);
  CHECK(b42.total_degree() == 2);
  CHECK(bell(3, 3).coefficient({3}) == 1);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int n = 1; n <= 7; ++n)
    for (int k = 1; k <= n; ++k) {
      std::vector<Rational> x;
      for (int i = 0; i < n - k + 1; ++i) x.push_back(q(d(rng), 1 + (i % 3)));
      CHECK(eval(bell(n, k), x) == bell_reference(n, k, x));
    }
  CHECK_THROWS_AS(bell(2, 3), Error);
}

TEST_CASE("b_{n,k} with all weights zero") {
  DiskData d = derivatives(solve_RS(WeightSpec::make({}, 6)), 5);
  std::vector<Series> r;
  for (int i = 1; i <= 5; ++i) r.push_back(d.R_deriv(i));
  for (int n = 1; n <= 5; ++n)
    for (int k = 1; k <= n; ++k) {
      Series expect = n == k ? shift_t(Series::constant(1), -2 * k) : Series();
      CHECK(bnk(n, k, r, d.R()) == expect);
    }
}

TEST_CASE("b_{2,1} for the quartic R") {
  DiskData d = derivatives(solve_RS(WeightSpec::make({4}, 8)), 3);
  std::vector<Series> r{d.R_deriv(1), d.R_deriv(2)};
  CHECK(bnk(2, 1, r, d.R()) == divide(d.R_deriv(2), d.R()));
  Series R2 = d.R_deriv(2);
  CHECK(R2.coefficient(Monomial::face(4, 1)) == 6);
  CHECK(R2.coefficient(Monomial::t_power(2).with_face(4, 2)) == 108);
}

TEST_CASE("p_k one variable") {
  CHECK(pk_uni(0, PFamily::P) == UniPoly::constant(1));
  CHECK(pk_uni(0, PFamily::Q) == UniPoly::constant(1));
  CHECK(pk_uni(1, PFamily::P) == UniPoly({-1, 1}));
  CHECK(pk_uni(1, PFamily::PTilde) == UniPoly({q(-1, 4), 1}));
  for (int l = 0; l <= 8; ++l) CHECK(pk_value(1, {Rational(l)}) == l * l - 1);
}

TEST_CASE("p_1, p_2, p_3 in several variables") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(0, 7);
  for (int n = 1; n <= 4; ++n)
    for (int rep = 0; rep < 8; ++rep) {
      std::vector<Rational> l(n), x(n);
      for (int i = 0; i < n; ++i) l[i] = d(rng), x[i] = l[i] * l[i];
      Rational s1 = sym_power_sum(x, 1), s2 = sym_power_sum(x, 2), s3 = sym_power_sum(x, 3);
      Rational e2 = 0, e3 = 0, m42 = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i < j) e2 += x[i] * x[j];
          if (i != j) m42 += x[i] * x[i] * x[j];
          for (int h = 0; h < n; ++h)
            if (i < j && j < h) e3 += x[i] * x[j] * x[h];
        }
      CHECK(pk_value(1, l) == s1 - 1);
      CHECK(pk_value(2, l) == s2 / 4 + e2 - q(5, 4) * s1 + 1);
      CHECK(pk_value(3, l) == s3 / 36 + m42 / 4 + e3 - q(7, 18) * s2 - q(3, 2) * e2 + q(49, 36) * s1 - 1);
    }
}

TEST_CASE("p_k properties") {
  for (int k = 0; k <= 6; ++k)
    for (int n = 1; n <= 3; ++n) {
      CHECK(pk_value(k, std::vector<Rational>(n, 0)) == (k % 2 ? -1 : 1));
      CHECK(is_symmetric(pk_multi(k, n, PFamily::P)));
      CHECK(pk_multi(k, n, PFamily::P).total_degree() == k);
    }
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> d(0, 9);
  for (int k = 1; k <= 4; ++k)
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<Rational> l{Rational(d(rng)), Rational(d(rng))};
      auto l0 = l;
      l0.push_back(0);
      CHECK(pk_value(k, l0) == pk_value(k, l));
    }
}

TEST_CASE("string equation") {
  CHECK(pk_value(1, {1, 1, 1}) == 2);
  for (int k = 0; k <= 3; ++k)
    for (int n = 1; n <= 4; ++n) CHECK(string_equation_check(k, n, 5));
}

TEST_CASE("Bernoulli and Faulhaber") {
  auto B = bernoulli_numbers(8);
  CHECK(B[0] == 1);
  CHECK(B[1] == q(1, 2));
  CHECK(B[2] == q(1, 6));
  CHECK(B[3] == 0);
  CHECK(B[4] == q(-1, 30));
  CHECK(B[6] == q(1, 42));
  CHECK(B[8] == q(-1, 30));
  for (int p = 0; p <= 7; ++p) {
    UniPoly S = faulhaber(p);
    Rational direct = 0;
    for (int N = 0; N <= 12; ++N) {
      if (N) {
        Rational m = 1;
        for (int i = 0; i < p; ++i) m *= N;
        direct += m;
      }
      CHECK(S.eval(Rational(N)) == direct);
    }
  }
}

TEST_CASE("discrete integration") {
  // P = 1: sum of even m < l plus l/2 is l^2/4; sum of odd m < l is l^2/4
  UniPoly one = UniPoly::constant(1);
  UniPoly a = discrete_sum(one, Parity::Even, true, Parity::Even);
  UniPoly b = discrete_sum(one, Parity::Odd, false, Parity::Even);
  for (int l = 0; l <= 20; l += 2) {
    CHECK(a.eval(Rational(l * l)) == q(l * l, 4));
    CHECK(b.eval(Rational(l * l)) == q(l * l, 4));
  }
  for (int deg = 0; deg <= 3; ++deg) {
    std::vector<Rational> c(deg + 1);
    for (int i = 0; i <= deg; ++i) c[i] = q(i + 1, 2 + i);
    UniPoly P(c);
    for (auto mp : {Parity::Even, Parity::Odd})
      for (bool bt : {false, true})
        for (auto lp : {Parity::Even, Parity::Odd}) {
          UniPoly s;
          try {
            s = discrete_sum(P, mp, bt, lp);
          } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParityMismatch);
            continue;
          }
          for (int l = lp == Parity::Even ? 0 : 1; l <= 30; l += 2) {
            // independent direct sum
            Rational direct = 0;
            for (int m = 1; m < l; ++m)
              if ((m % 2 == 0) == (mp == Parity::Even)) direct += m * P.eval(Rational(m * m));
            if (bt) direct += q(l, 2) * P.eval(Rational(l * l));
            CHECK(s.eval(Rational(l * l)) == direct);
            CHECK(discrete_sum_direct(P, mp, bt, l) == direct);
          }
        }
  }
}

TEST_CASE("Euler characteristics of moduli spaces") {
  CHECK(euler_characteristic(0, 3) == 1);
  CHECK(euler_characteristic(0, 4) == -1);
  CHECK(euler_characteristic(1, 1) == q(-1, 12));
  CHECK(euler_characteristic(2, 1) == q(1, 120));
  // chi(M_{g,n+1}) = (2 - 2g - n) chi(M_{g,n})
  for (int g = 0; g <= 3; ++g)
    for (int n = (g == 0 ? 3 : 1); n <= 6; ++n)
      CHECK(euler_characteristic(g, n + 1) == (2 - 2 * g - n) * euler_characteristic(g, n));
  CHECK_THROWS_AS(euler_characteristic(0, 2), Error);
  CHECK_THROWS_AS(euler_characteristic(1, 0), Error);
}

TEST_CASE("combinatorial helpers") {
  CHECK(factorial(6) == 720);
  CHECK(binomial(7, 3) == 35);
  CHECK(binomial(3, 5) == 0);
  CHECK(multinomial({2, 1, 1}) == 12);
  CHECK(binomial_rational(q(1, 2), 2) == q(-1, 8));
}
