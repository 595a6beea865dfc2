#include <doctest.h>

#include "oracle.hpp"
#include "tightmaps/disk.hpp"

using namespace tightmaps;
using oracle::q;

namespace {

Series face(int d) { return Series::face(d); }

// hand-expanded fixed point for faces {3, 4}
std::pair<Series, Series> rs_34(int N) {
  int o = 2 * N;
  Series t = Series::t(o), R = t, S(o);
  for (int it = 0; it <= N + 1; ++it) {
    Series S2 = S * S;
    Series nS = face(3) * (S2 + 2 * R) + face(4) * (S2 * S + 6 * R * S);
    Series nR = t + face(3) * (2 * S * R) + face(4) * (3 * S2 * R + 3 * R * R);
    R = nR.truncated(o), S = nS.truncated(o);
  }
  return {R, S};
}

}  // namespace

TEST_CASE("quartic R against the Catalan recurrence") {
  const int N = 8;
  oracle::Vec c(N);
  c[0] = 1;  // r_k = 3 sum r_i r_{k-1-i}
  for (int k = 1; k < N; ++k)
    for (int i = 0; i < k; ++i) c[k] += 3 * c[i] * c[k - 1 - i];
  CHECK(c[1] == 3);
  CHECK(c[2] == 18);
  CHECK(c[3] == 135);
  DiskData d = solve_RS(WeightSpec::make({4}, N));
  CHECK(d.R() == oracle::weighted(c, 4, 2 * N));
  CHECK(d.S().empty());
}

TEST_CASE("R = t + 3 t4 t^2 + 18 t4^2 t^3 + 135 t4^3 t^4 at N = 4") {
  DiskData d = solve_RS(WeightSpec::make({4}, 4));
  Series t = Series::t();
  Series expect = t + 3 * face(4) * pow(t, 2) + 18 * pow(face(4), 2) * pow(t, 3) + 135 * pow(face(4), 3) * pow(t, 4);
  CHECK(d.R() == expect.truncated(d.R().order2()));
  DiskData dd = derivatives(solve_RS(WeightSpec::make({4}, 3)), 2);
  Series R1 = Series::constant(1) + 6 * face(4) * t + 54 * pow(face(4), 2) * pow(t, 2);
  CHECK(dd.R_deriv(1) == R1.truncated(dd.R_deriv(1).order2()));
}

TEST_CASE("mixed faces against the hand-expanded fixed point") {
  const int N = 7;
  auto [R, S] = rs_34(N);
  DiskData d = solve_RS(WeightSpec::make({3, 4}, N));
  CHECK(d.R() == R);
  CHECK(d.S() == S);
  auto [rr, rs] = disk_residuals(d);
  CHECK(rr.empty());
  CHECK(rs.empty());
}

TEST_CASE("degenerate weight sets") {
  DiskData d1 = derivatives(solve_RS(WeightSpec::make({1}, 5)), 2);
  CHECK(d1.S() == face(1).truncated(d1.S().order2()));
  CHECK(d1.R() == Series::t().truncated(d1.R().order2()));
  CHECK(d1.S_deriv(1).empty());

  // R = t / (1 - t2), dR/dt2 = t / (1 - t2)^2
  const int N = 6;
  DiskData d2 = solve_RS(WeightSpec::make({2}, N));
  for (int k = 0; k < N; ++k) CHECK(d2.R().coefficient(Monomial::t_power(2).with_face(2, k)) == 1);
  Series dR = derive_face(d2.R(), 2);
  for (int k = 0; k + 1 < N; ++k) CHECK(dR.coefficient(Monomial::t_power(2).with_face(2, k)) == k + 1);

  for (auto& faces : std::vector<std::vector<int>>{{2}, {1}, {3}, {1, 2, 3, 4}}) {
    DiskData d = solve_RS(WeightSpec::make(faces, 5));
    CHECK(d.R().coefficient(Monomial::t_power(2)) == 1);
  }
}

TEST_CASE("bipartite shortcut agrees with the general solver") {
  for (auto& faces : std::vector<std::vector<int>>{{4}, {2, 4}, {2, 4, 6}}) {
    WeightSpec spec = WeightSpec::make(faces, 6);
    CHECK(spec.bipartite());
    DiskData a = solve_RS(spec), b = solve_RS_general(spec);
    CHECK(a.R() == b.R());
    CHECK(b.S().empty());
  }
}

TEST_CASE("trumpet matrix entries") {
  DiskData d = solve_RS(WeightSpec::make({1, 2, 3, 4}, 5));
  TrumpetMatrix A = trumpet_matrix(6, d);
  const Series &R = d.R(), &S = d.S();
  for (int l = 1; l <= 6; ++l) CHECK(A.a(l, l) == Series::constant(1));
  CHECK(A.a(2, 1) == 2 * S);
  CHECK(A.a(3, 2) == 3 * S);
  CHECK(A.a(3, 1) == 3 * S * S + 3 * R);
  CHECK(A.a(1, 3).empty());
  // unitriangular inverse; (A^-1)_{3,1} = -A31 + A32 A21
  CHECK(A.inv(3, 1) == 3 * S * S - 3 * R);
  for (int L = 1; L <= 6; ++L)
    for (int l = 1; l <= L; ++l) {
      Series s;
      for (int k = l; k <= L; ++k) s += A.a(L, k) * A.inv(k, l);
      CHECK(s == Series::constant(L == l ? 1 : 0, s.order2()));
    }
  // A_{L,l} is the Laurent coefficient of (z + S + R/z)^L
  for (int L = 1; L <= 5; ++L)
    for (int l = 1; l <= L; ++l) CHECK(A.a(L, l) == laurent_coefficient(L, l, R, S));

  DiskData b = solve_RS(WeightSpec::make({2, 4}, 5));
  TrumpetMatrix B = trumpet_matrix(4, b);
  CHECK(B.a(4, 2) == 4 * b.R());
  CHECK(B.a(4, 1).empty());
}

TEST_CASE("Zhukovsky parametrisation") {
  DiskData d = solve_RS(WeightSpec::make({3, 4}, 5));
  ZhukovskyCurve z = zhukovsky(d);
  CHECK(z.alpha == d.S());
  CHECK(z.gamma * z.gamma == d.R().truncated((z.gamma * z.gamma).order2()));
}

TEST_CASE("disk json") {
  DiskData d = derivatives(solve_RS(WeightSpec::make({4}, 4)), 1);
  auto j = disk_json(d);
  CHECK(Series::from_json(j["R"]) == d.R());
  CHECK_THROWS_AS(WeightSpec::make({0}, 4), Error);
}
