#include <doctest.h>

#include "oracle.hpp"
#include "tightmaps/closed_forms.hpp"
#include "tightmaps/moments.hpp"

using namespace tightmaps;
using oracle::q;

namespace {

DiskData disk(std::vector<int> faces, int N, int k) { return derivatives(solve_RS(WeightSpec::make(faces, N)), k); }

}  // namespace

TEST_CASE("u_k by hand") {
  DiskData d = disk({3}, 6, 1);
  MomentData md = compute_uk(d, 3);
  CHECK(md.u[0].empty());  // S - t3(S^2 + 2R) = t1 = 0
  CHECK(md.u[2] == -1 * Series::face(3) * d.R());
  CHECK(md.u[3].empty());
  DiskData b = disk({4}, 6, 1);
  MomentData mb = compute_uk(b, 3);
  CHECK(mb.u[3] == -1 * Series::face(4) * b.R_half_power(3));
}

TEST_CASE("Z system by hand") {
  DiskData d2 = disk({2}, 6, 1);
  ZSystem z2 = z_system(d2);
  CHECK(z2.eval(0, d2.R(), d2.S(), d2) == Series::t().truncated(d2.R().order2()));
  Series r = Series::face(7);  // stand-in variables
  DiskData d3 = disk({3}, 6, 1);
  ZSystem z3 = z_system(d3);
  Series s = Series::t();
  Series expect = s - Series::face(3) * (2 * r + s * s);
  CHECK(z3.eval(1, r, s, d3) == expect);
  CHECK(z3.eval(1, d3.R(), d3.S(), d3).empty());
}

TEST_CASE("Q_h polynomials") {
  for (int h = 1; h <= 5; ++h) {
    auto [q0, q1] = qh_polynomials(h);
    CHECK(q0.eval(Rational(1)) == 0);
    CHECK(q0.degree() == h + 1);
    CHECK(q1.degree() == h + 1);
  }
  // brute-force left side for h = 1
  for (int j = 1; j <= 12; ++j) {
    int eps = j % 2;
    Rational lhs = 0;
    for (int k = 0; k < j; ++k)
      if ((k + eps) % 2 == 1) lhs += binomial(k + 1, 3) * binomial(j - 1, (j - 1 + k) / 2);
    auto [l, r] = qh_identity_sides(1, j);
    CHECK(l == lhs);
    CHECK(r == lhs);
  }
  for (int h = 2; h <= 4; ++h)
    for (int j = 1; j <= 12; ++j) {
      auto [l, r] = qh_identity_sides(h, j);
      CHECK(l == r);
    }
}

TEST_CASE("moments two ways") {
  for (auto faces : std::vector<std::vector<int>>{{4}, {3, 4}}) {
    DiskData d = disk(faces, 5, 1);
    ZSystem z = z_system(d);
    MomentData md = moments(compute_uk(d, d.spec().max_face()), d, 2);
    for (int h = 1; h <= 2; ++h) {
      CHECK(moment_via_operator(h, 1, z, d) == md.Mbar_plus[h]);
      CHECK(moment_via_operator(h, -1, z, d) == md.Mbar_minus[h]);
    }
  }
}

TEST_CASE("genus one free energy from moments") {
  for (auto faces : std::vector<std::vector<int>>{{4}, {3}, {2, 4}, {1, 2, 3}}) {
    DiskData d = disk(faces, 6, 2);
    MomentData md = moments(compute_uk(d, d.spec().max_face()), d, 1);
    CHECK(genus1_from_moments(md, d) == genus1_F(d));
  }
  CHECK(jacobian_check(disk({1, 2, 3}, 5, 2)).ok());
}

TEST_CASE("t1 derivatives") {
  DiskData d = disk({1, 2, 3}, 6, 3);
  const Series &R = d.R(), &S1 = d.S_deriv(1), &R2 = d.R_deriv(2);
  CHECK(derive_face(R, 1) == R * S1);
  CHECK(derive_face(d.S(), 1) == d.R_deriv(1));
  CHECK(derive_face(derive_face(R, 1), 1) == R * S1 * S1 + R * R2);
  CHECK(pab_polynomials(0, 0).total_degree() == 0);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 3; ++b) CHECK(pab_homogeneous(pab_polynomials(a, b), std::max(a + b, 1), a + b));
}

TEST_CASE("planted trees") {
  // Schroeder's fourth problem
  const int count[] = {0, 1, 1, 4, 26};
  for (int k = 1; k <= 4; ++k) CHECK(int(planted_trees(k).size()) == count[k]);
}

TEST_CASE("tree formula in one dimension") {
  // f(x) = x - x^2, inverse sum_n Catalan(n-1) y^n
  InverseSystem<Rational> sys;
  sys.dim = 1;
  sys.jinv = [](int, int) { return Rational(1); };
  sys.deriv = [](int, const std::vector<int>& idx) { return idx.size() == 2 ? Rational(-2) : Rational(0); };
  const long expect[] = {0, 1, 2, 12, 120};
  for (int k = 1; k <= 4; ++k) CHECK(inverse_tree_differential(sys, {k}, 0) == expect[k]);
}
