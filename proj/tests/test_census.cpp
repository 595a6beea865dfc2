#include <algorithm>
#include <numeric>

#include <doctest.h>

#include "oracle.hpp"
#include "tightmaps/census.hpp"
#include "tightmaps/closed_forms.hpp"
#include "tightmaps/poly.hpp"

using namespace tightmaps;
using oracle::q;

namespace {

// genus histogram by plain graph search, no shared code with the kernel
std::map<int, std::uint64_t> naive_genus_counts(int m) {
  std::map<int, std::uint64_t> out;
  if (m == 0) return {{0, 1}};
  int n = 2 * m;
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 0);
  do {
    std::vector<int> seen(n, 0), stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int d = stack.back();
      stack.pop_back();
      for (int e : {s[d], d ^ 1, int(std::find(s.begin(), s.end(), d) - s.begin())})
        if (!seen[e]) seen[e] = 1, ++reached, stack.push_back(e);
    }
    if (reached != n) continue;
    auto cycles = [&](auto next) {
      std::vector<int> vis(n, 0);
      int c = 0;
      for (int d = 0; d < n; ++d) {
        if (vis[d]) continue;
        ++c;
        for (int e = d; !vis[e]; e = next(e)) vis[e] = 1;
      }
      return c;
    };
    int V = cycles([&](int d) { return s[d]; });
    int F = cycles([&](int d) { return s[d ^ 1]; });
    ++out[(2 - (V - m + F)) / 2];
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

std::uint64_t labelling(int m) {  // 2^{m-1} (m-1)!
  std::uint64_t r = 1;
  for (int i = 1; i < m; ++i) r *= 2 * i;
  return r;
}

}  // namespace

TEST_CASE("transitive counts") {
  const std::uint64_t expect[] = {1, 2, 20, 592, 33888};
  for (int m = 0; m <= 4; ++m) CHECK(transitive_count_serial(m) == expect[m]);
  // rooted maps of all genera: 1, 2, 10, 74, 706
  const std::uint64_t rooted[] = {1, 2, 10, 74, 706};
  for (int m = 1; m <= 4; ++m) CHECK(transitive_count_serial(m) == rooted[m] * labelling(m));
}

TEST_CASE("genus split against an independent enumeration") {
  for (int m = 0; m <= 4; ++m) {
    std::map<int, std::uint64_t> mine;
    for (auto& [k, c] : census_histogram_serial(m)) mine[k.genus] += c;
    CHECK(mine == naive_genus_counts(m));
  }
  // planar rooted maps: 2 * 3^m (2m)! / (m! (m+2)!)
  for (int m = 1; m <= 5; ++m) {
    std::uint64_t planar = 0;
    for (auto& [k, c] : census_histogram(m))
      if (k.genus == 0) planar += c;
    Rational tutte = 2 * tightmaps::factorial(2 * m) / (tightmaps::factorial(m) * tightmaps::factorial(m + 2));
    for (int i = 0; i < m; ++i) tutte *= 3;
    CHECK(Rational(mpz_class(std::to_string(planar))) == tutte * Rational(mpz_class(std::to_string(labelling(m)))));
  }
}

TEST_CASE("serial and parallel kernels agree") {
  for (int m = 0; m <= 5; ++m) {
    auto a = census_histogram_serial(m);
    CHECK(census_histogram_parallel(m, 1) == a);
    CHECK(census_histogram_parallel(m, 3) == a);
  }
}

TEST_CASE("histogram invariants") {
  for (int m = 1; m <= 5; ++m)
    for (auto& [k, c] : census_histogram(m)) {
      int F = 0, darts = 0;
      for (int d = 1; d < int(k.face_count.size()); ++d) F += k.face_count[d], darts += d * k.face_count[d];
      CHECK(darts == 2 * m);
      CHECK(k.vertices - m + F == 2 - 2 * k.genus);
      CHECK(c > 0);
    }
  CHECK_THROWS_AS(census_histogram(kCensusMaxEdges + 1), Error);
}

TEST_CASE("dart structures") {
  DartStructure loop{{1, 0}};  // one vertex, one loop: two faces of degree 1
  CHECK(loop.genus() == 0);
  CHECK(loop.faces().size() == 2);
  DartStructure edge{{0, 1}};  // two vertices, one face of degree 2
  CHECK(edge.faces().size() == 1);
  CHECK(edge.vertex_of() == std::vector<int>{0, 1});
  DartStructure torus{{2, 3, 1, 0}};  // (0 2 1 3): V=1, E=2, F=1
  CHECK(torus.transitive());
  CHECK(torus.faces().size() == 1);
  CHECK(torus.genus() == 1);
  DartStructure split{{0, 1, 2, 3}};
  CHECK(!split.transitive());
}

TEST_CASE("census generating functions against the disk") {
  const int mmax = 5;
  WeightSpec spec = WeightSpec::make({1, 2, 3, 4}, 6);
  DiskData d = derivatives(solve_RS(spec), 3);
  TrumpetMatrix A = trumpet_matrix(4, d);
  // F_{1,1} = R, lowest term the one-edge loop
  Series f11 = census_F(0, {1, 1}, 0, mmax, spec);
  CHECK(f11.coefficient(Monomial::t_power(2)) == 1);
  CHECK(f11 == d.R());
  for (int l = 1; l <= 3; ++l) CHECK(census_T(0, {l, l}, mmax, spec, A) == pow(d.R(), l) * frac(1, l));
  CHECK(census_T(0, {1, 1, 1}, mmax, spec, A) == d.R() * d.S_deriv(1));
  CHECK(census_T(0, {2, 2, 0}, mmax, spec, A) == genus0_closed({2, 2, 0}, d));
}

TEST_CASE("census symmetric in the boundary order") {
  WeightSpec spec = WeightSpec::make({1, 2, 3}, 6);
  CHECK(census_F(0, {2, 1, 1}, 0, 5, spec) == census_F(0, {1, 2, 1}, 0, 5, spec));
  CHECK(census_F(1, {2, 1}, 0, 5, spec) == census_F(1, {1, 2}, 0, 5, spec));
}

TEST_CASE("census against Collet-Fusy on even faces") {
  WeightSpec spec = WeightSpec::make({2, 4, 6}, 6);
  DiskData d = derivatives(solve_RS(spec), 4);
  for (auto L : std::vector<std::vector<int>>{{2, 2}, {4, 2}, {2, 2, 2}}) {
    CensusResult r = census_F_detailed(0, L, 0, 5, spec);
    CHECK(r.value == collet_fusy(L, 0, d));
    CHECK(r.raw.order2() == r.value.order2());
  }
}

TEST_CASE("census refusals") {
  WeightSpec spec = WeightSpec::make({1, 2}, 4);
  CHECK_THROWS_AS(census_F(0, {0}, 0, 3, spec), Error);
  CHECK_THROWS_AS(census_F(-1, {1}, 0, 3, spec), Error);
  CHECK_THROWS_AS(census_F(0, {1}, 0, 7, spec), Error);
}
