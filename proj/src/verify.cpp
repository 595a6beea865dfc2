#include "tightmaps/verify.hpp"

#include <chrono>

#include "tightmaps/census.hpp"
#include "tightmaps/closed_forms.hpp"
#include "tightmaps/moments.hpp"
#include "tightmaps/poly.hpp"
#include "tightmaps/sampling.hpp"

namespace tightmaps {

namespace {

std::string key_string(const Lengths& l) { return lengths_string(l); }

std::vector<Lengths> even_multisets(int n, int lmax) {
  std::vector<Lengths> out;
  for (auto l : multisets(n, 0, lmax / 2)) {
    for (int& x : l) x *= 2;
    out.push_back(l);
  }
  return out;
}

int odd_count(const Lengths& l) {
  int c = 0;
  for (int x : l) c += x % 2;
  return c;
}

// bipartite closed form for any key with at most two odd lengths
std::optional<Series> tgen_any(const Lengths& key, const DiskData& data) {
  int odd = odd_count(key);
  if (odd % 2) return Series(data.R().order2());
  if (odd == 0) return tgen(key, data);
  if (odd > 2) return std::nullopt;
  Lengths l;
  for (int x : key)
    if (x % 2) l.push_back(x);
  for (int x : key)
    if (x % 2 == 0) l.push_back(x);
  return tgen_quasi(l, data);
}

}  // namespace

// ---- 1

CheckReport criterion_disk(const VerifyOptions&) {
  CheckReport rep;
  for (auto faces : std::vector<std::vector<int>>{{4}, {3}, {3, 4}, {1, 2}}) {
    WeightSpec spec = WeightSpec::make(faces, 8);
    DiskData data = solve_RS(spec);
    auto [e1, e2] = disk_residuals(data);
    rep.expect(e1.empty() && e2.empty(), "residuals vanish for " + spec.to_string());
    if (spec.bipartite()) rep.expect(solve_RS_general(spec).R() == data.R(), "bipartite shortcut agrees for " + spec.to_string());
  }
  DiskData d4 = solve_RS(WeightSpec::make({4}, 8));
  const int expect[] = {1, 3, 18, 135};
  for (int k = 0; k < 4; ++k)
    rep.expect(d4.R().coefficient(Monomial::t_power(2 * (k + 1)) * Monomial::face(4, k)) == expect[k],
               "R coefficient of t^" + std::to_string(k + 1) + " t4^" + std::to_string(k));
  return rep;
}

// ---- 2

CheckReport criterion_census_cf(const VerifyOptions& o) {
  CheckReport rep;
  const std::vector<int> faces{2, 4, 6};
  WeightSpec census_spec = WeightSpec::make(faces, o.mmax + 1);
  DiskData data = derivatives(solve_RS(WeightSpec::make(faces, o.mmax + 2)), 4);
  for (auto L : std::vector<std::vector<int>>{{2}, {2, 2}, {2, 2, 2}, {4, 2}}) {
    Series c = census_F(0, L, 0, o.mmax, census_spec);
    Series cf = collet_fusy(L, 0, data);
    rep.expect(cf.order2() >= c.order2(), "closed form carries the census order for " + key_string(L));
    rep.expect(cf.truncated(c.order2()) == c && !c.empty(), "census equals Collet-Fusy for " + key_string(L));
  }
  return rep;
}

// ---- 3

CheckReport criterion_trumpet(const VerifyOptions& o) {
  CheckReport rep;
  const int Lmax = 4;
  auto roundtrip = [&](const CoefficientTable& F, const TrumpetMatrix& A, const std::string& what) {
    CoefficientTable T = f_to_t(F, A);
    CoefficientTable back = t_to_f(T, A);
    bool ok = true;
    for (auto& [l, e] : F.entries()) ok = ok && back.at(l) == e.value;
    rep.expect(ok, "f_to_t / t_to_f round trip " + what);
    return T;
  };
  {
    WeightSpec spec = WeightSpec::make({1, 2, 3, 4}, o.mmax + 1);
    DiskData data = derivatives(solve_RS(spec), 4);
    TrumpetMatrix A = trumpet_matrix(Lmax, data);
    CoefficientTable T2 = roundtrip(census_F_table(0, 2, 0, Lmax, o.mmax, spec), A, "(0,2)");
    for (auto& [l, e] : T2.entries()) rep.expect(e.value == cylinder(l[0], l[1], data), "cylinder " + key_string(l));
    for (int s = 0; s <= 3; ++s) {
      CoefficientTable T3 = roundtrip(census_F_table(0, 3 - s, s, Lmax, o.mmax, spec), A, "(0,3) s=" + std::to_string(s));
      for (auto& [l, e] : T3.entries()) rep.expect(e.value == pants(l[0], l[1], l[2], data), "pants " + key_string(l));
    }
  }
  {
    WeightSpec spec = WeightSpec::make({2, 4}, o.mmax + 1);
    DiskData data = derivatives(solve_RS(spec), 4);
    TrumpetMatrix A = trumpet_matrix(Lmax, data);
    for (int n = 3; n <= 4; ++n)
      for (int s = 0; s <= 1; ++s) {
        std::string what = "(0," + std::to_string(n) + ") s=" + std::to_string(s);
        CoefficientTable T = roundtrip(census_F_table(0, n - s, s, Lmax, o.mmax, spec), A, what);
        for (auto& [l, e] : T.entries())
          if (auto v = tgen_any(l, data)) rep.expect(e.value == *v, "Tgen " + key_string(l));
      }
  }
  return rep;
}

// ---- 4

CheckReport criterion_recursion(const VerifyOptions& o) {
  CheckReport rep;
  {
    WeightSpec spec = WeightSpec::make({2, 4, 6, 8}, o.order);
    DiskData data = derivatives(solve_RS(spec), 4);
    TrumpetMatrix A = trumpet_matrix(8, data);
    std::map<Lengths, Series> cache;
    auto closed = [&](const Lengths& l) -> const Series& {
      auto it = cache.find(l);
      if (it == cache.end()) it = cache.emplace(l, tgen(l, data)).first;
      return it->second;
    };
    for (int n = 3; n <= 4; ++n) {
      CoefficientTable T(0, n);
      for (auto& l : even_multisets(n, 8)) T.set(l, closed(l), Provenance::ClosedForm);
      auto compare = [&](const CoefficientTable& G, const std::string& what) {
        bool ok = G.entries().size() == T.entries().size();
        for (auto& [l, e] : G.entries()) ok = ok && e.value == closed(l);
        rep.expect(ok, what + " from n = " + std::to_string(n));
      };
      compare(add_boundary_vertex(T, data, A), "bipartite vertex insertion");
      for (int lnew = 2; lnew <= 8; lnew += 2) compare(add_boundary_face(T, lnew, data, A), "bipartite face insertion of " + std::to_string(lnew));
    }
  }
  {
    const int Lmax = 4;
    WeightSpec spec = WeightSpec::make({1, 2, 3, 4}, o.order);
    DiskData data = derivatives(solve_RS(spec), 4);
    TrumpetMatrix A = trumpet_matrix(Lmax, data);
    TableBuilder small(data, A, InsertionPolicy::SmallestLast), large(data, A, InsertionPolicy::LargestLast);
    for (int n = 4; n <= 5; ++n) {
      bool ok = true;
      for (auto& l : multisets(n, 0, n == 4 ? Lmax : 3)) ok = ok && small.build(0, l) == large.build(0, l);
      rep.expect(ok, "general weights: insertion order independence at n = " + std::to_string(n));
    }
    WeightSpec cspec = WeightSpec::make({1, 2, 3, 4}, o.mmax + 1);
    DiskData cdata = solve_RS(cspec);
    TrumpetMatrix cA = trumpet_matrix(3, cdata);
    for (auto& l : multisets(4, 0, 3)) {
      if (l == Lengths{0, 0, 0, 0}) continue;
      rep.expect(census_T(0, l, o.mmax, cspec, cA) == small.build(0, l), "general weights: census " + key_string(l));
    }
  }
  for (int k = 0; k <= 4; ++k)
    for (int n = 1; n <= 5; ++n)
      rep.expect(string_equation_check(k, n, 6), "string equation k=" + std::to_string(k) + " n=" + std::to_string(n));
  return rep;
}

// ---- 5

CheckReport criterion_genus1(const VerifyOptions& o) {
  CheckReport rep;
  for (auto faces : std::vector<std::vector<int>>{{2, 4}, {1, 2, 3}, {3, 4}}) {
    WeightSpec spec = WeightSpec::make(faces, o.order);
    DiskData data = derivatives(solve_RS(spec), 2);
    MomentData md = moments(compute_uk(data, spec.max_face()), data, 1);
    rep.expect(genus1_from_moments(md, data) == genus1_F(data), "moments vs X form for " + spec.to_string());
    if (spec.active(1)) rep.merge(jacobian_check(data));
  }
  WeightSpec spec = WeightSpec::make({2, 4, 6}, o.order);
  DiskData data = derivatives(solve_RS(spec), 4);
  TrumpetMatrix A = trumpet_matrix(6, data);
  for (int l = 0; l <= 3; ++l)
    rep.expect(build_T(1, {2 * l}, data, A) == genus1_T_bipartite(2 * l, data), "build_T(1,[" + std::to_string(2 * l) + "]) vs bipartite closed form");
  return rep;
}

// ---- 6

CheckReport criterion_quasipoly(const VerifyOptions& o) {
  CheckReport rep;
  struct Case {
    int g, n, lmax, order;
  };
  // (0,5) needs lmax 5 for rank and is the slow one
  for (Case c : {Case{0, 3, 4, 8}, Case{0, 4, 4, 8}, Case{0, 5, 5, 6}, Case{1, 1, 6, 8}, Case{1, 2, 5, 8}}) {
    std::vector<int> faces;
    for (int k = 1; k <= c.lmax; ++k) faces.push_back(k);
    WeightSpec spec = WeightSpec::make(faces, c.order);
    DiskData data = derivatives(solve_RS(spec), 3);
    TrumpetMatrix A = trumpet_matrix(c.lmax, data);
    QuasiFit f = quasipoly_fit(c.g, c.n, c.lmax, data, A);
    std::string at = "(" + std::to_string(c.g) + "," + std::to_string(c.n) + ")";
    rep.expect(f.symmetric, at + " symmetric");
    rep.expect(f.degree_ok, at + " degree <= 3g-3+n");
    rep.expect(f.held_out_ok && f.held_out > 0, at + " held-out samples");
    rep.expect(f.all_zero_ok, at + " all-zero identity");
    rep.expect(f.coefficient_order2 > 2 * (2 - 2 * c.g - c.n), at + " fit retains orders above the leading grade");
  }
  {
    WeightSpec spec = WeightSpec::make({1, 2}, 3);
    DiskData data = derivatives(solve_RS(spec), 2);
    TrumpetMatrix A = trumpet_matrix(2, data);
    bool refused = false;
    try {
      quasipoly_fit(0, 2, 2, data, A);
    } catch (const Error& e) {
      refused = e.code() == ErrorCode::NotQuasiPolynomial;
    }
    rep.expect(refused, "(0,2) refused");
  }
  GenusTwoCheck g2 = genus2_spot_check(o.mmax, WeightSpec::make({1, 2, 3, 4}, 1));
  rep.expect(g2.orders.size() == 2, "genus 2: two truncation orders");
  rep.expect(!g2.orders.empty() && g2.orders[0].held_out > 0, "genus 2: leading grade has a held-out length");
  for (auto& ord : g2.orders) rep.expect(ord.consistent, "genus 2 even quasi-polynomial at grade " + std::to_string(ord.grade));
  return rep;
}

// ---- 7

namespace {

struct PolySystem {
  MultiPoly f[2];
};

// g = f^{-1} around 0 as a series in u_0 = t1, u_1 = t2 up to total degree K
std::array<Series, 2> direct_inverse(const PolySystem& s, const Rational Jinv[2][2], int K) {
  const int order2 = 2 * K;
  Series u[2] = {Series::face(1, order2), Series::face(2, order2)};
  Series one = Series::constant(1, order2);
  std::array<Series, 2> x{Series(order2), Series(order2)};
  for (int it = 0; it <= K; ++it) {
    std::vector<Series> xv{x[0], x[1]};
    Series r[2];
    for (int j = 0; j < 2; ++j) r[j] = u[j] - s.f[j].eval(xv, one);
    std::array<Series, 2> nx;
    for (int i = 0; i < 2; ++i) nx[i] = x[i] + Jinv[i][0] * r[0] + Jinv[i][1] * r[1];
    x = nx;
  }
  return x;
}

CheckReport tree_check(const PolySystem& s, const std::string& name) {
  CheckReport rep;
  MultiPoly J[2][2];
  Rational Jv[2][2], Jinv[2][2];
  const std::vector<Rational> zero{0, 0};
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) {
      J[j][i] = s.f[j].derivative(i);
      Jv[j][i] = eval(J[j][i], zero);
    }
  Rational det = Jv[0][0] * Jv[1][1] - Jv[0][1] * Jv[1][0];
  Jinv[0][0] = Jv[1][1] / det, Jinv[0][1] = -Jv[0][1] / det;
  Jinv[1][0] = -Jv[1][0] / det, Jinv[1][1] = Jv[0][0] / det;
  InverseSystem<Rational> sys;
  sys.jinv = [&](int i, int j) { return Jinv[i][j]; };
  sys.deriv = [&](int j, const std::vector<int>& idx) {
    MultiPoly p = s.f[j];
    for (int i : idx) p = p.derivative(i);
    return eval(p, zero);
  };
  const int K = 3;
  auto g = direct_inverse(s, Jinv, K);
  for (int k = 1; k <= K; ++k)
    for (int c0 = 0; c0 <= k; ++c0) {
      int c1 = k - c0;
      Monomial m = Monomial::face(1, c0) * Monomial::face(2, c1);
      for (int eps = 0; eps < 2; ++eps) {
        Rational direct = g[eps].coefficient(m) * factorial(c0) * factorial(c1);
        rep.expect(inverse_tree_differential(sys, {c0, c1}, eps) == direct,
                   name + " tree formula d^(" + std::to_string(c0) + "," + std::to_string(c1) + ") g_" + std::to_string(eps));
      }
    }
  return rep;
}

PolySystem test_system(int which) {
  auto x = [](int i) { return MultiPoly::variable(2, i); };
  auto c = [](long a, long b = 1) { return MultiPoly::constant(2, frac(a, b)); };
  PolySystem s;
  if (which == 0) {
    s.f[0] = c(2) * x(0) + x(1) + x(0) * x(1) + x(0) * x(0) * x(0);
    s.f[1] = x(0) - x(1) + x(1) * x(1) + c(1, 2) * x(0) * x(0) * x(1);
  } else {
    s.f[0] = x(0) + c(3) * x(1) - x(0) * x(0) + c(2, 3) * x(1) * x(1) * x(1);
    s.f[1] = c(-1) * x(0) + c(5, 2) * x(1) + x(0) * x(1) * x(1) - c(4) * x(0) * x(0);
  }
  return s;
}

}  // namespace

CheckReport suite_moments(const VerifyOptions& o) {
  CheckReport rep;
  for (int h = 1; h <= 4; ++h)
    for (int j = 1; j <= 12; ++j) {
      auto [lhs, rhs] = qh_identity_sides(h, j);
      rep.expect(lhs == rhs, "binomial lemma h=" + std::to_string(h) + " j=" + std::to_string(j));
    }
  for (auto faces : std::vector<std::vector<int>>{{1, 2, 3, 4}, {2, 4, 6}}) {
    WeightSpec spec = WeightSpec::make(faces, o.order);
    DiskData data = solve_RS(spec);
    ZSystem z = z_system(data);
    MomentData md = moments(compute_uk(data, spec.max_face()), data, 3);
    for (int h = 1; h <= 3; ++h) {
      rep.expect(moment_via_operator(h, 1, z, data) == md.Mbar_plus[h], "moment + h=" + std::to_string(h) + " " + spec.to_string());
      rep.expect(moment_via_operator(h, -1, z, data) == md.Mbar_minus[h], "moment - h=" + std::to_string(h) + " " + spec.to_string());
    }
  }
  {
    WeightSpec spec = WeightSpec::make({1, 2, 3}, o.order);
    DiskData data = derivatives(solve_RS(spec), 3);
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + b <= 3; ++b) {
        Series R = data.R(), S = data.S();
        for (int i = 0; i < a; ++i) R = derive_t(R), S = derive_t(S);
        for (int i = 0; i < b; ++i) R = derive_face(R, 1), S = derive_face(S, 1);
        const int K = std::max(a + b, 1);
        Series pR = data.R_half_power(b + 2) * pab_eval(pab_polynomials(a, b), K, data);
        rep.expect(R == pR, "R derivative (" + std::to_string(a) + "," + std::to_string(b) + ")");
        if (b >= 1) {
          Series pS = data.R_half_power(b + 1) * pab_eval(pab_polynomials(a + 1, b - 1), K, data);
          rep.expect(S == pS, "S derivative (" + std::to_string(a) + "," + std::to_string(b) + ")");
        }
        rep.expect(pab_homogeneous(pab_polynomials(a, b), K, a + b), "P^(" + std::to_string(a) + "," + std::to_string(b) + ") homogeneous");
      }
  }
  return rep;
}

CheckReport suite_trees(const VerifyOptions&) {
  CheckReport rep;
  rep.merge(tree_check(test_system(0), "system A"));
  rep.merge(tree_check(test_system(1), "system B"));
  return rep;
}

CheckReport suite_discrete(const VerifyOptions&) {
  CheckReport rep;
  std::vector<UniPoly> polys{UniPoly::constant(1), UniPoly::x(), UniPoly::x() * UniPoly::x(), pk_uni(2, PFamily::Q), pk_uni(3, PFamily::P)};
  for (std::size_t pi = 0; pi < polys.size(); ++pi)
    for (Parity mp : {Parity::Even, Parity::Odd})
      for (bool boundary : {false, true})
        for (Parity lp : {Parity::Even, Parity::Odd}) {
          bool covered = (lp == Parity::Even) == ((mp == Parity::Even) == boundary);
          if (!covered) {
            bool refused = false;
            try {
              discrete_sum(polys[pi], mp, boundary, lp);
            } catch (const Error& e) {
              refused = e.code() == ErrorCode::ParityMismatch;
            }
            rep.expect(refused, "discrete sum outside the four combinations is refused");
            continue;
          }
          UniPoly closed = discrete_sum(polys[pi], mp, boundary, lp);
          bool ok = true;
          for (int l = lp == Parity::Even ? 0 : 1; l <= 40; l += 2)
            ok = ok && closed.eval(Rational(l * l)) == discrete_sum_direct(polys[pi], mp, boundary, l);
          rep.expect(ok, "discrete sum #" + std::to_string(pi) + (mp == Parity::Even ? " even m" : " odd m") + (boundary ? " with boundary" : "") +
                             (lp == Parity::Even ? " even l" : " odd l"));
        }
  return rep;
}

CheckReport criterion_auxiliary(const VerifyOptions& o) {
  CheckReport rep = suite_moments(o);
  rep.merge(suite_trees(o));
  rep.merge(suite_discrete(o));
  return rep;
}

// ---- 8

CheckReport criterion_operators(const VerifyOptions& o) {
  CheckReport rep;
  {
    WeightSpec spec = WeightSpec::make({1, 2, 3, 4, 5, 6}, o.order);
    DiskData data = derivatives(solve_RS(spec), 2);
    TrumpetMatrix A = trumpet_matrix(6, data);
    rep.merge(apply_D_check(6, 0, data, A));
    rep.merge(trumpet_identities_check(data, A));
    rep.merge(t1_derivative_check(data));
  }
  {
    WeightSpec spec = WeightSpec::make({2, 4, 6}, o.order);
    DiskData data = derivatives(solve_RS(spec), 5);
    TrumpetMatrix A = trumpet_matrix(6, data);
    rep.merge(apply_D_check(6, 4, data, A));
    rep.merge(trumpet_identities_check(data, A));
  }
  return rep;
}

// ---- runner

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "disk equations", criterion_disk},
      {2, "census vs Collet-Fusy", criterion_census_cf},
      {3, "trumpet identity", criterion_trumpet},
      {4, "recursion consistency", criterion_recursion},
      {5, "genus 1", criterion_genus1},
      {6, "quasi-polynomiality", criterion_quasipoly},
      {7, "auxiliary identities", criterion_auxiliary},
      {8, "operator identities", criterion_operators},
  };
  return all;
}

CriterionResult run_criterion(const Criterion& c, const VerifyOptions& o) {
  CriterionResult r;
  r.id = c.id;
  r.title = c.title;
  auto start = std::chrono::steady_clock::now();
  try {
    r.report = c.run(o);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::json CriterionResult::to_json() const {
  nlohmann::json j{{"id", id}, {"title", title}, {"pass", pass()}, {"checked", report.checked}, {"failures", report.failures}};
  if (!error.empty()) j["error"] = error;
  return j;
}

}  // namespace tightmaps
