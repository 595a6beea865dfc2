#include "tightmaps/insertion.hpp"

#include <algorithm>

#include "tightmaps/closed_forms.hpp"
#include "tightmaps/poly.hpp"

namespace tightmaps {

Series InsertionOperator::apply(const Series& x, const WeightSpec& spec) const {
  if (m_ == 0) return derive_t(x);
  Series acc;
  for (auto& [M, c] : row_) {
    if (!spec.active(M))
      throw Error(ErrorCode::InactiveWeight, "D_" + std::to_string(m_) + " needs t" + std::to_string(M) + " active in " + spec.to_string());
    acc = acc + c * derive_face(x, M);
  }
  return acc;
}

InsertionOperator build_D(int m, const TrumpetMatrix& A) {
  if (m < 0) throw Error(ErrorCode::InvalidIndex, "negative insertion length");
  if (m == 0) return InsertionOperator(0, {});
  if (m > A.lmax()) throw Error(ErrorCode::BeyondLmax, "D_" + std::to_string(m) + " beyond Lmax " + std::to_string(A.lmax()));
  std::vector<std::pair<int, Series>> row;
  for (int M = 1; M <= m; ++M) {
    const Series& c = A.inv(m, M);
    if (c.empty()) continue;
    row.emplace_back(M, frac(M, m) * c);
  }
  return InsertionOperator(m, std::move(row));
}

namespace {

Lengths replaced(const Lengths& l, std::size_t i, int v) {
  Lengths r = l;
  r[i] = v;
  return r;
}

Lengths appended(const Lengths& l, int v) {
  Lengths r = l;
  r.push_back(v);
  return canonical(r);
}

bool same(const Series& a, const Series& b) { return a == b; }

}  // namespace

Series insertion_sum_generic(const CoefficientTable& T, const Lengths& l, int lnew, const DiskData& data) {
  Series acc;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (int m = 1; m < l[i]; ++m) {
      Series c = strict_pants(l[i], lnew, m, data);
      if (c.empty()) continue;
      acc = acc + Rational(m) * (c * T.at(replaced(l, i, m)));
    }
  return acc;
}

Series insertion_sum_explicit(const CoefficientTable& T, const Lengths& l, int lnew, const DiskData& data) {
  const Series& Rp = data.R_deriv(1);
  const Series& Sp = data.S_deriv(1);
  Series acc;
  for (std::size_t i = 0; i < l.size(); ++i) {
    const int li = l[i];
    Series with_S, with_R;
    if (lnew % 2 == 0) {
      // m of parity li - 1 carry S', m of parity li carry R'
      for (int m = 1; m < li; ++m) {
        bool s_term = (li - m) % 2;
        if (s_term && Sp.empty()) continue;
        const Series& x = T.at(replaced(l, i, m));
        if (s_term) with_S = with_S + Rational(m) * (data.R_half_power(li + lnew - m - 1) * x);
        else with_R = with_R + Rational(m) * (data.R_half_power(li + lnew - m - 2) * x);
      }
    } else {
      for (int m = 1; m < li; ++m) {
        bool s_term = (li - m) % 2 == 0;
        if (s_term && Sp.empty()) continue;
        const Series& x = T.at(replaced(l, i, m));
        if (s_term) with_S = with_S + Rational(m) * (data.R_half_power(li + lnew - m - 1) * x);
        else with_R = with_R + Rational(m) * (data.R_half_power(li + lnew - m - 2) * x);
      }
    }
    acc = acc + Sp * with_S + Rp * with_R;
  }
  return acc;
}

Series insert_boundary(const CoefficientTable& T, const Lengths& l, int lnew, const DiskData& data, const TrumpetMatrix& A) {
  if (lnew > 0 && lnew > A.lmax()) throw Error(ErrorCode::BeyondLmax, "insertion of length " + std::to_string(lnew));
  Series head = build_D(lnew, A).apply(T.at(l), data.spec());
  Series generic = insertion_sum_generic(T, l, lnew, data);
  Series expl = insertion_sum_explicit(T, l, lnew, data);
  if (!same(generic, expl))
    throw Error(ErrorCode::AssumptionViolated, "parity forms of the insertion sum disagree at " + lengths_string(l) + "+" + std::to_string(lnew));
  return head + generic;
}

namespace {

CoefficientTable grow(const CoefficientTable& T, int lnew, const DiskData& data, const TrumpetMatrix& A) {
  CoefficientTable out(T.genus(), T.arity() + 1);
  for (auto& [l, e] : T.entries()) out.set(appended(l, lnew), insert_boundary(T, l, lnew, data, A), Provenance::Insertion);
  return out;
}

}  // namespace

CoefficientTable add_boundary_vertex(const CoefficientTable& T, const DiskData& data, const TrumpetMatrix& A) { return grow(T, 0, data, A); }

CoefficientTable add_boundary_face(const CoefficientTable& T, int lnew, const DiskData& data, const TrumpetMatrix& A) {
  if (lnew < 1) throw Error(ErrorCode::InvalidIndex, "face insertion needs a positive length");
  return grow(T, lnew, data, A);
}

// ---- builder

void TableBuilder::seed(const CoefficientTable& table) { seeds_[{table.genus(), table.arity()}] = table; }

std::optional<Series> TableBuilder::base(int g, const Lengths& key) {
  auto it = seeds_.find({g, int(key.size())});
  if (it != seeds_.end()) {
    if (const Series* s = it->second.find(key)) return *s;
  }
  if (g == 0 && key.size() == 3) return pants(key[0], key[1], key[2], data_);
  if (g == 0 && key.size() < 3) throw Error(ErrorCode::UnsupportedGenus, "genus 0 with fewer than three boundaries is served by closed forms only");
  if (g == 1 && key.empty()) {
    if (!genus1_) genus1_ = genus1_F(data_);
    return *genus1_;
  }
  if (g >= 2 && key.size() <= 1) throw Error(ErrorCode::UnsupportedGenus, "genus " + std::to_string(g) + " needs an oracle seed");
  return std::nullopt;
}

Series TableBuilder::build(int g, const Lengths& lengths) {
  if (g < 0) throw Error(ErrorCode::UnsupportedGenus, "negative genus");
  return compute(g, canonical(lengths));
}

Series TableBuilder::compute(int g, const Lengths& key) {
  auto mk = std::make_pair(g, key);
  if (auto it = memo_.find(mk); it != memo_.end()) return it->second;
  if (auto b = base(g, key)) {
    memo_.emplace(mk, *b);
    trace_.push_back({mk, {}});
    return *b;
  }
  // key is descending; remove the boundary inserted last
  std::size_t pos = policy_ == InsertionPolicy::SmallestLast ? key.size() - 1 : 0;
  int lnew = key[pos];
  Lengths rest = key;
  rest.erase(rest.begin() + pos);
  CoefficientTable T(g, int(rest.size()));
  std::vector<Lengths> deps{rest};
  T.set(rest, compute(g, rest), Provenance::Insertion);
  for (std::size_t i = 0; i < rest.size(); ++i)
    for (int m = 1; m < rest[i]; ++m) {
      Lengths d = replaced(rest, i, m);
      if (T.contains(d)) continue;
      T.set(d, compute(g, canonical(d)), Provenance::Insertion);
      deps.push_back(canonical(d));
    }
  Series v = insert_boundary(T, rest, lnew, data_, A_);
  memo_.emplace(mk, v);
  trace_.push_back({mk, deps});
  return v;
}

nlohmann::json TableBuilder::trace_json() const {
  auto arr = nlohmann::json::array();
  for (auto& [node, deps] : trace_) arr.push_back({{"genus", node.first}, {"lengths", node.second}, {"depends_on", deps}});
  return arr;
}

Series build_T(int g, const Lengths& lengths, const DiskData& data, const TrumpetMatrix& A) {
  TableBuilder b(data, A);
  return b.build(g, lengths);
}

// ---- identity checks

CheckReport apply_D_check(int mmax, int jmax, const DiskData& data, const TrumpetMatrix& A) {
  CheckReport rep;
  const Series& R = data.R();
  const Series& S = data.S();
  Series a = data.R_deriv(1) * invert(R);
  Series b = data.S_deriv(1) * invert(data.sqrtR());
  const bool bip = data.spec().bipartite();
  for (int m = 1; m <= mmax; ++m) {
    if (bip && m % 2) continue;
    InsertionOperator D = build_D(m, A);
    Series DR = D.apply(R, data.spec()), DS = D.apply(S, data.spec());
    Series eR = data.R_half_power(m + 2) * (m % 2 == 0 ? a : b);
    Series eS = data.R_half_power(m + 1) * (m % 2 == 0 ? b : a);
    rep.expect(DR == eR, "D_" + std::to_string(m) + " R");
    rep.expect(DS == eS, "D_" + std::to_string(m) + " S");
  }
  if (bip) {
    std::vector<Series> rd;
    for (int k = 1; k <= data.kmax(); ++k) rd.push_back(data.R_deriv(k));
    for (int m = 1; 2 * m <= mmax; ++m) {
      InsertionOperator D = build_D(2 * m, A);
      for (int j = 0; j <= jmax && j + 1 <= data.kmax(); ++j) {
        Series lhs = D.apply(data.R_deriv(j), data.spec());
        Series sum;
        for (int k = 0; k <= j; ++k)
          sum = sum + factorial(k) * pk_uni(k, PFamily::Q).eval(Rational(m * m)) * bnk(j + 1, k + 1, rd, R);
        rep.expect(lhs == data.R_half_power(2 * m + 2) * sum, "D_" + std::to_string(2 * m) + " R^(" + std::to_string(j) + ")");
      }
    }
  }
  return rep;
}

CheckReport trumpet_identities_check(const DiskData& data, const TrumpetMatrix& A) {
  CheckReport rep;
  const int Lmax = A.lmax();
  const Series& Rp = data.R_deriv(1);
  const Series& Sp = data.S_deriv(1);
  for (int L = 1; L <= Lmax; ++L)
    for (int l = 1; l <= L; ++l) {
      Series lhs = derive_t(A.a(L, l));
      Series viaT, viaParity;
      for (int m = l + 1; m <= L; ++m) {
        viaT = viaT + Rational(m) * (A.a(L, m) * strict_pants(m, 0, l, data));
        if ((m - l) % 2) viaParity = viaParity + Rational(m) * (A.a(L, m) * data.R_half_power(m - l - 1) * Sp);
        else viaParity = viaParity + Rational(m) * (A.a(L, m) * data.R_half_power(m - l - 2) * Rp);
      }
      std::string at = "(" + std::to_string(L) + "," + std::to_string(l) + ")";
      rep.expect(lhs == viaT, "dA/dt strict-pants form " + at);
      rep.expect(lhs == viaParity, "dA/dt parity form " + at);
    }
  auto a = [&](int L, int l) { return l > L ? Series() : A.a(L, l); };
  for (int L = 2; L <= Lmax; ++L)
    for (int l = 1; l < L; ++l) {
      Series lhs = Rational(L) * a(L - 1, l);
      Series rhs = Rational(l + 1) * a(L, l + 1) + Rational(L) * (data.R() * a(L - 1, l + 2));
      rep.expect(lhs == rhs, "ladder (" + std::to_string(L) + "," + std::to_string(l) + ")");
    }
  return rep;
}

CheckReport t1_derivative_check(const DiskData& data) {
  CheckReport rep;
  if (!data.spec().active(1)) throw Error(ErrorCode::InactiveWeight, "t1 must be active");
  rep.expect(derive_face(data.R(), 1) == data.R() * data.S_deriv(1), "dR/dt1 = R S'");
  rep.expect(derive_face(data.S(), 1) == data.R_deriv(1), "dS/dt1 = R'");
  return rep;
}

}  // namespace tightmaps
