#include "tightmaps/moments.hpp"

#include <algorithm>

namespace tightmaps {

nlohmann::json MomentData::to_json() const {
  nlohmann::json j;
  auto arr = nlohmann::json::array();
  for (auto& s : u) arr.push_back(s.to_json());
  j["u"] = arr;
  j["M0_plus"] = M0_plus.to_json();
  j["M0_minus"] = M0_minus.to_json();
  auto mp = nlohmann::json::array(), mm = nlohmann::json::array();
  for (std::size_t h = 1; h < Mbar_plus.size(); ++h) {
    mp.push_back(Mbar_plus[h].to_json());
    mm.push_back(Mbar_minus[h].to_json());
  }
  j["Mbar_plus"] = mp;
  j["Mbar_minus"] = mm;
  return j;
}

MomentData compute_uk(const DiskData& data, int kmax) {
  if (kmax < 0) throw Error(ErrorCode::InvalidRange, "negative kmax");
  const Series& R = data.R();
  const Series& S = data.S();
  std::vector<Series> Sp{Series::constant(1)};
  auto Spow = [&](int b) -> const Series& {
    while (int(Sp.size()) <= b) Sp.push_back(Sp.back() * S);
    return Sp[b];
  };
  MomentData md;
  for (int k = 0; k <= kmax; ++k) {
    Series uk(R.order2());
    if (k == 0) uk = S;
    if (k == 1) uk = data.sqrtR();
    for (int i : data.spec().faces) {
      if (i < k + 1) continue;
      Series inner;
      for (int j = k; 2 * j <= i + k - 1; ++j) {
        int b = i - 1 + k - 2 * j;
        inner = inner + multinomial({j, j - k, b}) * (data.R_half_power(2 * j - k) * Spow(b));
      }
      uk = uk - Series::face(i) * inner;
    }
    md.u.push_back(uk.truncated(R.order2()));
  }
  return md;
}

MomentData moments(MomentData md, const DiskData& data, int hmax) {
  Series yp, ym;  // -y'(+1), -y'(-1)
  for (int k = 1; k < int(md.u.size()); ++k) {
    yp = yp + Rational(k) * md.u[k];
    ym = ym + Rational(k % 2 ? k : -k) * md.u[k];
  }
  Series invSqrt = data.R_half_power(-1);
  md.M0_plus = yp * invSqrt;
  md.M0_minus = ym * invSqrt;
  md.Mbar_plus.assign(hmax + 1, Series());
  md.Mbar_minus.assign(hmax + 1, Series());
  for (int h = 1; h <= hmax; ++h) {
    Series p, m;
    for (int k = h + 1; k < int(md.u.size()); ++k) {
      Rational c = binomial(k + h, 2 * h + 1);
      p = p - c * md.u[k];
      m = m - ((k + h + 1) % 2 ? -c : c) * md.u[k];
    }
    md.Mbar_plus[h] = p;
    md.Mbar_minus[h] = m;
  }
  return md;
}

namespace {

// coefficients of P in the basis family_r, r = 0..deg
std::vector<Rational> expand_in_basis(UniPoly P, PFamily family) {
  std::vector<Rational> alpha(std::max(P.degree() + 1, 0));
  for (int r = P.degree(); r >= 0; --r) {
    UniPoly B = pk_uni(r, family);
    Rational a = P[r] / B[r];
    alpha[r] = a;
    P = P - a * B;
  }
  if (!P.is_zero()) throw Error(ErrorCode::AssumptionViolated, "basis expansion left a remainder");
  return alpha;
}

// binom(x - 1, r) as a polynomial in x
UniPoly shifted_binomial(int r) {
  UniPoly p = UniPoly::constant(1);
  for (int i = 1; i <= r; ++i) p = p * UniPoly({Rational(-i), Rational(1)});
  return Rational(1) / factorial(r) * p;
}

}  // namespace

std::pair<UniPoly, UniPoly> qh_polynomials(int h) {
  if (h < 0) throw Error(ErrorCode::InvalidRange, "negative h");
  UniPoly ph2 = pk_uni(h, PFamily::P).compose_affine(4, 0);
  Rational pre = factorial(h) * factorial(h) / factorial(2 * h + 1);
  UniPoly q[2];
  const PFamily fam[2] = {PFamily::PTilde, PFamily::P};
  for (int eps = 0; eps < 2; ++eps) {
    auto alpha = expand_in_basis(ph2, fam[eps]);
    UniPoly s;
    for (int r = 0; r < int(alpha.size()); ++r) s = s + alpha[r] * shifted_binomial(r);
    q[eps] = pre * (UniPoly::x() * s);
  }
  return {q[0], q[1]};
}

std::pair<Rational, Rational> qh_identity_sides(int h, int j) {
  if (j < 1) throw Error(ErrorCode::InvalidRange, "j must be positive");
  const int eps = j % 2;
  Rational lhs = 0;
  for (int k = 0; k <= j - 1; ++k) {
    if ((k + eps) % 2 == 0) continue;
    lhs += binomial(k + h, 2 * h + 1) * binomial(j - 1, (j - 1 + k) / 2);
  }
  auto [q0, q1] = qh_polynomials(h);
  const UniPoly& q = eps ? q1 : q0;
  Rational rhs = binomial(j - 1, (j - eps) / 2) * q.eval(Rational((j - eps) / 2));
  return {lhs, rhs};
}

Series ZSystem::eval(int eps, const Series& r, const Series& s, const DiskData&) const {
  Series acc;
  for (auto& [e, c] : Z[eps]) acc = acc + c * pow(r, e.first) * pow(s, e.second);
  return acc;
}

ZSystem z_system(const DiskData& data) {
  ZSystem z;
  z.Z[0][{1, 0}] = Series::constant(1);
  z.Z[1][{0, 1}] = Series::constant(1);
  for (int i : data.spec().faces) {
    if (i < 2) continue;
    Series ti = Series::face(i);
    for (int l = i % 2; l <= i - 2; l += 2) {
      int a = (i - l) / 2;
      z.Z[0][{a, l}] = z.Z[0][{a, l}] - multinomial({a, a - 1, l}) * ti;
    }
    for (int l = (i + 1) % 2; l <= i - 1; l += 2) {
      int a = (i - l - 1) / 2;
      z.Z[1][{a, l}] = z.Z[1][{a, l}] - multinomial({a, a, l}) * ti;
    }
  }
  return z;
}

Series moment_via_operator(int h, int sign, const ZSystem& z, const DiskData& data) {
  if (h < 1) throw Error(ErrorCode::InvalidRange, "h must be positive");
  if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidRange, "sign must be +1 or -1");
  auto [q0, q1] = qh_polynomials(h);
  const UniPoly* q[2] = {&q0, &q1};
  Series total;
  for (int eps = 0; eps < 2; ++eps) {
    Series acc;
    for (auto& [e, c] : z.Z[eps]) {
      Rational w = q[eps]->eval(Rational(e.first));
      if (sgn(w) == 0) continue;
      acc = acc + w * (c * data.R_half_power(2 * e.first) * pow(data.S(), e.second));
    }
    if (eps == 0) acc = data.R_half_power(-1) * acc;
    else if (sign < 0) acc = -acc;
    total = total - acc;
  }
  return (h % 2 && sign < 0) ? -total : total;
}

MultiPoly pab_polynomials(int a, int b) {
  if (a < 0 || b < 0) throw Error(ErrorCode::InvalidIndex, "P^(a,b) needs a, b >= 0");
  const int K = std::max(a + b, 1);
  const int n = 2 * K;
  auto x = [&](int k) { return k == 0 ? MultiPoly::constant(n, 1) : MultiPoly::variable(n, k - 1); };
  auto y = [&](int k) { return MultiPoly::variable(n, K + k - 1); };
  MultiPoly P = x(a);
  for (int bb = 0; bb < b; ++bb) {
    MultiPoly next = frac(bb + 2, 2) * (y(1) * P);
    for (int k = 1; k <= a + bb; ++k) {
      MultiPoly cx(n);
      for (int i = 0; i <= k - 1; ++i) cx = cx + binomial(k, i) * (x(i) * y(k + 1 - i));
      next = next + cx * P.derivative(k - 1);
      MultiPoly cy = x(k + 1) - frac(1, 2) * (y(1) * y(k));
      next = next + cy * P.derivative(K + k - 1);
    }
    P = next;
  }
  return P;
}

Series pab_eval(const MultiPoly& P, int K, const DiskData& data) {
  K = std::max(K, 1);
  if (data.kmax() < K) throw Error(ErrorCode::InsufficientOrder, "P^(a,b) evaluation needs derivatives up to " + std::to_string(K));
  Series invR = invert(data.R()), invS = data.R_half_power(-1);
  std::vector<Series> v(2 * K);
  for (int k = 1; k <= K; ++k) {
    v[k - 1] = data.R_deriv(k) * invR;
    v[K + k - 1] = data.S_deriv(k) * invS;
  }
  return P.eval(v, Series::constant(1));
}

bool pab_homogeneous(const MultiPoly& P, int K, int degree) {
  K = std::max(K, 1);
  for (auto& [e, c] : P.terms()) {
    int d = 0;
    for (int k = 1; k <= K; ++k) d += k * (e[k - 1] + e[K + k - 1]);
    if (d != degree) return false;
  }
  return true;
}

namespace {

void set_partitions(const std::vector<int>& items, std::size_t pos, std::vector<std::vector<int>>& blocks,
                    std::vector<std::vector<std::vector<int>>>& out) {
  if (pos == items.size()) {
    out.push_back(blocks);
    return;
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].push_back(items[pos]);
    set_partitions(items, pos + 1, blocks, out);
    blocks[b].pop_back();
  }
  blocks.push_back({items[pos]});
  set_partitions(items, pos + 1, blocks, out);
  blocks.pop_back();
}

std::vector<Tree> trees_on(const std::vector<int>& leaves) {
  if (leaves.size() == 1) return {Tree{leaves[0], {}}};
  std::vector<std::vector<std::vector<int>>> parts;
  std::vector<std::vector<int>> blocks;
  set_partitions(leaves, 0, blocks, parts);
  std::vector<Tree> out;
  for (auto& p : parts) {
    if (p.size() < 2) continue;
    std::vector<std::vector<Tree>> options;
    for (auto& b : p) options.push_back(trees_on(b));
    std::vector<std::size_t> idx(p.size(), 0);
    while (true) {
      Tree t;
      for (std::size_t i = 0; i < p.size(); ++i) t.children.push_back(options[i][idx[i]]);
      out.push_back(std::move(t));
      std::size_t q = 0;
      while (q < idx.size() && ++idx[q] == options[q].size()) idx[q++] = 0;
      if (q == idx.size()) break;
    }
  }
  return out;
}

}  // namespace

std::vector<Tree> planted_trees(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidRange, "trees need at least one leaf");
  std::vector<int> leaves(k);
  for (int i = 0; i < k; ++i) leaves[i] = i;
  return trees_on(leaves);
}

Series genus1_from_moments(const MomentData& md, const DiskData& data) {
  Series arg = shift_t(data.R() * data.R() * md.M0_plus * md.M0_minus, -4);
  return frac(-1, 24) * log_unit(arg);
}

CheckReport jacobian_check(const DiskData& data) {
  if (!data.spec().active(1)) throw Error(ErrorCode::InactiveWeight, "t1 must be active");
  CheckReport rep;
  const Series& R = data.R();
  const Series& S = data.S();
  Series J[2][2] = {{derive_t(R), derive_face(R, 1)}, {derive_t(S), derive_face(S, 1)}};
  Series invdet = invert(J[0][0] * J[1][1] - J[0][1] * J[1][0]);
  Series inv[2][2] = {{J[1][1] * invdet, -J[0][1] * invdet}, {-J[1][0] * invdet, J[0][0] * invdet}};
  Series a = data.R_deriv(1) * invert(R);
  Series b = data.S_deriv(1) * data.R_half_power(-1);
  Series invX = invert(a * a - b * b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Series D = (i + j) % 2 ? -b : a;
      Series closed = data.R_half_power(-2 - i + j) * D * invX;
      rep.expect(inv[i][j] == closed, "inverse Jacobian entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  return rep;
}

}  // namespace tightmaps
