#include "tightmaps/disk.hpp"

#include <algorithm>

#include "tightmaps/poly.hpp"

namespace tightmaps {

WeightSpec WeightSpec::make(std::vector<int> faces, int order) {
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  for (int k : faces)
    if (k < 1 || k > kMaxFace) throw Error(ErrorCode::InvalidIndex, "face degree " + std::to_string(k));
  if (order < 1) throw Error(ErrorCode::InvalidRange, "truncation order must be at least 1");
  return {faces, whole(order)};
}

bool WeightSpec::bipartite() const {
  return std::all_of(faces.begin(), faces.end(), [](int k) { return k % 2 == 0; });
}

bool WeightSpec::active(int k) const { return std::binary_search(faces.begin(), faces.end(), k); }

std::string WeightSpec::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < faces.size(); ++i) s += (i ? ",t" : "t") + std::to_string(faces[i]);
  return s + "} N=" + std::to_string(order2) + "/2";
}

DiskData::DiskData(WeightSpec spec, Series R, Series S) : spec_(std::move(spec)), R_(std::move(R)), S_(std::move(S)) {
  sqrtR_ = sqrt(R_);
  R_derivs_ = {R_};
  S_derivs_ = {S_};
}

const Series& DiskData::R_deriv(int k) const {
  if (k < 0 || k >= int(R_derivs_.size()))
    throw Error(ErrorCode::InsufficientOrder, "R derivative " + std::to_string(k) + " not cached");
  return R_derivs_[k];
}

const Series& DiskData::S_deriv(int k) const {
  if (k < 0 || k >= int(S_derivs_.size()))
    throw Error(ErrorCode::InsufficientOrder, "S derivative " + std::to_string(k) + " not cached");
  return S_derivs_[k];
}

Series DiskData::R_half_power(int p) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->half_powers.find(p);
    if (it != cache_->half_powers.end()) return it->second;
  }
  Series v;
  if (p == 0) v = Series::constant(1);
  else if (p == 1) v = sqrtR_;
  else if (p == 2) v = R_;
  else if (p == -1) v = invert(sqrtR_);
  else if (p == -2) v = invert(R_);
  else if (p > 0) v = R_half_power(p - 2) * R_;
  else v = R_half_power(p + 2) * R_half_power(-2);
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->half_powers.emplace(p, v);
  return v;
}

DiskData derivatives(const DiskData& data, int kmax) {
  DiskData d = data;
  while (int(d.R_derivs_.size()) <= kmax) {
    d.R_derivs_.push_back(derive_t(d.R_derivs_.back(), Calculus::Integer));
    d.S_derivs_.push_back(derive_t(d.S_derivs_.back(), Calculus::Integer));
  }
  return d;
}

Series laurent_coefficient(int L, int j, const Series& R, const Series& S) {
  Series sum;
  std::vector<Series> Rp{Series::constant(1)}, Sp{Series::constant(1)};
  for (int c = std::max(0, -j); L - 2 * c - j >= 0; ++c) {
    int b = L - 2 * c - j;
    while (int(Rp.size()) <= c) Rp.push_back(Rp.back() * R);
    while (int(Sp.size()) <= b) Sp.push_back(Sp.back() * S);
    sum = sum + multinomial({c + j, b, c}) * (Sp[b] * Rp[c]);
  }
  return sum;
}

namespace {

std::pair<Series, Series> sweep(const WeightSpec& spec, const Series& R, const Series& S) {
  Series Rn = Series::t(spec.order2);
  Series Sn(spec.order2);
  for (int i : spec.faces) {
    Series ti = Series::face(i);
    Rn = Rn + ti * laurent_coefficient(i - 1, -1, R, S);
    Sn = Sn + ti * laurent_coefficient(i - 1, 0, R, S);
  }
  return {Rn.truncated(spec.order2), Sn.truncated(spec.order2)};
}

bool same_terms(const Series& a, const Series& b) { return a.terms() == b.terms(); }

}  // namespace

DiskData solve_RS_general(const WeightSpec& spec) {
  Series R = Series::t(spec.order2), S(spec.order2);
  for (int sweep_no = 0; sweep_no <= spec.order2 + 2; ++sweep_no) {
    auto [Rn, Sn] = sweep(spec, R, S);
    if (same_terms(Rn, R) && same_terms(Sn, S)) return DiskData(spec, Rn, Sn);
    R = std::move(Rn);
    S = std::move(Sn);
  }
  throw Error(ErrorCode::NonConvergence, "disk equations did not stabilise for " + spec.to_string());
}

DiskData solve_RS(const WeightSpec& spec) {
  if (!spec.bipartite()) return solve_RS_general(spec);
  Series R = Series::t(spec.order2);
  for (int sweep_no = 0; sweep_no <= spec.order2 + 2; ++sweep_no) {
    Series Rn = Series::t(spec.order2);
    Series Rj = Series::constant(1);
    int j = 0;
    for (int k : spec.faces) {
      while (j < k / 2) {
        Rj = Rj * R;
        ++j;
      }
      Rn = Rn + binomial(k - 1, k / 2) * (Series::face(k) * Rj);
    }
    Rn = Rn.truncated(spec.order2);
    if (same_terms(Rn, R)) return DiskData(spec, Rn, Series(spec.order2));
    R = std::move(Rn);
  }
  throw Error(ErrorCode::NonConvergence, "bipartite disk equation did not stabilise for " + spec.to_string());
}

std::pair<Series, Series> disk_residuals(const DiskData& data) {
  auto [Rn, Sn] = sweep(data.spec(), data.R(), data.S());
  return {(Rn - data.R()).truncated(data.spec().order2), (Sn - data.S()).truncated(data.spec().order2)};
}

Series trumpet(int L, int l, const DiskData& data) {
  if (L < 1 || l < 1) throw Error(ErrorCode::InvalidIndex, "trumpet indices must be positive");
  if (l > L) return Series();
  return laurent_coefficient(L, l, data.R(), data.S());
}

const Series& TrumpetMatrix::a(int L, int l) const {
  if (L < 1 || l < 1) throw Error(ErrorCode::InvalidIndex, "trumpet matrix index");
  if (L > lmax_ || l > lmax_) throw Error(ErrorCode::IndexBeyondLmax, "index " + std::to_string(std::max(L, l)) + " beyond Lmax " + std::to_string(lmax_));
  return A_[L][l];
}

const Series& TrumpetMatrix::inv(int L, int l) const {
  if (L < 1 || l < 1) throw Error(ErrorCode::InvalidIndex, "trumpet matrix index");
  if (L > lmax_ || l > lmax_) throw Error(ErrorCode::IndexBeyondLmax, "index " + std::to_string(std::max(L, l)) + " beyond Lmax " + std::to_string(lmax_));
  return inv_[L][l];
}

TrumpetMatrix trumpet_matrix(int lmax, const DiskData& data) {
  if (lmax < 1) throw Error(ErrorCode::InvalidRange, "Lmax must be positive");
  std::vector<std::vector<Series>> A(lmax + 1, std::vector<Series>(lmax + 1)), inv = A;
  for (int L = 1; L <= lmax; ++L)
    for (int l = 1; l <= L; ++l) A[L][l] = trumpet(L, l, data);
  for (int L = 1; L <= lmax; ++L) {
    inv[L][L] = Series::constant(1);
    for (int l = L - 1; l >= 1; --l) {
      Series s;
      for (int k = l; k < L; ++k) s = s + A[L][k] * inv[k][l];
      inv[L][l] = -s;
    }
  }
  return TrumpetMatrix(lmax, std::move(A), std::move(inv));
}

ZhukovskyCurve zhukovsky(const DiskData& data) { return {data.S(), data.sqrtR()}; }

nlohmann::json disk_json(const DiskData& data) {
  nlohmann::json j;
  j["spec"] = {{"faces", data.spec().faces}, {"order", std::to_string(data.spec().order2) + "/2"}, {"bipartite", data.spec().bipartite()}};
  j["R"] = data.R().to_json();
  j["S"] = data.S().to_json();
  j["sqrtR"] = data.sqrtR().to_json();
  auto rd = nlohmann::json::array(), sd = nlohmann::json::array();
  for (int k = 1; k <= data.kmax(); ++k) {
    rd.push_back(data.R_deriv(k).to_json());
    sd.push_back(data.S_deriv(k).to_json());
  }
  j["R_derivatives"] = rd;
  j["S_derivatives"] = sd;
  return j;
}

}  // namespace tightmaps
