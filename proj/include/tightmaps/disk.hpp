#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "tightmaps/series.hpp"

namespace tightmaps {

struct WeightSpec {
  std::vector<int> faces;  // active face degrees, sorted
  int order2 = 0;

  static WeightSpec make(std::vector<int> faces, int order);
  bool bipartite() const;
  bool active(int k) const;
  int max_face() const { return faces.empty() ? 0 : faces.back(); }
  std::string to_string() const;
};

class DiskData {
public:
  DiskData() = default;
  DiskData(WeightSpec spec, Series R, Series S);

  const WeightSpec& spec() const { return spec_; }
  const Series& R() const { return R_; }
  const Series& S() const { return S_; }
  const Series& sqrtR() const { return sqrtR_; }
  int kmax() const { return int(R_derivs_.size()) - 1; }
  // R^{(k)}, S^{(k)}; k = 0 returns R, S
  const Series& R_deriv(int k) const;
  const Series& S_deriv(int k) const;
  // R^{p/2}
  Series R_half_power(int p) const;

  friend DiskData derivatives(const DiskData& data, int kmax);

private:
  struct Cache {
    std::mutex mu;
    std::map<int, Series> half_powers;
  };
  WeightSpec spec_;
  Series R_, S_, sqrtR_;
  std::vector<Series> R_derivs_, S_derivs_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

DiskData solve_RS(const WeightSpec& spec);
// full two-equation iteration even for bipartite specs
DiskData solve_RS_general(const WeightSpec& spec);
DiskData derivatives(const DiskData& data, int kmax);

// [z^j](z + S + R/z)^L
Series laurent_coefficient(int L, int j, const Series& R, const Series& S);
// residuals of both disk equations
std::pair<Series, Series> disk_residuals(const DiskData& data);

Series trumpet(int L, int l, const DiskData& data);

class TrumpetMatrix {
public:
  TrumpetMatrix() = default;
  TrumpetMatrix(int lmax, std::vector<std::vector<Series>> A, std::vector<std::vector<Series>> inv)
      : lmax_(lmax), A_(std::move(A)), inv_(std::move(inv)) {}
  int lmax() const { return lmax_; }
  // A_{L,l}; zero above the diagonal
  const Series& a(int L, int l) const;
  const Series& inv(int L, int l) const;

private:
  int lmax_ = 0;
  std::vector<std::vector<Series>> A_, inv_;
};

TrumpetMatrix trumpet_matrix(int lmax, const DiskData& data);

struct ZhukovskyCurve {
  Series alpha;
  Series gamma;
};
ZhukovskyCurve zhukovsky(const DiskData& data);

nlohmann::json disk_json(const DiskData& data);

}  // namespace tightmaps
