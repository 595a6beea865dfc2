#pragma once

#include <map>
#include <vector>

#include "tightmaps/poly.hpp"

namespace tightmaps {

using SeriesPoly = MultiPolyT<Series>;

// One polynomial in x_i = l_i^2 per set of odd positions.
class QuasiPolynomial {
public:
  using OddSet = std::vector<int>;

  QuasiPolynomial() = default;
  explicit QuasiPolynomial(int arity) : arity_(arity) {}

  int arity() const { return arity_; }
  const std::map<OddSet, SeriesPoly>& classes() const { return classes_; }
  void set_class(const OddSet& odd, SeriesPoly p) { classes_[odd] = std::move(p); }
  const SeriesPoly* find(const OddSet& odd) const;

  static OddSet odd_positions(const std::vector<int>& l);
  Series eval(const std::vector<int>& l) const;
  int total_degree() const;
  bool is_symmetric() const;
  bool operator==(const QuasiPolynomial& o) const;

  nlohmann::json to_json() const;

private:
  int arity_ = 0;
  std::map<OddSet, SeriesPoly> classes_;
};

using SampleSet = std::map<std::vector<int>, Series>;

QuasiPolynomial fit_quasipolynomial(const SampleSet& samples, int arity, int degree);
// greedy per-class subset whose design rows are independent
SampleSet select_independent(const SampleSet& samples, int arity, int degree);

bool same_poly(const SeriesPoly& a, const SeriesPoly& b);

}  // namespace tightmaps
