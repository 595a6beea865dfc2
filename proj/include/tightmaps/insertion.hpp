#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tightmaps/disk.hpp"
#include "tightmaps/table.hpp"

namespace tightmaps {

class InsertionOperator {
public:
  InsertionOperator() = default;
  InsertionOperator(int m, std::vector<std::pair<int, Series>> row) : m_(m), row_(std::move(row)) {}
  int m() const { return m_; }
  // (M, (A^-1)_{m,M} M/m), nonzero entries only; empty for m = 0
  const std::vector<std::pair<int, Series>>& row() const { return row_; }
  // throws InactiveWeight when a needed t_M is not symbolic in spec
  Series apply(const Series& x, const WeightSpec& spec) const;

private:
  int m_ = 0;
  std::vector<std::pair<int, Series>> row_;
};

InsertionOperator build_D(int m, const TrumpetMatrix& A);

struct CheckReport {
  std::vector<std::string> failures;
  int checked = 0;
  bool ok() const { return failures.empty(); }
  void expect(bool cond, const std::string& what) {
    ++checked;
    if (!cond) failures.push_back(what);
  }
  void merge(const CheckReport& o) {
    checked += o.checked;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
  }
};

// D_m R and D_m S for 1 <= m <= mmax; D_{2m} R^{(j)} for j <= jmax if bipartite
CheckReport apply_D_check(int mmax, int jmax, const DiskData& data, const TrumpetMatrix& A);
// dA/dt both forms, and the ladder identity
CheckReport trumpet_identities_check(const DiskData& data, const TrumpetMatrix& A);
// dR/dt1 = R S', dS/dt1 = R'
CheckReport t1_derivative_check(const DiskData& data);

// Generic strict-pants assembly; also evaluates the explicit parity form and
// throws AssumptionViolated if the two disagree.
Series insert_boundary(const CoefficientTable& T, const Lengths& l, int lnew, const DiskData& data, const TrumpetMatrix& A);
Series insertion_sum_generic(const CoefficientTable& T, const Lengths& l, int lnew, const DiskData& data);
Series insertion_sum_explicit(const CoefficientTable& T, const Lengths& l, int lnew, const DiskData& data);

CoefficientTable add_boundary_vertex(const CoefficientTable& T, const DiskData& data, const TrumpetMatrix& A);
CoefficientTable add_boundary_face(const CoefficientTable& T, int lnew, const DiskData& data, const TrumpetMatrix& A);

enum class InsertionPolicy { SmallestLast, LargestLast };

class TableBuilder {
public:
  TableBuilder(DiskData data, TrumpetMatrix A, InsertionPolicy policy = InsertionPolicy::SmallestLast)
      : data_(std::move(data)), A_(std::move(A)), policy_(policy) {}

  // oracle tables for (g, n); consulted before any other base
  void seed(const CoefficientTable& table);
  Series build(int g, const Lengths& lengths);
  const std::vector<std::pair<std::pair<int, Lengths>, std::vector<Lengths>>>& trace() const { return trace_; }
  nlohmann::json trace_json() const;
  std::size_t memo_size() const { return memo_.size(); }

private:
  Series compute(int g, const Lengths& key);
  std::optional<Series> base(int g, const Lengths& key);

  DiskData data_;
  TrumpetMatrix A_;
  InsertionPolicy policy_;
  std::map<std::pair<int, int>, CoefficientTable> seeds_;
  std::map<std::pair<int, Lengths>, Series> memo_;
  std::optional<Series> genus1_;
  std::vector<std::pair<std::pair<int, Lengths>, std::vector<Lengths>>> trace_;
};

Series build_T(int g, const Lengths& lengths, const DiskData& data, const TrumpetMatrix& A);

}  // namespace tightmaps
