#pragma once

#include <map>
#include <vector>

#include "tightmaps/disk.hpp"

namespace tightmaps {

enum class Provenance { ClosedForm, Insertion, Oracle, Derived };
const char* provenance_name(Provenance p);

using Lengths = std::vector<int>;

// descending, zeros last
Lengths canonical(Lengths l);
std::string lengths_string(const Lengths& l);
// all descending vectors of size n with entries in [lo, hi]
std::vector<Lengths> multisets(int n, int lo, int hi);

class CoefficientTable {
public:
  struct Entry {
    Series value;
    Provenance provenance = Provenance::Derived;
  };

  CoefficientTable() = default;
  CoefficientTable(int g, int n) : g_(g), n_(n) {}

  int genus() const { return g_; }
  int arity() const { return n_; }
  const std::map<Lengths, Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  void set(const Lengths& l, Series value, Provenance p = Provenance::Derived);
  const Series* find(const Lengths& l) const;
  const Series& at(const Lengths& l) const;
  bool contains(const Lengths& l) const { return find(l) != nullptr; }

  nlohmann::json to_json() const;

private:
  int g_ = 0, n_ = 0;
  std::map<Lengths, Entry> entries_;
};

class TrumpetMatrix;
// F = sum prod A (prod l) T, factor-wise on the positive slots
CoefficientTable t_to_f(const CoefficientTable& T, const TrumpetMatrix& A);
CoefficientTable f_to_t(const CoefficientTable& F, const TrumpetMatrix& A);
// tau-hat = (prod l) T R^{-sum l/2}
CoefficientTable zhukovsky_extract(const CoefficientTable& F, const TrumpetMatrix& A, const DiskData& data);
// tau = T R^{-sum l/2}
Series normalize_tau(const Series& T, const Lengths& l, const DiskData& data);

}  // namespace tightmaps
