#pragma once

#include <vector>

#include "tightmaps/census.hpp"
#include "tightmaps/insertion.hpp"
#include "tightmaps/quasipoly.hpp"

namespace tightmaps {

struct QuasiFit {
  int genus = 0, arity = 0, lmax = 0;
  int degree_bound = 0;
  QuasiPolynomial qp;
  int fitted = 0, held_out = 0;
  int coefficient_order2 = kExact;  // lowest order among fitted coefficients
  bool held_out_ok = false;
  bool symmetric = false;
  bool degree_ok = false;
  Rational chi;
  Series all_zero_lhs, all_zero_rhs;
  bool all_zero_ok = false;
  bool ok() const { return held_out_ok && symmetric && degree_ok && all_zero_ok; }
  nlohmann::json to_json() const;
};

// tau samples on {0..lmax}^n minus the all-zero tuple, built by insertion
SampleSet tau_samples(int g, int n, int lmax, const DiskData& data, const TrumpetMatrix& A);
// fits on an independent subset per parity class, the rest is held out
QuasiFit quasipoly_fit(int g, int n, int lmax, const DiskData& data, const TrumpetMatrix& A);

struct GenusTwoCheck {
  struct Order {
    int grade = 0;           // tau grade compared
    std::vector<int> lengths;
    int held_out = 0;
    bool consistent = false;
    QuasiPolynomial qp;
  };
  std::vector<Order> orders;
  bool ok() const;
  nlohmann::json to_json() const;
};
// census-seeded tau^(2)_l for one boundary, fitted grade by grade
GenusTwoCheck genus2_spot_check(int mmax, const WeightSpec& spec);

}  // namespace tightmaps
