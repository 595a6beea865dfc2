#pragma once

#include <array>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "tightmaps/disk.hpp"
#include "tightmaps/insertion.hpp"
#include "tightmaps/poly.hpp"

namespace tightmaps {

struct MomentData {
  std::vector<Series> u;  // u_0 .. u_kmax
  Series M0_plus, M0_minus;
  std::vector<Series> Mbar_plus, Mbar_minus;  // index h, entry 0 unused
  nlohmann::json to_json() const;
};

MomentData compute_uk(const DiskData& data, int kmax);
// fills M0 and Mbar_h for 1 <= h <= hmax
MomentData moments(MomentData md, const DiskData& data, int hmax);

// {Q^[0]_h, Q^[1]_h} as polynomials in j'
std::pair<UniPoly, UniPoly> qh_polynomials(int h);
// both sides of the binomial identity for one j
std::pair<Rational, Rational> qh_identity_sides(int h, int j);

// Z_eps as {(a, l) -> coefficient of r^a s^l}
struct ZSystem {
  std::array<std::map<std::pair<int, int>, Series>, 2> Z;
  Series eval(int eps, const Series& r, const Series& s, const DiskData& data) const;
};
ZSystem z_system(const DiskData& data);
// Mbar_{sign,h} via Q_h(r d/dr) Z; sign = +1 or -1
Series moment_via_operator(int h, int sign, const ZSystem& z, const DiskData& data);

// variables x_1..x_K at indices 0..K-1, y_1..y_K at K..2K-1, with K = a + b
MultiPoly pab_polynomials(int a, int b);
Series pab_eval(const MultiPoly& P, int K, const DiskData& data);
bool pab_homogeneous(const MultiPoly& P, int K, int degree);

// d^k g_eps / dy^c at y = f(x), with g the inverse of f.
// jinv(i, j) = (df^-1)_{i,j}; deriv(j, {i_1..i_k}) = d^k f_j / dx_{i_1}..dx_{i_k}
template <class V>
struct InverseSystem {
  int dim = 2;
  std::function<V(int, int)> jinv;
  std::function<V(int, const std::vector<int>&)> deriv;
};
template <class V>
V inverse_tree_differential(const InverseSystem<V>& sys, const std::vector<int>& c, int eps, int* tree_count = nullptr);

// leaf-labelled planted trees on k leaves, internal arities >= 2
struct Tree {
  int leaf = -1;  // >= 0 for a leaf
  std::vector<Tree> children;
};
std::vector<Tree> planted_trees(int k);

Series genus1_from_moments(const MomentData& md, const DiskData& data);
// entries of the inverse Jacobian of (R,S) in (t, t1) against the closed form
CheckReport jacobian_check(const DiskData& data);

}  // namespace tightmaps

#include "tightmaps/moments_impl.hpp"
