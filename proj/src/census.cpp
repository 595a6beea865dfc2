#include "tightmaps/census.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include <omp.h>

namespace tightmaps {

namespace {

constexpr int kMaxDarts = 2 * kCensusMaxEdges;

// genus:3 | vertices:4 | count of degree d (1..12):4 each
using Packed = std::uint64_t;

struct Kernel {
  int n = 0;
  int parent[kMaxDarts];
  bool seen[kMaxDarts];

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  // returns false for non-transitive sigma
  bool eval(const int* sigma, Packed& key) {
    for (int d = 0; d < n; ++d) parent[d] = d;
    int comps = n;
    auto unite = [&](int a, int b) {
      a = find(a), b = find(b);
      if (a != b) parent[a] = b, --comps;
    };
    for (int d = 0; d < n; ++d) unite(d, sigma[d]);
    for (int d = 0; d < n; d += 2) unite(d, d + 1);
    if (comps != 1) return false;
    int V = 0;
    std::fill(seen, seen + n, false);
    for (int d = 0; d < n; ++d) {
      if (seen[d]) continue;
      ++V;
      for (int e = d; !seen[e]; e = sigma[e]) seen[e] = true;
    }
    std::fill(seen, seen + n, false);
    int F = 0;
    Packed counts = 0;
    for (int d = 0; d < n; ++d) {
      if (seen[d]) continue;
      ++F;
      int len = 0;
      for (int e = d; !seen[e]; e = sigma[e ^ 1]) seen[e] = true, ++len;
      counts += Packed(1) << (7 + 4 * (len - 1));
    }
    int chi = V - n / 2 + F;
    int g = (2 - chi) / 2;
    key = Packed(g) | (Packed(V) << 3) | counts;
    return true;
  }
};

CensusKey unpack(Packed p, int m) {
  CensusKey k;
  k.genus = int(p & 7);
  k.vertices = int((p >> 3) & 15);
  k.face_count.assign(2 * m + 1, 0);
  for (int d = 1; d <= 2 * m; ++d) k.face_count[d] = int((p >> (7 + 4 * (d - 1))) & 15);
  return k;
}

void check_m(int m) {
  if (m < 0) throw Error(ErrorCode::InvalidRange, "negative edge count");
  if (m > kCensusMaxEdges)
    throw Error(ErrorCode::ScaleExceeded, "census beyond " + std::to_string(kCensusMaxEdges) + " edges");
}

CensusHistogram vertex_map() {
  CensusHistogram h;
  h[CensusKey{0, 1, {1}}] = 1;
  return h;
}

CensusHistogram to_histogram(const std::unordered_map<Packed, std::uint64_t>& raw, int m) {
  CensusHistogram h;
  for (auto& [p, c] : raw) h[unpack(p, m)] += c;
  return h;
}

}  // namespace

// ---- DartStructure

bool DartStructure::transitive() const {
  Kernel k;
  k.n = int(sigma.size());
  Packed p;
  return k.eval(sigma.data(), p);
}

std::vector<int> DartStructure::vertex_of() const {
  std::vector<int> v(sigma.size(), -1);
  int c = 0;
  for (std::size_t d = 0; d < sigma.size(); ++d) {
    if (v[d] >= 0) continue;
    for (int e = int(d); v[e] < 0; e = sigma[e]) v[e] = c;
    ++c;
  }
  return v;
}

std::vector<std::vector<int>> DartStructure::faces() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(sigma.size(), false);
  for (std::size_t d = 0; d < sigma.size(); ++d) {
    if (seen[d]) continue;
    out.emplace_back();
    for (int e = int(d); !seen[e]; e = sigma[e ^ 1]) seen[e] = true, out.back().push_back(e);
  }
  return out;
}

int DartStructure::genus() const {
  auto v = vertex_of();
  int V = v.empty() ? 1 : *std::max_element(v.begin(), v.end()) + 1;
  int F = sigma.empty() ? 1 : int(faces().size());
  return (2 - (V - edges() + F)) / 2;
}

// ---- histograms

CensusHistogram census_histogram_serial(int m) {
  check_m(m);
  if (m == 0) return vertex_map();
  Kernel k;
  k.n = 2 * m;
  std::vector<int> sigma(2 * m);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::unordered_map<Packed, std::uint64_t> raw;
  Packed p;
  do {
    if (k.eval(sigma.data(), p)) ++raw[p];
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return to_histogram(raw, m);
}

CensusHistogram census_histogram_parallel(int m, int threads) {
  check_m(m);
  if (m == 0) return vertex_map();
  const int n = 2 * m;
  std::vector<std::unordered_map<Packed, std::uint64_t>> parts(n);
  if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int first = 0; first < n; ++first) {
    Kernel k;
    k.n = n;
    int sigma[kMaxDarts];
    sigma[0] = first;
    for (int d = 0, i = 1; d < n; ++d)
      if (d != first) sigma[i++] = d;
    auto& raw = parts[first];
    Packed p;
    do {
      if (k.eval(sigma, p)) ++raw[p];
    } while (std::next_permutation(sigma + 1, sigma + n));
  }
  std::unordered_map<Packed, std::uint64_t> all;
  for (auto& part : parts)
    for (auto& [p, c] : part) all[p] += c;
  return to_histogram(all, m);
}

std::uint64_t transitive_count_serial(int m) {
  std::uint64_t total = 0;
  for (auto& [k, c] : census_histogram_serial(m)) total += c;
  return total;
}

const CensusHistogram& census_histogram(int m) {
  check_m(m);
  static std::mutex mu;
  static std::map<int, CensusHistogram> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, census_histogram_parallel(m)).first;
  return it->second;
}

// ---- generating functions

namespace {

Rational falling(int n, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

}  // namespace

CensusResult census_F_detailed(int g, const std::vector<int>& L, int s, int mmax, const WeightSpec& spec) {
  if (g < 0 || s < 0) throw Error(ErrorCode::InvalidRange, "negative genus or vertex count");
  for (int l : L)
    if (l < 1) throw Error(ErrorCode::InvalidIndex, "boundary lengths must be positive");
  check_m(mmax);
  const int n = int(L.size());
  const int order2 = 2 * (mmax + 2 - 2 * g - n - s);
  std::map<int, int> need;
  Rational rooting = 1;
  for (int l : L) ++need[l], rooting *= l;

  std::map<Monomial, Rational> raw, val;
  for (int m = 0; m <= mmax; ++m) {
    Rational norm = 1;
    for (int i = 1; i <= m; ++i) norm *= 2 * i;
    for (auto& [key, count] : census_histogram(m)) {
      if (key.genus != g || key.vertices < s) continue;
      Rational w = rooting * falling(key.vertices, s) * Rational(mpz_class(std::to_string(count)));
      std::vector<int> inner = key.face_count;
      bool ok = true;
      for (auto& [d, c] : need) {
        int have = d < int(inner.size()) ? inner[d] : 0;
        if (have < c) { ok = false; break; }
        w *= falling(have, c);
        inner[d] -= c;
      }
      if (!ok) continue;
      Monomial mono = Monomial::t_power(2 * (key.vertices - s));
      for (int d = 1; d < int(inner.size()) && ok; ++d) {
        if (!inner[d]) continue;
        if (!spec.active(d)) ok = false;
        else mono = mono * Monomial::face(d, inner[d]);
      }
      if (!ok) continue;
      raw[mono] += w;
      val[mono] += w / norm;
    }
  }
  CensusResult res;
  std::vector<Term> rt, vt;
  for (auto& [mono, c] : raw) {
    if (n >= 1) {
      int m = mono.grade2() / 2 - (2 - 2 * g - n - s);
      Rational norm = 1;
      for (int i = 1; i <= m; ++i) norm *= 2 * i;
      Rational q = c / norm;
      if (q.get_den() != 1)
        throw Error(ErrorCode::AssumptionViolated, "labelled count not divisible by 2^m m! at " + mono.to_string());
    }
    rt.emplace_back(mono, c);
  }
  for (auto& [mono, c] : val) vt.emplace_back(mono, c);
  res.raw = Series(order2, std::move(rt));
  res.value = Series(order2, std::move(vt));
  return res;
}

Series census_F(int g, const std::vector<int>& L, int s, int mmax, const WeightSpec& spec) {
  return census_F_detailed(g, L, s, mmax, spec).value;
}

CoefficientTable census_F_table(int g, int n, int s, int Lmax, int mmax, const WeightSpec& spec) {
  CoefficientTable T(g, n + s);
  for (auto& L : multisets(n, 1, Lmax)) {
    Lengths key = L;
    key.insert(key.end(), s, 0);
    T.set(key, census_F(g, L, s, mmax, spec), Provenance::Oracle);
  }
  return T;
}

Series census_T(int g, const Lengths& l, int mmax, const WeightSpec& spec, const TrumpetMatrix& A) {
  Lengths key = canonical(l);
  int s = int(std::count(key.begin(), key.end(), 0));
  int n = int(key.size()) - s;
  int Lmax = n ? key.front() : 1;
  return f_to_t(census_F_table(g, n, s, Lmax, mmax, spec), A).at(key);
}

}  // namespace tightmaps
