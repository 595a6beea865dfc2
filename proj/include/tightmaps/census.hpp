#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tightmaps/disk.hpp"
#include "tightmaps/table.hpp"

namespace tightmaps {

inline constexpr int kCensusMaxEdges = 6;

// sigma on darts 0..2m-1, alpha(d) = d ^ 1
struct DartStructure {
  std::vector<int> sigma;
  int edges() const { return int(sigma.size()) / 2; }
  bool transitive() const;
  std::vector<int> vertex_of() const;  // cycle index of sigma per dart
  std::vector<std::vector<int>> faces() const;  // cycles of sigma o alpha
  int genus() const;
};

struct CensusKey {
  int genus = 0;
  int vertices = 0;
  std::vector<int> face_count;  // face_count[d] = faces of degree d
  bool operator<(const CensusKey& o) const {
    if (genus != o.genus) return genus < o.genus;
    if (vertices != o.vertices) return vertices < o.vertices;
    return face_count < o.face_count;
  }
  bool operator==(const CensusKey& o) const {
    return genus == o.genus && vertices == o.vertices && face_count == o.face_count;
  }
};

// labelled transitive sigma counts for a fixed edge number
using CensusHistogram = std::map<CensusKey, std::uint64_t>;

CensusHistogram census_histogram_serial(int m);
// partitioned by sigma(0); threads <= 0 uses the OpenMP default
CensusHistogram census_histogram_parallel(int m, int threads = 0);
std::uint64_t transitive_count_serial(int m);

// cached parallel histograms for 0..mmax
const CensusHistogram& census_histogram(int m);

// F^(g)_{L} with s marked vertices, truncated at grade mmax + 2 - 2g - n - s
Series census_F(int g, const std::vector<int>& L, int s, int mmax, const WeightSpec& spec);
// descending keys (L_1..L_n, 0^s) for all L_i in [1, Lmax]
CoefficientTable census_F_table(int g, int n, int s, int Lmax, int mmax, const WeightSpec& spec);
Series census_T(int g, const Lengths& l, int mmax, const WeightSpec& spec, const TrumpetMatrix& A);

struct CensusResult {
  Series value;
  Series raw;  // labelled counts before division by 2^m m!
};
CensusResult census_F_detailed(int g, const std::vector<int>& L, int s, int mmax, const WeightSpec& spec);

}  // namespace tightmaps
