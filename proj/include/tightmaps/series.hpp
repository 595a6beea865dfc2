#pragma once

#include <array>
#include <climits>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "tightmaps/error.hpp"

namespace tightmaps {

using Rational = mpq_class;

// Largest face degree that can carry a symbolic weight.
inline constexpr int kMaxFace = 23;

// Doubled truncation order meaning "no truncation".
inline constexpr int kExact = INT_MAX / 8;

inline int whole(int n) { return 2 * n; }

std::string rational_string(const Rational& q);

inline Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

struct VariableId {
  enum class Kind { Vertex, Face } kind = Kind::Vertex;
  int index = 0;

  static VariableId vertex() { return {Kind::Vertex, 0}; }
  static VariableId face(int k);
};

// t^{t2/2} * prod_k t_k^{e_k}
class Monomial {
public:
  Monomial() = default;
  static Monomial t_power(int t2);
  static Monomial face(int k, int e = 1);

  int t2() const { return t2_; }
  int face_exponent(int k) const;
  int max_face() const;
  int face_degree() const;
  int grade2() const { return t2_ + 2 * face_degree(); }
  bool is_one() const;

  Monomial with_t(int t2) const;
  Monomial with_face(int k, int e) const;
  Monomial operator*(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return t2_ == o.t2_ && faces_ == o.faces_; }
  bool operator<(const Monomial& o) const;
  std::size_t hash() const;
  std::string to_string() const;

private:
  std::array<std::uint8_t, kMaxFace + 1> faces_{};
  std::int16_t t2_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

using Term = std::pair<Monomial, Rational>;

enum class Calculus { HalfInteger, Integer };

class Series {
public:
  Series() = default;  // exact zero
  explicit Series(int order2) : order2_(order2) {}
  Series(int order2, std::vector<Term> terms);

  static Series constant(const Rational& c, int order2 = kExact);
  static Series monomial(const Monomial& m, const Rational& c, int order2 = kExact);
  static Series t(int order2 = kExact) { return monomial(Monomial::t_power(2), 1, order2); }
  static Series face(int k, int order2 = kExact) { return monomial(Monomial::face(k), 1, order2); }

  int order2() const { return order2_; }
  bool is_exact() const { return order2_ >= kExact; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  Rational coefficient(const Monomial& m) const;
  // lowest grade present, or the order if none
  int valuation2() const;
  int min_t2() const;
  Rational constant_term() const;
  bool has_odd_t() const;

  Series truncated(int order2) const;
  Series operator-() const;
  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Series& o);

  std::string to_string() const;
  nlohmann::json to_json() const;
  static Series from_json(const nlohmann::json& j);

private:
  int order2_ = kExact;
  std::vector<Term> terms_;  // sorted, no zero coefficients, grade2 <= order2_
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator*(const Series& a, const Series& b);
Series operator*(const Rational& c, const Series& a);
Series operator*(const Series& a, const Rational& c);

// exact comparison up to the common order
bool operator==(const Series& a, const Series& b);
inline bool operator!=(const Series& a, const Series& b) { return !(a == b); }
bool equal_up_to(const Series& a, const Series& b, int order2);

Series add(const Series& a, const Series& b);
Series mul(const Series& a, const Series& b);
Series invert(const Series& a);
Series sqrt(const Series& a);
Series pow(const Series& a, int k);
// a^{p/2}
Series pow_half(const Series& a, int p);
Series divide(const Series& a, const Series& b);
Series shift_t(const Series& a, int t2);
Series derive_t(const Series& a, Calculus mode = Calculus::HalfInteger);
Series derive_face(const Series& a, int k);
Series derive(const Series& a, VariableId v);
Series integrate_t(const Series& a);
Series drop_faces(const Series& a, const std::vector<int>& ks);
Rational coefficient(const Series& a, const Monomial& m);

// c ln t + s
struct LogSeries {
  Rational log_t;
  Series series;
};
LogSeries log(const Series& a);
// requires the ln t marker to vanish
Series log_unit(const Series& a);

}  // namespace tightmaps
