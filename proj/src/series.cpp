#include "tightmaps/series.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace tightmaps {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::NotASquare: return "NotASquare";
    case ErrorCode::HalfIntegerDifferentiation: return "HalfIntegerDifferentiation";
    case ErrorCode::BeyondTruncation: return "BeyondTruncation";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::InsufficientOrders: return "InsufficientOrders";
    case ErrorCode::ParityMismatch: return "ParityMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NotQuasiPolynomial: return "NotQuasiPolynomial";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::IndexBeyondLmax: return "IndexBeyondLmax";
    case ErrorCode::HalfPowerResidue: return "HalfPowerResidue";
    case ErrorCode::InsufficientOrder: return "InsufficientOrder";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::UnsupportedCase: return "UnsupportedCase";
    case ErrorCode::NonBipartiteWeights: return "NonBipartiteWeights";
    case ErrorCode::LogOfNonUnit: return "LogOfNonUnit";
    case ErrorCode::BeyondLmax: return "BeyondLmax";
    case ErrorCode::MissingDependency: return "MissingDependency";
    case ErrorCode::UnsupportedGenus: return "UnsupportedGenus";
    case ErrorCode::SingularDifferential: return "SingularDifferential";
    case ErrorCode::MomentMismatch: return "MomentMismatch";
    case ErrorCode::ScaleExceeded: return "ScaleExceeded";
    case ErrorCode::InactiveWeight: return "InactiveWeight";
    case ErrorCode::Parse: return "Parse";
  }
  return "Error";
}

std::string rational_string(const Rational& q) { return q.get_str(); }

namespace {

int sat_add(int a, int b) {
  if (a >= kExact || b >= kExact) return kExact;
  return a + b;
}

bool term_less(const Term& a, const Term& b) { return a.first < b.first; }

std::vector<Term> collect(std::unordered_map<Monomial, Rational, MonomialHash>& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (sgn(c) != 0) out.emplace_back(m, std::move(c));
  std::sort(out.begin(), out.end(), term_less);
  return out;
}

}  // namespace

VariableId VariableId::face(int k) {
  if (k < 1 || k > kMaxFace) throw Error(ErrorCode::InvalidIndex, "face index " + std::to_string(k));
  return {Kind::Face, k};
}

Monomial Monomial::t_power(int t2) {
  Monomial m;
  m.t2_ = static_cast<std::int16_t>(t2);
  return m;
}

Monomial Monomial::face(int k, int e) { return Monomial().with_face(k, e); }

int Monomial::face_exponent(int k) const {
  if (k < 1 || k > kMaxFace) return 0;
  return faces_[k];
}

int Monomial::max_face() const {
  for (int k = kMaxFace; k >= 1; --k)
    if (faces_[k]) return k;
  return 0;
}

int Monomial::face_degree() const {
  int d = 0;
  for (int k = 1; k <= kMaxFace; ++k) d += faces_[k];
  return d;
}

bool Monomial::is_one() const { return t2_ == 0 && face_degree() == 0; }

Monomial Monomial::with_t(int t2) const {
  Monomial m = *this;
  m.t2_ = static_cast<std::int16_t>(t2);
  return m;
}

Monomial Monomial::with_face(int k, int e) const {
  if (k < 1 || k > kMaxFace) throw Error(ErrorCode::InvalidIndex, "face index " + std::to_string(k));
  if (e < 0 || e > 255) throw Error(ErrorCode::OutOfRange, "face exponent " + std::to_string(e));
  Monomial m = *this;
  m.faces_[k] = static_cast<std::uint8_t>(e);
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  m.t2_ = static_cast<std::int16_t>(t2_ + o.t2_);
  for (int k = 1; k <= kMaxFace; ++k) {
    int e = faces_[k] + o.faces_[k];
    if (e > 255) throw Error(ErrorCode::OutOfRange, "face exponent overflow");
    m.faces_[k] = static_cast<std::uint8_t>(e);
  }
  return m;
}

bool Monomial::operator<(const Monomial& o) const {
  int ga = grade2(), gb = o.grade2();
  if (ga != gb) return ga < gb;
  if (t2_ != o.t2_) return t2_ > o.t2_;
  return faces_ > o.faces_;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ULL ^ static_cast<std::uint16_t>(t2_);
  for (auto b : faces_) h = (h ^ b) * 1099511628211ULL;
  return h;
}

std::string Monomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << '*';
    first = false;
  };
  if (t2_ != 0) {
    sep();
    os << 't';
    if (t2_ % 2 != 0) os << "^(" << t2_ << "/2)";
    else if (t2_ != 2) os << '^' << t2_ / 2;
  }
  for (int k = 1; k <= kMaxFace; ++k) {
    if (!faces_[k]) continue;
    sep();
    os << 't' << k;
    if (faces_[k] != 1) os << '^' << int(faces_[k]);
  }
  if (first) os << '1';
  return os.str();
}

Series::Series(int order2, std::vector<Term> terms) : order2_(order2) {
  std::sort(terms.begin(), terms.end(), term_less);
  for (auto& t : terms) {
    if (t.first.grade2() > order2_) continue;
    if (!terms_.empty() && terms_.back().first == t.first)
      terms_.back().second += t.second;
    else
      terms_.push_back(std::move(t));
  }
  std::erase_if(terms_, [](const Term& t) { return sgn(t.second) == 0; });
}

Series Series::constant(const Rational& c, int order2) { return monomial(Monomial(), c, order2); }

Series Series::monomial(const Monomial& m, const Rational& c, int order2) {
  Series s(order2);
  if (sgn(c) != 0 && m.grade2() <= order2) s.terms_.emplace_back(m, c);
  return s;
}

Rational Series::coefficient(const Monomial& m) const {
  if (m.grade2() > order2_)
    throw Error(ErrorCode::BeyondTruncation, m.to_string() + " beyond order " + std::to_string(order2_) + "/2");
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term(m, 0), term_less);
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

int Series::valuation2() const { return terms_.empty() ? order2_ : terms_.front().first.grade2(); }

int Series::min_t2() const {
  int v = INT_MAX;
  for (auto& t : terms_) v = std::min(v, t.first.t2());
  return v;
}

Rational Series::constant_term() const {
  for (auto& t : terms_)
    if (t.first.is_one()) return t.second;
  return 0;
}

bool Series::has_odd_t() const {
  for (auto& t : terms_)
    if (t.first.t2() % 2 != 0) return true;
  return false;
}

Series Series::truncated(int order2) const {
  Series s(std::min(order2, order2_));
  for (auto& t : terms_)
    if (t.first.grade2() <= s.order2_) s.terms_.push_back(t);
  return s;
}

Series Series::operator-() const {
  Series s = *this;
  for (auto& t : s.terms_) t.second = -t.second;
  return s;
}

Series& Series::operator+=(const Series& o) { return *this = add(*this, o); }
Series& Series::operator-=(const Series& o) { return *this = add(*this, -o); }
Series& Series::operator*=(const Series& o) { return *this = mul(*this, o); }

std::string Series::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms_) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << '-';
    first = false;
    Rational a = abs(c);
    if (m.is_one()) os << a.get_str();
    else {
      if (a != 1) os << a.get_str() << '*';
      os << m.to_string();
    }
  }
  if (first) os << '0';
  if (!is_exact()) os << " + O(" << order2_ << "/2)";
  return os.str();
}

nlohmann::json Series::to_json() const {
  nlohmann::json j;
  j["order"] = is_exact() ? std::string("inf") : std::to_string(order2_) + "/2";
  auto arr = nlohmann::json::array();
  for (auto& [m, c] : terms_) {
    nlohmann::json faces = nlohmann::json::object();
    for (int k = 1; k <= kMaxFace; ++k)
      if (m.face_exponent(k)) faces[std::to_string(k)] = m.face_exponent(k);
    arr.push_back({{"t2", m.t2()}, {"faces", faces}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  }
  j["terms"] = arr;
  return j;
}

Series Series::from_json(const nlohmann::json& j) {
  std::string ord = j.at("order").get<std::string>();
  int order2 = kExact;
  if (ord != "inf") {
    auto slash = ord.find('/');
    if (slash == std::string::npos || ord.substr(slash) != "/2") throw Error(ErrorCode::Parse, "order " + ord);
    order2 = std::stoi(ord.substr(0, slash));
  }
  std::vector<Term> terms;
  for (auto& t : j.at("terms")) {
    Monomial m = Monomial::t_power(t.at("t2").get<int>());
    for (auto& [k, e] : t.at("faces").items()) m = m.with_face(std::stoi(k), e.get<int>());
    Rational c(mpz_class(t.at("num").get<std::string>()), mpz_class(t.at("den").get<std::string>()));
    c.canonicalize();
    terms.emplace_back(m, c);
  }
  return Series(order2, std::move(terms));
}

Series add(const Series& a, const Series& b) {
  int order = std::min(a.order2(), b.order2());
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      if (ia->first.grade2() <= order) out.push_back(*ia);
      ++ia;
    } else if (ia == ea || ib->first < ia->first) {
      if (ib->first.grade2() <= order) out.push_back(*ib);
      ++ib;
    } else {
      Rational c = ia->second + ib->second;
      if (sgn(c) != 0 && ia->first.grade2() <= order) out.emplace_back(ia->first, c);
      ++ia;
      ++ib;
    }
  }
  return Series(order, std::move(out));
}

Series operator+(const Series& a, const Series& b) { return add(a, b); }
Series operator-(const Series& a, const Series& b) { return add(a, -b); }
Series operator*(const Series& a, const Series& b) { return mul(a, b); }

Series operator*(const Rational& c, const Series& a) {
  if (sgn(c) == 0) return Series(a.order2());
  std::vector<Term> out = a.terms();
  for (auto& t : out) t.second *= c;
  return Series(a.order2(), std::move(out));
}

Series operator*(const Series& a, const Rational& c) { return c * a; }

Series mul(const Series& a, const Series& b) {
  int va = a.valuation2(), vb = b.valuation2();
  int order = std::min(sat_add(a.order2(), vb), sat_add(b.order2(), va));
  if (a.is_exact() && b.is_exact()) order = kExact;
  if (a.empty() || b.empty()) return Series(order);
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.size() * 2 + b.size() * 2);
  Rational prod;
  for (auto& [ma, ca] : a.terms()) {
    int ga = ma.grade2();
    if (sat_add(ga, vb) > order) break;
    for (auto& [mb, cb] : b.terms()) {
      if (ga + mb.grade2() > order) break;
      mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      auto [it, fresh] = acc.try_emplace(ma * mb, prod);
      if (!fresh) it->second += prod;
    }
  }
  return Series(order, collect(acc));
}

bool equal_up_to(const Series& a, const Series& b, int order2) {
  if (order2 > a.order2() || order2 > b.order2()) return false;
  Series d = (a - b).truncated(order2);
  return d.empty();
}

bool operator==(const Series& a, const Series& b) {
  return equal_up_to(a, b, std::min(a.order2(), b.order2()));
}

Series shift_t(const Series& a, int t2) {
  std::vector<Term> out;
  out.reserve(a.size());
  for (auto& [m, c] : a.terms()) out.emplace_back(m.with_t(m.t2() + t2), c);
  return Series(sat_add(a.order2(), t2), std::move(out));
}

namespace {

// a = t^{mt/2} u with u a genuine power series
std::pair<int, Series> split_t(const Series& a) {
  if (a.empty()) throw Error(ErrorCode::ZeroConstantTerm, "series vanishes to its order");
  int mt = a.min_t2();
  return {mt, shift_t(a, -mt)};
}

Series invert_unit(const Series& u) {
  Rational c = u.constant_term();
  if (sgn(c) == 0) throw Error(ErrorCode::ZeroConstantTerm, "no constant term after factoring t");
  Series one = Series::constant(1);
  Series b = Series::constant(1 / c);
  for (int it = 0; it < 64; ++it) {
    Series e = (one - u * b).truncated(u.order2());
    if (e.empty()) return b.truncated(u.order2());
    b = b + b * e;
  }
  throw Error(ErrorCode::NonConvergence, "series inversion");
}

}  // namespace

Series invert(const Series& a) {
  auto [mt, u] = split_t(a);
  if (u.is_exact()) {
    if (u.size() == 1 && sgn(u.constant_term()) != 0) return shift_t(Series::constant(1 / u.constant_term()), -mt);
    if (sgn(u.constant_term()) == 0) throw Error(ErrorCode::ZeroConstantTerm, "no constant term after factoring t");
    throw Error(ErrorCode::UnsupportedCase, "inverse of an exact non-monomial needs a truncation order");
  }
  return shift_t(invert_unit(u), -mt);
}

Series divide(const Series& a, const Series& b) { return a * invert(b); }

Series sqrt(const Series& a) {
  if (a.empty()) throw Error(ErrorCode::NotASquare, "zero series");
  auto [mt, u] = split_t(a);
  if (mt % 2 != 0) throw Error(ErrorCode::NotASquare, "odd half-power of t");
  Rational c = u.constant_term();
  if (sgn(c) <= 0) throw Error(ErrorCode::NotASquare, "constant term " + c.get_str());
  mpz_class num = c.get_num(), den = c.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    throw Error(ErrorCode::NotASquare, "constant term " + c.get_str());
  Rational root(::sqrt(num), ::sqrt(den));
  root.canonicalize();
  if (u.is_exact() && u.size() == 1) return shift_t(Series::constant(root), mt / 2);
  if (u.is_exact()) throw Error(ErrorCode::UnsupportedCase, "square root of an exact non-monomial needs a truncation order");
  Series one = Series::constant(1);
  Series y = Series::constant(1 / root);
  Rational half(1, 2);
  bool done = false;
  for (int it = 0; it < 64 && !done; ++it) {
    Series e = (one - u * y * y).truncated(u.order2());
    if (e.empty()) done = true;
    else y = y + half * (y * e);
  }
  if (!done) throw Error(ErrorCode::NonConvergence, "square root");
  return shift_t((u * y).truncated(u.order2()), mt / 2);
}

Series pow(const Series& a, int k) {
  if (k < 0) return pow(invert(a), -k);
  Series result = Series::constant(1);
  Series base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Series pow_half(const Series& a, int p) {
  if (p % 2 == 0) return pow(a, p / 2);
  return pow(sqrt(a), p);
}

Series derive_t(const Series& a, Calculus mode) {
  std::vector<Term> out;
  for (auto& [m, c] : a.terms()) {
    if (m.t2() % 2 != 0 && mode == Calculus::Integer)
      throw Error(ErrorCode::HalfIntegerDifferentiation, m.to_string());
    if (m.t2() == 0) continue;
    out.emplace_back(m.with_t(m.t2() - 2), c * frac(m.t2(), 2));
  }
  return Series(sat_add(a.order2(), -2), std::move(out));
}

Series derive_face(const Series& a, int k) {
  if (k < 1 || k > kMaxFace) throw Error(ErrorCode::InvalidIndex, "face index " + std::to_string(k));
  std::vector<Term> out;
  for (auto& [m, c] : a.terms()) {
    int e = m.face_exponent(k);
    if (e == 0) continue;
    out.emplace_back(m.with_face(k, e - 1), c * e);
  }
  return Series(sat_add(a.order2(), -2), std::move(out));
}

Series derive(const Series& a, VariableId v) {
  return v.kind == VariableId::Kind::Vertex ? derive_t(a) : derive_face(a, v.index);
}

Series integrate_t(const Series& a) {
  std::vector<Term> out;
  for (auto& [m, c] : a.terms()) {
    if (m.t2() == -2) throw Error(ErrorCode::UnsupportedCase, "antiderivative of 1/t");
    out.emplace_back(m.with_t(m.t2() + 2), c / frac(m.t2() + 2, 2));
  }
  return Series(sat_add(a.order2(), 2), std::move(out));
}

Series drop_faces(const Series& a, const std::vector<int>& ks) {
  std::vector<Term> out;
  for (auto& t : a.terms()) {
    bool keep = true;
    for (int k : ks)
      if (t.first.face_exponent(k)) keep = false;
    if (keep) out.push_back(t);
  }
  return Series(a.order2(), std::move(out));
}

Rational coefficient(const Series& a, const Monomial& m) { return a.coefficient(m); }

LogSeries log(const Series& a) {
  auto [mt, u] = split_t(a);
  if (u.constant_term() != 1) throw Error(ErrorCode::LogOfNonUnit, "constant term " + u.constant_term().get_str());
  if (u.is_exact() && u.size() == 1) return {frac(mt, 2), Series()};
  // E(log u) = E(u)/u with E the grading derivation
  std::vector<Term> eu;
  for (auto& [m, c] : u.terms())
    if (!m.is_one()) eu.emplace_back(m, c * m.grade2());
  Series q = Series(u.order2(), std::move(eu)) * invert_unit(u);
  std::vector<Term> out;
  for (auto& [m, c] : q.terms()) {
    if (m.grade2() <= 0) throw Error(ErrorCode::LogOfNonUnit, "non-positive grade in log argument");
    out.emplace_back(m, c / m.grade2());
  }
  return {frac(mt, 2), Series(q.order2(), std::move(out))};
}

Series log_unit(const Series& a) {
  LogSeries l = log(a);
  if (sgn(l.log_t) != 0) throw Error(ErrorCode::LogOfNonUnit, "uncancelled ln t marker");
  return l.series;
}

}  // namespace tightmaps
