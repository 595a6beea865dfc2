#include "tightmaps/table.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace tightmaps {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::Insertion: return "insertion";
    case Provenance::Oracle: return "oracle";
    case Provenance::Derived: return "derived";
  }
  return "derived";
}

Lengths canonical(Lengths l) {
  for (int x : l)
    if (x < 0) throw Error(ErrorCode::InvalidIndex, "negative boundary length");
  std::sort(l.begin(), l.end(), std::greater<int>());
  return l;
}

std::string lengths_string(const Lengths& l) {
  std::string s = "(";
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
  return s + ")";
}

std::vector<Lengths> multisets(int n, int lo, int hi) {
  std::vector<Lengths> out;
  Lengths cur;
  std::function<void(int)> rec = [&](int top) {
    if (int(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int v = top; v >= lo; --v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(hi);
  return out;
}

void CoefficientTable::set(const Lengths& l, Series value, Provenance p) {
  if (int(l.size()) != n_) throw Error(ErrorCode::InvalidIndex, "table arity " + std::to_string(n_) + " vs key " + lengths_string(l));
  entries_[canonical(l)] = Entry{std::move(value), p};
}

const Series* CoefficientTable::find(const Lengths& l) const {
  auto it = entries_.find(canonical(l));
  return it == entries_.end() ? nullptr : &it->second.value;
}

const Series& CoefficientTable::at(const Lengths& l) const {
  const Series* s = find(l);
  if (!s) throw Error(ErrorCode::MissingDependency, "g=" + std::to_string(g_) + " entry " + lengths_string(canonical(l)));
  return *s;
}

nlohmann::json CoefficientTable::to_json() const {
  nlohmann::json j;
  j["genus"] = g_;
  j["arity"] = n_;
  auto arr = nlohmann::json::array();
  for (auto& [l, e] : entries_)
    arr.push_back({{"lengths", l}, {"provenance", provenance_name(e.provenance)}, {"series", e.value.to_json()}});
  j["entries"] = arr;
  return j;
}

namespace {

enum class Direction { Forward, Backward };

CoefficientTable transform(const CoefficientTable& in, const TrumpetMatrix& A, Direction dir) {
  CoefficientTable out(in.genus(), in.arity());
  const int n = in.arity();
  std::map<int, std::vector<Lengths>> by_zeros;
  for (auto& [l, e] : in.entries()) by_zeros[int(std::count(l.begin(), l.end(), 0))].push_back(l);

  for (auto& [s, keys] : by_zeros) {
    const int m = n - s;
    if (m == 0) {
      for (auto& l : keys) out.set(l, in.at(l), Provenance::Derived);
      continue;
    }
    int bound = 0;
    for (auto& l : keys) bound = std::max(bound, l.front());
    if (bound > A.lmax()) throw Error(ErrorCode::IndexBeyondLmax, "length " + std::to_string(bound) + " beyond Lmax " + std::to_string(A.lmax()));
    for (auto& l : multisets(m, 1, bound)) {
      Lengths full = l;
      full.resize(n, 0);
      if (!in.contains(full)) throw Error(ErrorCode::MissingDependency, "table incomplete at " + lengths_string(full));
    }
    // dense tensor over [1..bound]^m
    std::size_t size = 1;
    for (int i = 0; i < m; ++i) size *= bound;
    auto decode = [&](std::size_t idx) {
      Lengths l(m);
      for (int i = m - 1; i >= 0; --i) {
        l[i] = int(idx % bound) + 1;
        idx /= bound;
      }
      return l;
    };
    std::vector<Series> X(size);
    for (std::size_t idx = 0; idx < size; ++idx) {
      Lengths l = decode(idx);
      Lengths full = l;
      full.resize(n, 0);
      X[idx] = in.at(full);
      if (dir == Direction::Forward) {
        int prod = std::accumulate(l.begin(), l.end(), 1, std::multiplies<int>());
        X[idx] = Rational(prod) * X[idx];
      }
    }
    std::size_t stride = 1;
    for (int axis = m - 1; axis >= 0; --axis) {
      std::vector<Series> Y(size);
      for (std::size_t idx = 0; idx < size; ++idx) {
        int L = int((idx / stride) % bound) + 1;
        std::size_t base = idx - std::size_t(L - 1) * stride;
        Series acc;
        for (int l = 1; l <= L; ++l) {
          const Series& c = dir == Direction::Forward ? A.a(L, l) : A.inv(L, l);
          if (c.empty() && c.is_exact()) continue;
          acc = acc + c * X[base + std::size_t(l - 1) * stride];
        }
        Y[idx] = std::move(acc);
      }
      X = std::move(Y);
      stride *= bound;
    }
    for (std::size_t idx = 0; idx < size; ++idx) {
      Lengths l = decode(idx);
      if (!std::is_sorted(l.begin(), l.end(), std::greater<int>())) continue;
      Series v = X[idx];
      if (dir == Direction::Backward) {
        int prod = std::accumulate(l.begin(), l.end(), 1, std::multiplies<int>());
        v = frac(1, prod) * v;
      }
      Lengths full = l;
      full.resize(n, 0);
      out.set(full, std::move(v), Provenance::Derived);
    }
  }
  return out;
}

}  // namespace

CoefficientTable t_to_f(const CoefficientTable& T, const TrumpetMatrix& A) { return transform(T, A, Direction::Forward); }
CoefficientTable f_to_t(const CoefficientTable& F, const TrumpetMatrix& A) { return transform(F, A, Direction::Backward); }

Series normalize_tau(const Series& T, const Lengths& l, const DiskData& data) {
  int sum = std::accumulate(l.begin(), l.end(), 0);
  Series tau = T * data.R_half_power(-sum);
  for (auto& [m, c] : tau.terms())
    if ((m.t2() - sum) % 2 != 0)
      throw Error(ErrorCode::HalfPowerResidue, "unexpected half-power of t in " + lengths_string(l));
  return tau;
}

CoefficientTable zhukovsky_extract(const CoefficientTable& F, const TrumpetMatrix& A, const DiskData& data) {
  CoefficientTable T = f_to_t(F, A);
  CoefficientTable out(T.genus(), T.arity());
  for (auto& [l, e] : T.entries()) {
    int prod = 1;
    for (int x : l)
      if (x > 0) prod *= x;
    out.set(l, Rational(prod) * normalize_tau(e.value, l, data), Provenance::Derived);
  }
  return out;
}

}  // namespace tightmaps
