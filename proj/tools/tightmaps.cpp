#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "tightmaps/census.hpp"
#include "tightmaps/closed_forms.hpp"
#include "tightmaps/moments.hpp"
#include "tightmaps/sampling.hpp"
#include "tightmaps/verify.hpp"

using namespace tightmaps;
using nlohmann::json;

namespace {

struct RunConfig {
  int order = 6;
  std::string faces = "2,4";
  bool bipartite = false;
  int lmax = 0;  // 0: largest requested length
  int genus = 0;
  std::string lengths;
  std::string method = "closed";
  std::string suite = "all";
  int threads = 0;
  std::string output;
  int mmax = 5;
  int vertices = 0;
  int hmax = 3;
  int kmax = 2;
  int arity = 3;
  bool trace = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_list(const std::string& s, const char* what) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad entry '") + item + "' in " + what);
    }
  }
  return out;
}

WeightSpec make_spec(const RunConfig& c) {
  auto faces = parse_list(c.faces, "--faces");
  for (int f : faces)
    if (f < 1 || f > kMaxFace) throw UsageError("face degree out of range: " + std::to_string(f));
  if (std::set<int>(faces.begin(), faces.end()).size() != faces.size()) throw UsageError("repeated face degree in --faces");
  WeightSpec spec = WeightSpec::make(faces, c.order);
  if (c.bipartite && !spec.bipartite()) throw UsageError("--bipartite contradicts odd degrees in --faces");
  return spec;
}

std::vector<int> require_lengths(const RunConfig& c) {
  auto l = parse_list(c.lengths, "--lengths");
  for (int x : l)
    if (x < 0) throw UsageError("negative length");
  return l;
}

int lmax_for(const RunConfig& c, const std::vector<int>& l) {
  int m = 1;
  for (int x : l) m = std::max(m, x);
  if (c.lmax && c.lmax < m) throw UsageError("--lmax smaller than a requested length");
  return c.lmax ? c.lmax : m;
}

DiskData disk(const RunConfig& c, int kmax) {
  WeightSpec spec = make_spec(c);
  return derivatives(solve_RS(spec), std::max(kmax, c.kmax));
}

json cmd_solve(const RunConfig& c) { return disk_json(disk(c, c.kmax)); }

json cmd_trumpet(const RunConfig& c) {
  if (c.lmax < 1) throw UsageError("trumpet needs --lmax >= 1");
  DiskData data = disk(c, 1);
  TrumpetMatrix A = trumpet_matrix(c.lmax, data);
  json a = json::object(), inv = json::object();
  for (int L = 1; L <= c.lmax; ++L)
    for (int l = 1; l <= L; ++l) {
      std::string key = std::to_string(L) + "," + std::to_string(l);
      a[key] = A.a(L, l).to_json();
      inv[key] = A.inv(L, l).to_json();
    }
  return {{"lmax", c.lmax}, {"A", a}, {"inverse", inv}};
}

json cmd_tight(const RunConfig& c) {
  auto l = require_lengths(c);
  if (c.genus < 0) throw UsageError("negative genus");
  json out{{"genus", c.genus}, {"lengths", l}, {"method", c.method}};
  if (c.method == "closed") {
    DiskData data = disk(c, int(l.size()));
    Series v;
    if (c.genus == 0 && (l.size() == 2 || l.size() == 3)) v = genus0_closed(l, data);
    else if (c.genus == 0 && l.size() > 3) {
      int odd = 0;
      for (int x : l) odd += x % 2;
      Lengths k;
      for (int x : l)
        if (x % 2) k.push_back(x);
      for (int x : l)
        if (x % 2 == 0) k.push_back(x);
      if (odd == 0) v = tgen(l, data);
      else if (odd == 2) v = tgen_quasi(k, data);
      else throw Error(ErrorCode::UnsupportedCase, "closed form covers zero or two odd lengths");
    } else if (c.genus == 1 && l.empty()) v = genus1_F(data);
    else if (c.genus == 1 && l.size() == 1) {
      if (data.spec().bipartite()) v = genus1_T_bipartite(l[0], data);
      else v = genus1_T(l[0], data, trumpet_matrix(lmax_for(c, l), data));
    } else throw Error(ErrorCode::UnsupportedCase, "no closed form for this (g, n)");
    out["series"] = v.to_json();
  } else if (c.method == "insertion") {
    DiskData data = disk(c, 4);
    TableBuilder b(data, trumpet_matrix(lmax_for(c, l), data));
    out["series"] = b.build(c.genus, l).to_json();
    if (c.trace) out["trace"] = b.trace_json();
  } else if (c.method == "census") {
    WeightSpec spec = make_spec(c);
    DiskData data = solve_RS(spec);
    out["series"] = census_T(c.genus, l, c.mmax, spec, trumpet_matrix(lmax_for(c, l), data)).to_json();
  } else {
    throw UsageError("--method must be closed, insertion or census");
  }
  if (c.trace && c.method != "insertion") throw UsageError("--trace needs --method insertion");
  return out;
}

json cmd_cf(const RunConfig& c) {
  auto l = require_lengths(c);
  if (l.empty()) throw UsageError("cf needs --lengths");
  DiskData data = disk(c, int(l.size()) + c.vertices);
  return {{"lengths", l}, {"vertices", c.vertices}, {"series", collet_fusy(l, c.vertices, data).to_json()}};
}

json cmd_moments(const RunConfig& c) {
  DiskData data = disk(c, 1);
  MomentData md = moments(compute_uk(data, std::max(data.spec().max_face(), c.hmax + 1)), data, c.hmax);
  return md.to_json();
}

json cmd_quasipoly(const RunConfig& c) {
  if (c.lmax < 1) throw UsageError("quasipoly needs --lmax");
  if (c.arity == 2 && c.genus == 0) throw Error(ErrorCode::NotQuasiPolynomial, "(0,2) is not a quasi-polynomial");
  DiskData data = disk(c, 3);
  return quasipoly_fit(c.genus, c.arity, c.lmax, data, trumpet_matrix(c.lmax, data)).to_json();
}

json cmd_census(const RunConfig& c) {
  auto l = require_lengths(c);
  WeightSpec spec = make_spec(c);
  CensusResult r = census_F_detailed(c.genus, l, c.vertices, c.mmax, spec);
  json per_m = json::array();
  for (int m = 0; m <= c.mmax; ++m) {
    std::uint64_t total = 0, in_genus = 0;
    for (auto& [k, n] : census_histogram(m)) {
      total += n;
      if (k.genus == c.genus) in_genus += n;
    }
    per_m.push_back({{"edges", m}, {"transitive", total}, {"genus_" + std::to_string(c.genus), in_genus}});
  }
  return {{"genus", c.genus}, {"boundaries", l}, {"vertices", c.vertices}, {"edges", c.mmax},
          {"series", r.value.to_json()}, {"raw", r.raw.to_json()}, {"structures", per_m}};
}

json cmd_verify(const RunConfig& c, bool& ok) {
  VerifyOptions o;
  o.order = c.order;
  o.mmax = c.mmax;
  static const std::map<std::string, int> names{{"disk", 1}, {"census", 2}, {"trumpet", 3}, {"recursion", 4},
                                                {"genus1", 5}, {"quasipoly", 6}, {"auxiliary", 7}, {"operators", 8}};
  std::vector<CriterionResult> results;
  auto extra = [&](const std::string& title, CheckReport (*f)(const VerifyOptions&)) {
    Criterion cr{0, title, f};
    results.push_back(run_criterion(cr, o));
  };
  if (c.suite == "moments") extra("moments", suite_moments);
  else if (c.suite == "trees") extra("trees", suite_trees);
  else if (c.suite == "discrete") extra("discrete", suite_discrete);
  else {
    int only = 0;
    if (c.suite != "all") {
      if (auto it = names.find(c.suite); it != names.end()) only = it->second;
      else {
        try {
          only = std::stoi(c.suite);
        } catch (const std::exception&) {
          only = -1;
        }
        if (only < 1 || only > 8) throw UsageError("unknown suite '" + c.suite + "'");
      }
    }
    for (auto& cr : criteria())
      if (!only || cr.id == only) results.push_back(run_criterion(cr, o));
  }
  json arr = json::array();
  ok = true;
  for (auto& r : results) {
    json j = r.to_json();
    j.erase("seconds");
    arr.push_back(j);
    ok = ok && r.pass();
  }
  return {{"suite", c.suite}, {"pass", ok}, {"results", arr}};
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"tight maps: exact generating functions and checks"};
  app.set_config("--config", "", "key = value file");
  app.require_subcommand(1, 1);
  app.add_option("--order,-N", c.order, "truncation order N")->check(CLI::Range(0, 64));
  app.add_option("--faces", c.faces, "active face degrees, comma separated");
  app.add_flag("--bipartite", c.bipartite, "require even face degrees");
  app.add_option("--lmax", c.lmax, "largest boundary length")->check(CLI::Range(0, kMaxFace));
  app.add_option("--genus,-g", c.genus, "genus")->check(CLI::Range(0, 3));
  app.add_option("--lengths,--boundaries", c.lengths, "boundary lengths, comma separated");
  app.add_option("--method", c.method, "closed | insertion | census");
  app.add_option("--suite", c.suite, "all | 1..8 | disk census trumpet recursion genus1 quasipoly auxiliary operators | moments | trees | discrete");
  app.add_option("--threads", c.threads, "worker threads")->envname("TIGHTMAPS_THREADS")->check(CLI::Range(0, 1024));
  app.add_option("--output,-o", c.output, "write JSON here instead of stdout");
  app.add_option("--mmax,--edges", c.mmax, "census edge bound")->check(CLI::Range(0, 64));
  app.add_option("--vertices,-s", c.vertices, "boundary vertices")->check(CLI::Range(0, 8));
  app.add_option("--hmax", c.hmax, "largest moment index")->check(CLI::Range(1, 16));
  app.add_option("--kmax", c.kmax, "derivatives to cache")->check(CLI::Range(0, 16));
  app.add_option("--arity,-n", c.arity, "number of boundaries for quasipoly")->check(CLI::Range(1, 8));
  app.add_flag("--trace", c.trace, "emit the insertion dependency DAG");

  const std::vector<std::pair<std::string, std::string>> subs{
      {"solve", "disk functions R, S"},        {"trumpet", "trumpet matrix and inverse"},
      {"tight", "tight generating function"},  {"cf", "Collet-Fusy closed form"},
      {"moments", "spectral moments"},         {"quasipoly", "quasi-polynomial fit"},
      {"census", "brute-force map census"},    {"verify", "acceptance checks"}};
  for (auto& [name, help] : subs) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (c.threads > 0) omp_set_num_threads(c.threads);

  std::string cmd = app.get_subcommands().front()->get_name();
  json out;
  int rc = 0;
  try {
    if (cmd == "solve") out = cmd_solve(c);
    else if (cmd == "trumpet") out = cmd_trumpet(c);
    else if (cmd == "tight") out = cmd_tight(c);
    else if (cmd == "cf") out = cmd_cf(c);
    else if (cmd == "moments") out = cmd_moments(c);
    else if (cmd == "quasipoly") out = cmd_quasipoly(c);
    else if (cmd == "census") out = cmd_census(c);
    else if (cmd == "verify") {
      bool ok = false;
      out = cmd_verify(c, ok);
      rc = ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    out = {{"error", error_name(e.code())}, {"message", e.what()}};
    rc = 1;
  }
  std::string text = out.dump(2) + "\n";
  if (c.output.empty()) std::cout << text;
  else {
    std::ofstream f(c.output);
    if (!f) {
      std::cerr << "cannot write " << c.output << "\n";
      return 2;
    }
    f << text;
  }
  return rc;
}
