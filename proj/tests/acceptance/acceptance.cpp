// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// RAMSEY_LONG=1 adds the long runs (SAT at k = 6, majority at k = 7).

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "ramsey/beatty.hpp"
#include "ramsey/cli.hpp"
#include "ramsey/core.hpp"
#include "ramsey/detector.hpp"
#include "ramsey/doubling.hpp"
#include "ramsey/majority.hpp"
#include "ramsey/robust.hpp"
#include "ramsey/satgen.hpp"
#include "ramsey/uniform.hpp"

using namespace ramsey;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << " s";
  return o.str();
}

bool long_runs() {
  const char* v = std::getenv("RAMSEY_LONG");
  return v && *v && std::string(v) != "0";
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// 2^i * t / (2^k - 1) rounded to nearest, or -1 at a half-integer.
std::int64_t nearest(std::int64_t num, std::int64_t den) {
  if ((2 * num) % den == 0 && ((2 * num) / den) % 2 != 0) return -1;
  return (2 * num + den) / (2 * den);
}

Outcome sat_verification() {
  Outcome o;
  std::vector<int> ks{3, 4, 5};
  if (long_runs()) ks.push_back(6);
  const auto start = Clock::now();
  double gated = 0;
  for (int k : ks) {
    const auto f = cnf_generate(k);
    if (static_cast<std::int64_t>(f.clauses.size()) != power_clause_count(k)) o.fail("clause count at k=" + std::to_string(k));
    try {
      const auto r = solve_external(f, default_solver_command(), std::chrono::hours(1));
      if (r.status != SolverStatus::Unsat) o.fail("k=" + std::to_string(k) + " " + std::string(solver_status_name(r.status)));
    } catch (const std::exception& e) {
      o.fail("k=" + std::to_string(k) + ": " + e.what());
    }
    if (k <= 5) gated = seconds_since(start);
  }
  if (gated >= 60) o.fail("k<=5 took " + fmt(gated));
  if (o.pass) o.detail = "UNSAT for k=3..5 in " + fmt(gated) + (long_runs() ? ", k=6 in " + fmt(seconds_since(start)) : "");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const std::vector<std::pair<int, std::int64_t>> shapes{{3, 7}, {3, 14}, {4, 15}, {5, 31}, {3, 63}, {6, 63}};
  std::mt19937_64 rng(20240601);
  int samples = 0, witnesses = 0, blacks = 0;
  for (int round = 0; round < 200; ++round) {
    for (const auto& [k, n] : shapes) {
      const auto inst = discretize(power_tuple(k), n / ((std::int64_t{1} << k) - 1));
      const auto red_tenths = 1 + rng() % 9;
      Colouring c(n, Colour::Blue);
      for (std::int64_t v = 0; v < n; ++v) {
        if (rng() % 10 < red_tenths) c.set(v, Colour::Red);
      }
      if (rng() % 4 == 0) {
        c.set_black(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)));
        ++blacks;
      }
      const auto dp = detect_dp(c, inst);
      const auto bf = detect_bruteforce(c, inst);
      ++samples;
      if (dp != bf) o.fail("mismatch on " + c.str());
      if (bf) {
        ++witnesses;
        if (!validate_witness(c, inst, *bf)) o.fail("invalid witness on " + c.str());
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(samples) + " colourings (" + std::to_string(blacks) + " with a black vertex), " +
               std::to_string(witnesses) + " witnesses, 0 mismatches";
  }
  return o;
}

// Independent check of a residue witness: red positions joined by a
// permutation of the jumps.
bool residue_witness_ok(const ResidueInstance& inst, const ResidueWitness& w) {
  auto chain = w.chain;
  auto jumps = inst.jumps;
  std::sort(chain.begin(), chain.end());
  std::sort(jumps.begin(), jumps.end());
  if (chain != jumps) return false;
  std::int64_t pos = w.start;
  for (auto j : w.chain) {
    if (pos >= inst.window) return false;
    pos = (pos + j) % inst.m;
  }
  return pos == w.start;
}

Outcome uniform_residues() {
  Outcome o;
  const auto start = Clock::now();
  std::int64_t checked = 0;
  for (int k = 3; k <= 14; ++k) {
    const auto sweep = residue_sweep(k, (std::int64_t{1} << (k + 1)) - 2, workers());
    checked += sweep.checked;
    if (!sweep.failures.empty()) o.fail("k=" + std::to_string(k) + " t=" + std::to_string(sweep.failures.front()));
  }
  for (int k = 3; k <= 10; ++k) {
    for (std::int64_t t = 1; t <= (std::int64_t{1} << (k + 1)) - 2; t += 1 + k) {
      const auto inst = ResidueInstance::make(k, t);
      const auto w = residue_check(inst);
      if (!w || !residue_witness_ok(inst, *w)) o.fail("bad witness k=" + std::to_string(k) + " t=" + std::to_string(t));
    }
  }
  const double sweep_time = seconds_since(start);
  if (sweep_time >= 600) o.fail("sweep took " + fmt(sweep_time));
  int disagreements = 0;
  for (int k = 3; k <= 6; ++k) {
    for (std::int64_t t = 1; t <= 50; ++t) {
      const auto [c, inst] = discretize_uniform(power_tuple(k), t);
      if (detect(c, inst, ClassFilter::RedOnly).has_value() != residue_check(k, t).has_value()) ++disagreements;
    }
  }
  if (disagreements) o.fail(std::to_string(disagreements) + " disagreements with the detector");
  if (o.pass) o.detail = std::to_string(checked) + " (k,t) pairs in " + fmt(sweep_time) + ", detector agrees on k<=6, t<=50";
  return o;
}

std::vector<DistanceTuple> sampled_nonpower_tuples() {
  std::vector<DistanceTuple> out{DistanceTuple::parse("1/2,1/3,1/6")};
  std::set<std::string> seen{out.front().str()};
  std::mt19937_64 rng(7);
  while (out.size() < 20) {
    const int k = out.size() % 2 ? 4 : 3;
    const std::int64_t q = k + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(13 - k));
    std::set<std::int64_t> cuts;
    while (static_cast<int>(cuts.size()) < k - 1) cuts.insert(1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q - 1)));
    std::vector<Rational> d;
    std::int64_t prev = 0;
    for (auto c : cuts) {
      d.emplace_back(BigInt{c - prev}, BigInt{q});
      prev = c;
    }
    d.emplace_back(BigInt{q - prev}, BigInt{q});
    std::sort(d.begin(), d.end(), [](const Rational& a, const Rational& b) { return b < a; });
    DistanceTuple tuple(d);
    if (tuple.is_power() || !seen.insert(tuple.str()).second) continue;
    out.push_back(std::move(tuple));
  }
  return out;
}

Outcome nonpower_pipeline() {
  Outcome o;
  const auto tuples = sampled_nonpower_tuples();
  std::int64_t max_found = 0;
  for (const auto& d : tuples) {
    const auto t = nonpower_witness(d, 50);
    if (!t) {
      o.fail("no t for " + d.str());
      continue;
    }
    max_found = std::max(max_found, *t);
    const auto [c, inst] = discretize_uniform(d, *t);
    if (detect_bruteforce(c, inst)) o.fail("c_" + std::to_string(*t) + " has a copy of " + d.str());
  }
  if (nonpower_witness(tuples.front(), 50) != 1) o.fail("(1/2,1/3,1/6) does not give t = 1");
  for (int k = 3; k <= 6; ++k) {
    if (nonpower_witness(power_tuple(k), 50)) o.fail("power tuple k=" + std::to_string(k) + " got a t");
  }
  if (o.pass) {
    o.detail = std::to_string(tuples.size()) + " non-power tuples avoided by c_t (t <= " + std::to_string(max_found) +
               "), power tuples k=3..6 give none";
  }
  return o;
}

Outcome beatty_suite() {
  Outcome o;
  for (int k = 3; k <= 10; ++k) {
    const auto pair = BeattyPair::power(k);
    const auto v = partition_check(pair, 100000);
    if (!v.ok()) o.fail("k=" + std::to_string(k) + ": " + v.describe());
    const auto f = fraenkel_diagnostics(pair, 100000);
    const bool consecutive = std::all_of(f.consecutive_condition.begin(), f.consecutive_condition.end(), [](bool b) { return b; });
    if (!f.symmetric || !consecutive || !f.power || !f.balanced || !f.densities_match_alphas) {
      o.fail("diagnostics at k=" + std::to_string(k));
    }
  }
  // Word for k = 3 recomputed from floor((2m+1) * p / 2q) with alpha = p/q.
  const std::vector<std::pair<std::int64_t, std::int64_t>> alphas{{7, 4}, {7, 2}, {7, 1}};
  std::vector<int> word(7, 0);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const auto [p, q] = alphas[i];
    for (std::int64_t m = 0;; ++m) {
      const std::int64_t term = (2 * m + 1) * p / (2 * q);
      if (term >= 7) break;
      word[static_cast<std::size_t>(term)] = static_cast<int>(i) + 1;
    }
  }
  const std::vector<int> expected{1, 2, 1, 3, 1, 2, 1};
  if (word != expected) o.fail("independent word differs");
  if (fraenkel_diagnostics(BeattyPair::power(3), 1000).word != expected) o.fail("k=3 word");
  const auto dens = densities(BalancedWord(expected));
  const auto power3 = power_tuple(3);
  if (dens != std::vector<Rational>(power3.distances().begin(), power3.distances().end())) {
    o.fail("k=3 densities");
  }
  std::ostringstream out, err;
  const int code = cli::dispatch({"--json", "fraenkel-sweep", "--count", "2000", "--max-den", "8"}, out, err);
  const auto doc = nlohmann::json::parse(out.str(), nullptr, false);
  if (code != 0 || doc.is_discarded() || !doc["non_power"].empty()) o.fail("random sweep: exit " + std::to_string(code));
  else if (doc["partitioning"].get<int>() == 0) o.fail("random sweep never hit a partition");
  if (o.pass) {
    o.detail = "power pairs k=3..10 partition [0,1e5), symmetric with the consecutive condition; sweep found " +
               std::to_string(doc["partitioning"].get<int>()) + " partitions, all power";
  }
  return o;
}

Outcome jump_identity() {
  Outcome o;
  std::int64_t checked = 0;
  for (int k = 3; k <= 10; ++k) {
    const auto d = power_tuple(k);
    const std::int64_t den = (std::int64_t{1} << k) - 1;
    for (std::int64_t t = 1; t <= 10000; ++t) {
      const auto r = jump_counts(d, t);
      ++checked;
      if (r.blocked || !r.identity_holds) {
        o.fail("k=" + std::to_string(k) + " t=" + std::to_string(t));
        continue;
      }
      std::int64_t sum = 0;
      for (int i = 1; i <= k; ++i) {
        const auto c = nearest((std::int64_t{1} << (k - i)) * t, den);
        if (c < 0 || c != r.counts[static_cast<std::size_t>(i - 1)]) o.fail("count k=" + std::to_string(k) + " t=" + std::to_string(t));
        sum += c;
      }
      if (sum != t) o.fail("sum k=" + std::to_string(k) + " t=" + std::to_string(t));
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " (k,t) pairs, never blocked, sum of counts = t";
  return o;
}

bool prefix_ok(const std::vector<Rational>& xs, const std::vector<int>& perm) {
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> ids(xs.size());
  std::iota(ids.begin(), ids.end(), 1);
  if (sorted != ids) return false;
  Rational s = 0;
  for (int i : perm) {
    s += xs[static_cast<std::size_t>(i - 1)];
    if (s < Rational(0) || !(s < Rational(1))) return false;
  }
  return true;
}

Outcome doubling_equivalence() {
  Outcome o;
  std::int64_t checked = 0;
  for (int k = 3; k <= 12; ++k) {
    for (std::int64_t t = 1; t <= (std::int64_t{1} << (k + 1)) - 2; ++t) {
      const auto orbit = orbit_from_uniform(k, t);
      const auto perm = prefix_permutation(orbit.xs);
      ++checked;
      if (perm.has_value() != residue_check(k, t).has_value()) o.fail("k=" + std::to_string(k) + " t=" + std::to_string(t));
      if (perm && !prefix_ok(orbit.xs, *perm)) o.fail("bad permutation k=" + std::to_string(k) + " t=" + std::to_string(t));
    }
  }
  if (prefix_permutation(parse_rational_list("3/5,3/5,3/5,-9/10,-9/10"))) o.fail("counterexample list got a permutation");
  if (o.pass) o.detail = std::to_string(checked) + " (k,t) pairs agree; (3/5,3/5,3/5,-9/10,-9/10) has none";
  return o;
}

Outcome parity() {
  Outcome o;
  std::mt19937_64 rng(99);
  int samples = 0;
  for (int k = 3; k <= 5; ++k) {
    const auto inst = power_instance(k);
    for (int s = 0; s < 10000; ++s) {
      Colouring c(inst.n, Colour::Blue);
      const auto red_tenths = 1 + rng() % 9;
      for (std::int64_t v = 0; v < inst.n; ++v) {
        if (rng() % 10 < red_tenths) c.set(v, Colour::Red);
      }
      const auto counts = count_copies(c, inst);
      ++samples;
      if ((counts.red + counts.blue) % 2 != 0) o.fail("odd count on " + c.str());
    }
  }
  const auto red7 = count_copies(Colouring(7, Colour::Red), power_instance(3));
  if (red7.red != 14 || red7.blue != 0) o.fail("all-red 7-gon gives (" + std::to_string(red7.red) + ", " + std::to_string(red7.blue) + ")");
  if (o.pass) o.detail = std::to_string(samples) + " colourings with even counts; all-red 7-gon gives (14, 0)";
  return o;
}

Outcome robustness() {
  Outcome o;
  const std::vector<std::pair<std::string, std::int64_t>> checks{
      {"5/8,1/4,1/8", 8}, {"3/4,1/6,1/12", 12}, {"7/12,1/4,1/6", 12}};
  double slowest = 0;
  for (const auto& [gaps, n] : checks) {
    const auto start = Clock::now();
    const auto v = nearly_ramsey_finite_check(DistanceTuple::parse(gaps), n, 1);
    const double took = seconds_since(start);
    slowest = std::max(slowest, took);
    if (!v.verified) o.fail("(" + gaps + ") at N=" + std::to_string(n) + " has a counterexample");
    if (took >= 1) o.fail("(" + gaps + ") took " + fmt(took));
  }
  for (const char* gaps : {"5/8,1/4,1/8", "3/4,1/6,1/12", "7/12,1/4,1/6", "1/2,1/3,1/6", "4/7,2/7,1/7"}) {
    const auto s = strongly_suitable_search(DistanceTuple::parse(gaps), 500);
    if (s.t) o.fail(std::string(gaps) + " strongly suitable at t=" + std::to_string(*s.t));
  }
  if (o.pass) o.detail = "three finite checks verified (slowest " + fmt(slowest) + "); no strongly suitable t <= 500";
  return o;
}

Outcome majority_check(int k) {
  Outcome o;
  const auto params = MajorityParams::make(k, Rational(BigInt{1}, BigInt{100}));
  const auto start = Clock::now();
  const auto v = majority_verify(params, workers());
  const double took = seconds_since(start);
  if (!v.no_red_copy) o.fail("red copy found");
  if (k == 6 && v.grid != 25200) o.fail("grid " + std::to_string(v.grid));
  if (v.density_gap != Rational(BigInt{1}, BigInt{8}) - Rational(BigInt{10}, BigInt{100})) o.fail("density gap " + v.density_gap.str());
  const auto c = majority_colouring(params, v.grid);
  const Rational gap(BigInt{c.count(Colour::Red) - c.count(Colour::Blue)}, BigInt{v.grid});
  if (gap != v.density_gap) o.fail("vertex count gives gap " + gap.str());
  if (k == 6) {
    if (detect_dp(c, discretize(power_tuple(k), v.grid / 63), ClassFilter::RedOnly)) o.fail("path DP finds a red copy");
    if (took >= 300) o.fail("took " + fmt(took));
  }
  if (o.pass) {
    o.detail = "k=" + std::to_string(k) + ": no red copy on grid " + std::to_string(v.grid) + ", density gap " +
               v.density_gap.str() + ", " + fmt(took);
  }
  return o;
}

Outcome majority() {
  auto o = majority_check(6);
  if (long_runs()) {
    const auto seven = majority_check(7);
    if (!seven.pass) o.fail(seven.detail);
    else o.detail += "; " + seven.detail;
  }
  return o;
}

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "ramsey-acceptance";
  std::filesystem::create_directories(dir);
  std::string reference_out, reference_report;
  int items = 0;
  for (const char* w : {"1", "4", "8"}) {
    const auto report = dir / (std::string("report-") + w + ".json");
    std::ostringstream out, err;
    const int code = cli::dispatch({"--json", "--parallel", w, "batch", "sweeps/acceptance.sweep", "--report", report.string()},
                                   out, err);
    if (code != 0) {
      o.fail(std::string("batch with ") + w + " workers exited " + std::to_string(code));
      continue;
    }
    const auto text = read_all(report);
    if (reference_out.empty()) {
      reference_out = out.str();
      reference_report = text;
      items = nlohmann::json::parse(text)["total"].get<int>();
    } else if (out.str() != reference_out || text != reference_report) {
      o.fail(std::string("output with ") + w + " workers differs");
    }
  }
  if (o.pass) o.detail = std::to_string(items) + "-item sweep passes with identical JSON for 1, 4 and 8 workers";
  return o;
}

}  // namespace

int main() {
  std::filesystem::current_path(RAMSEY_SOURCE_DIR);
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"SAT verification", sat_verification},
      {"oracle equivalence", oracle_equivalence},
      {"uniform residue check", uniform_residues},
      {"non-power pipeline", nonpower_pipeline},
      {"Beatty and balanced words", beatty_suite},
      {"jump identity", jump_identity},
      {"doubling equivalence", doubling_equivalence},
      {"parity", parity},
      {"robustness", robustness},
      {"majority colouring", majority},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
