#include "ramsey/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "ramsey/beatty.hpp"
#include "ramsey/core.hpp"
#include "ramsey/detector.hpp"
#include "ramsey/doubling.hpp"
#include "ramsey/majority.hpp"
#include "ramsey/parallel.hpp"
#include "ramsey/robust.hpp"
#include "ramsey/satgen.hpp"
#include "ramsey/uniform.hpp"

namespace ramsey::cli {

namespace {

using nlohmann::json;

struct Globals {
  bool json = false;
  unsigned workers = 1;
  std::uint64_t seed = 0;
};

struct Result {
  int code = kOk;
  json doc = json::object();
  std::string human;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write " + path);
}

json rationals(std::span<const Rational> xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(x.str());
  return a;
}

json colouring_json(const Colouring& c) {
  json j;
  j["n"] = c.n();
  j["colours"] = c.str();
  j["black"] = c.black() ? json(*c.black()) : json(nullptr);
  return j;
}

json witness_json(const CopyWitness& w) {
  return json{{"vertices", w.vertices}, {"gap_order", w.gap_order}, {"colour", witness_colour_name(w.colour)}};
}

std::string join(const std::vector<std::int64_t>& xs, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + std::to_string(xs[i]);
  return s;
}

std::string join_ints(const std::vector<int>& xs, const char* sep = " ") {
  return join(std::vector<std::int64_t>(xs.begin(), xs.end()), sep);
}

// Gap lengths given as integers summing to n, or as fractions scaled onto Z_n.
DiscreteInstance instance_for(const std::string& gaps, std::int64_t n) {
  if (gaps.find('/') == std::string::npos && gaps.find('.') == std::string::npos) {
    return DiscreteInstance::make(n, parse_integer_list(gaps));
  }
  const DistanceTuple d = DistanceTuple::parse(gaps);
  const std::int64_t base = d.common_denominator();
  if (n % base != 0) {
    throw DomainError("tuple " + d.str() + " does not fit Z_" + std::to_string(n) + " (needs a multiple of " +
                      std::to_string(base) + ")");
  }
  return discretize(d, n / base);
}

// Independent stream per sample so that results do not depend on scheduling.
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::uint64_t below(std::mt19937_64& g, std::uint64_t n) { return g() % n; }

Colouring random_colouring(std::mt19937_64& g, std::int64_t n, std::uint64_t red_tenths) {
  Colouring c(n, Colour::Blue);
  for (std::int64_t v = 0; v < n; ++v) {
    if (below(g, 10) < red_tenths) c.set(v, Colour::Red);
  }
  return c;
}

// ---- subcommands -----------------------------------------------------------

struct CheckOpts {
  std::string input, gaps, restrict;
  bool dp = false, brute = false, count = false;
};

Result run_check(const CheckOpts& o, const Globals& g) {
  const Colouring c = parse_colouring(read_file(o.input));
  const DiscreteInstance inst = instance_for(o.gaps, c.n());
  Result r;
  r.doc["n"] = inst.n;
  r.doc["gaps"] = inst.gaps;
  if (o.count) {
    const auto counts = count_copies(c, inst);
    r.doc["red"] = counts.red;
    r.doc["blue"] = counts.blue;
    r.doc["total"] = counts.red + counts.blue;
    r.human = "red copies: " + std::to_string(counts.red) + "\nblue copies: " + std::to_string(counts.blue) + "\n";
    return r;
  }
  std::optional<CyclicOrderSet> restriction;
  if (!o.restrict.empty()) {
    if (o.dp) throw DomainError("--restrict needs the brute-force detector");
    restriction = CyclicOrderSet::parse(read_file(o.restrict), inst);
  }
  std::optional<CopyWitness> w;
  if (o.dp) {
    w = detect_dp(c, inst);
  } else if (o.brute || restriction) {
    w = detect_bruteforce(c, inst, restriction ? &*restriction : nullptr, ClassFilter::Both, g.workers);
  } else {
    w = detect(c, inst);
  }
  r.doc["found"] = w.has_value();
  r.doc["witness"] = w ? witness_json(*w) : json(nullptr);
  if (w) {
    r.human = witness_json(*w).dump() + "\n";
  } else {
    r.human = "no monochromatic copy\n";
    r.code = kNegative;
  }
  return r;
}

struct UniformOpts {
  int k = 3;
  std::int64_t max_t = 0;
};

Result run_uniform_check(const UniformOpts& o, const Globals& g) {
  if (o.k < 3 || o.k > 24) throw DomainError("k must be in [3, 24]");
  const std::int64_t m = (std::int64_t{1} << (o.k + 1)) - 2;
  const std::int64_t max_t = o.max_t > 0 ? o.max_t : m;
  const auto sweep = residue_sweep(o.k, max_t, g.workers);
  Result r;
  r.doc["k"] = o.k;
  r.doc["max_t"] = max_t;
  r.doc["checked"] = sweep.checked;
  r.doc["failures"] = sweep.failures;
  r.doc["all_pass"] = sweep.failures.empty();
  r.human = "k = " + std::to_string(o.k) + ": " + std::to_string(sweep.checked) + " values of t checked, " +
            std::to_string(sweep.failures.size()) + " without a red copy";
  if (!sweep.failures.empty()) r.human += " (" + join(sweep.failures) + ")";
  r.human += "\n";
  if (!sweep.failures.empty()) r.code = kNegative;
  return r;
}

struct WitnessSearchOpts {
  std::string gaps;
  std::int64_t max_t = 50;
};

Result run_witness_search(const WitnessSearchOpts& o, const Globals&) {
  const DistanceTuple d = DistanceTuple::parse(o.gaps);
  const auto t = nonpower_witness(d, o.max_t);
  Result r;
  r.doc["tuple"] = rationals(d.distances());
  r.doc["is_power"] = d.is_power();
  r.doc["max_t"] = o.max_t;
  r.doc["t"] = t ? json(*t) : json(nullptr);
  r.human = t ? std::to_string(*t) + "\n" : "none\n";
  if (!t) r.code = kNegative;
  if (t && d.is_power()) {
    r.doc["refutes"] = "uniform colouring avoids the (k,2)-power";
    r.human = "REFUTATION: c_" + std::to_string(*t) + " has no monochromatic copy of the (k,2)-power\n";
    r.code = kRefutation;
  }
  return r;
}

struct BeattyOpts {
  std::string alphas, betas;
  bool half = false, diagnostics = false;
  std::int64_t limit = 0;
};

json fraenkel_json(const FraenkelReport& f) {
  return json{{"period", f.period},
              {"word", f.word},
              {"exact", f.exact},
              {"symmetric", f.symmetric},
              {"consecutive_condition", f.consecutive_condition},
              {"densities", rationals(f.densities)},
              {"densities_match_alphas", f.densities_match_alphas},
              {"balanced", f.balanced},
              {"power", f.power}};
}

std::string_view kind_name(PartitionVerdict::Kind k) {
  switch (k) {
    case PartitionVerdict::Kind::Ok:
      return "ok";
    case PartitionVerdict::Kind::Collision:
      return "collision";
    case PartitionVerdict::Kind::Gap:
      return "gap";
    case PartitionVerdict::Kind::Negative:
      return "negative";
  }
  return "?";
}

Result run_beatty_check(const BeattyOpts& o, const Globals&) {
  auto alphas = parse_rational_list(o.alphas);
  std::vector<Rational> betas;
  if (o.half) {
    for (const auto& a : alphas) betas.push_back(a / Rational(2));
  } else if (!o.betas.empty()) {
    betas = parse_rational_list(o.betas);
  } else {
    betas.assign(alphas.size(), Rational(0));
  }
  const BeattyPair pair(std::move(alphas), std::move(betas));
  const auto v = partition_check(pair, o.limit);
  Result r;
  r.doc["alphas"] = rationals(pair.alphas);
  r.doc["betas"] = rationals(pair.betas);
  r.doc["limit"] = o.limit;
  r.doc["verdict"] = kind_name(v.kind);
  r.doc["value"] = v.ok() ? json(nullptr) : json(v.value);
  r.doc["sequences"] = v.kind == PartitionVerdict::Kind::Collision
                           ? json::array({v.first + 1, v.second + 1})
                           : (v.kind == PartitionVerdict::Kind::Negative ? json::array({v.first + 1}) : json::array());
  r.doc["exact"] = v.exact;
  r.doc["description"] = v.describe();
  r.human = v.describe() + "\n";
  if (o.diagnostics && v.ok()) {
    const auto f = fraenkel_diagnostics(pair, o.limit);
    r.doc["diagnostics"] = fraenkel_json(f);
    r.human += "period " + std::to_string(f.period) + ", word " + join_ints(f.word, "") +
               (f.symmetric ? ", symmetric" : ", not symmetric") + "\n";
  }
  if (!v.ok()) r.code = kNegative;
  return r;
}

Result run_balanced_check(const std::string& period, const Globals&) {
  const auto w = BalancedWord::parse(period);
  const auto v = balanced_check(w);
  const auto dens = densities(w);
  Result r;
  r.doc["period"] = w.period;
  r.doc["balanced"] = v.balanced;
  r.doc["densities"] = rationals(dens);
  if (!v.balanced) {
    r.doc["letter"] = v.letter;
    r.doc["length"] = v.length;
    r.doc["heavy_window"] = v.heavy_window;
    r.doc["light_window"] = v.light_window;
    r.human = "not balanced: letter " + std::to_string(v.letter) + ", windows of length " +
              std::to_string(v.length) + " at " + std::to_string(v.heavy_window) + " and " +
              std::to_string(v.light_window) + "\n";
    r.code = kNegative;
  } else {
    r.human = "balanced; densities";
    for (const auto& x : dens) r.human += " " + x.str();
    r.human += "\n";
  }
  return r;
}

struct DoublingOpts {
  int k = 0;
  std::int64_t t = 0;
  std::string xs, x1;
};

Result run_doubling(const DoublingOpts& o, const Globals&) {
  Result r;
  std::vector<Rational> xs;
  if (!o.xs.empty()) {
    xs = parse_rational_list(o.xs);
  } else if (!o.x1.empty()) {
    if (o.k < 1) throw DomainError("--x1 needs --k");
    const auto orbit = orbit_from_seed(Rational::parse(o.x1), o.k);
    if (!orbit) {
      r.doc["periodic"] = false;
      r.doc["permutation"] = nullptr;
      r.human = "orbit does not close after " + std::to_string(o.k) + " steps\n";
      r.code = kNegative;
      return r;
    }
    xs = orbit->xs;
  } else {
    if (o.k < 3 || o.t < 1) throw DomainError("give --k and --t, --xs, or --x1 with --k");
    xs = orbit_from_uniform(o.k, o.t).xs;
  }
  r.doc["xs"] = rationals(xs);
  const auto perm = prefix_permutation(xs);
  r.doc["permutation"] = perm ? json(*perm) : json(nullptr);
  r.human = perm ? join_ints(*perm) + "\n" : "none\n";
  if (!perm) r.code = kNegative;
  return r;
}

struct SuitableOpts {
  std::string gaps;
  std::int64_t t = 1, max_t = 500, n = 0;
};

Result run_suitable(const SuitableOpts& o, const Globals&) {
  const DistanceTuple d = DistanceTuple::parse(o.gaps);
  if (o.t < 1) throw DomainError("t must be positive");
  const bool suitable = is_suitable(d, o.t);
  Result r;
  r.doc["tuple"] = rationals(d.distances());
  r.doc["t"] = o.t;
  r.doc["suitable"] = suitable;
  r.doc["strongly_suitable"] = d.k() == 3 ? json(is_strongly_suitable(d, o.t)) : json(nullptr);
  r.human = std::string(suitable ? "suitable" : "not suitable");
  if (d.k() == 3) r.human += r.doc["strongly_suitable"].get<bool>() ? ", strongly suitable" : ", not strongly suitable";
  r.human += "\n";
  if (!suitable) r.code = kNegative;
  return r;
}

Result run_suitable_search(const SuitableOpts& o, const Globals&) {
  const DistanceTuple d = DistanceTuple::parse(o.gaps);
  const auto s = strongly_suitable_search(d, o.max_t);
  Result r;
  r.doc["tuple"] = rationals(d.distances());
  r.doc["max_t"] = o.max_t;
  r.doc["candidate_set_empty"] = s.candidate_set_empty;
  r.doc["t"] = s.t ? json(*s.t) : json(nullptr);
  if (s.t) {
    r.human = std::to_string(*s.t) + "\n";
  } else {
    r.human = s.candidate_set_empty ? "none (candidate set is empty)\n" : "none\n";
    r.code = kNegative;
  }
  return r;
}

Result run_nearly_ramsey(const SuitableOpts& o, const Globals& g) {
  const DistanceTuple d = DistanceTuple::parse(o.gaps);
  const auto v = nearly_ramsey_finite_check(d, o.n, g.workers);
  Result r;
  r.doc["tuple"] = rationals(d.distances());
  r.doc["n"] = o.n;
  r.doc["verified"] = v.verified;
  r.doc["colourings_checked"] = v.colourings_checked;
  r.doc["counterexample"] = v.counterexample ? colouring_json(*v.counterexample) : json(nullptr);
  if (v.verified) {
    r.human = "every colouring of Z_" + std::to_string(o.n) + " with vertex 0 black contains a copy (" +
              std::to_string(v.colourings_checked) + " colourings)\n";
  } else {
    r.human = "counterexample: " + v.counterexample->str() + " (vertex 0 black)\n";
    r.code = kNegative;
  }
  return r;
}

struct MajorityOpts {
  int k = 6;
  std::string eps, emit;
};

Result run_majority(const MajorityOpts& o, const Globals& g) {
  const auto params = MajorityParams::make(o.k, Rational::parse(o.eps));
  const auto v = majority_verify(params, g.workers);
  if (!o.emit.empty()) write_file(o.emit, serialize_colouring(majority_colouring(params, v.grid)));
  Result r;
  r.doc["k"] = o.k;
  r.doc["eps"] = params.eps.str();
  r.doc["grid"] = v.grid;
  r.doc["red"] = v.red;
  r.doc["blue"] = v.blue;
  r.doc["density_gap"] = v.density_gap.str();
  r.doc["no_red_copy"] = v.no_red_copy;
  r.doc["witness"] = v.witness ? witness_json(*v.witness) : json(nullptr);
  if (v.no_red_copy) {
    r.human = "no red copy on Z_" + std::to_string(v.grid) + "; red is denser by " + v.density_gap.str() + "\n";
  } else {
    r.human = "RED COPY FOUND at vertices " + join(v.witness->vertices) + "\n";
    r.code = kRefutation;
  }
  return r;
}

struct CnfOpts {
  int k = 3;
  std::string out, solver;
  double timeout = 3600;
  std::int64_t drop = 0;
};

Result run_cnf(const CnfOpts& o, const Globals& g) {
  const auto f = cnf_generate(o.k);
  const std::string text = dimacs_write(f);
  Result r;
  r.doc["k"] = o.k;
  r.doc["num_vars"] = f.num_vars;
  r.doc["num_clauses"] = f.clauses.size();
  r.doc["out"] = o.out.empty() ? json(nullptr) : json(o.out);
  if (!o.out.empty()) {
    write_file(o.out, text);
    r.human = "wrote " + std::to_string(f.clauses.size()) + " clauses over " + std::to_string(f.num_vars) +
              " variables to " + o.out + "\n";
  } else if (!g.json) {
    r.human = text;
  }
  return r;
}

Result run_solve(const CnfOpts& o, const Globals&) {
  auto f = cnf_generate(o.k);
  if (o.drop != 0) {
    if (o.drop < 1 || o.drop > static_cast<std::int64_t>(f.clauses.size())) {
      throw DomainError("--drop must be in [1, " + std::to_string(f.clauses.size()) + "]");
    }
    f.clauses.erase(f.clauses.begin() + (o.drop - 1));
  }
  const std::string solver = o.solver.empty() ? default_solver_command() : o.solver;
  const auto outcome = solve_external(f, solver, std::chrono::duration<double>(o.timeout));
  Result r;
  r.doc["k"] = o.k;
  r.doc["num_clauses"] = f.clauses.size();
  r.doc["dropped"] = o.drop == 0 ? json(nullptr) : json(o.drop);
  r.doc["status"] = solver_status_name(outcome.status);
  r.doc["model"] = outcome.model ? colouring_json(*outcome.model) : json(nullptr);
  std::ostringstream time;
  time.precision(3);
  time << std::fixed << outcome.solver_time.count();
  r.human = std::string(solver_status_name(outcome.status)) + " (" + time.str() + " s)\n";
  if (outcome.model) r.human += outcome.model->str() + "\n";
  switch (outcome.status) {
    case SolverStatus::Unsat:
      r.code = o.drop == 0 ? kOk : kNegative;
      break;
    case SolverStatus::Sat:
      r.code = o.drop == 0 ? kRefutation : kOk;
      break;
    case SolverStatus::Unknown:
      r.code = kUnknown;
      break;
  }
  return r;
}

struct SweepOpts {
  std::int64_t count = 1000;
  int k = 3;
  std::int64_t max_den = 8;
};

Result run_oracle_sweep(const SweepOpts& o, const Globals& g) {
  static const std::vector<std::pair<int, std::int64_t>> shapes = {{3, 7}, {3, 14}, {4, 15}, {5, 31},
                                                                   {3, 63}, {6, 63}};
  struct Sample {
    bool witness = false;
    bool mismatch = false;
  };
  std::vector<Sample> samples(static_cast<std::size_t>(o.count));
  parallel_for(samples.size(), g.workers, [&](std::size_t i) {
    auto rng = sample_rng(g.seed, i);
    const auto [k, n] = shapes[below(rng, shapes.size())];
    const auto inst = discretize(power_tuple(k), n / ((std::int64_t{1} << k) - 1));
    Colouring c = random_colouring(rng, n, 1 + below(rng, 9));
    if (below(rng, 4) == 0) c.set_black(static_cast<std::int64_t>(below(rng, static_cast<std::uint64_t>(n))));
    const auto dp = detect_dp(c, inst);
    const auto bf = detect_bruteforce(c, inst);
    samples[i].witness = bf.has_value();
    samples[i].mismatch = dp != bf || (bf && !validate_witness(c, inst, *bf));
  });
  std::int64_t witnesses = 0;
  std::vector<std::int64_t> mismatches;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    witnesses += samples[i].witness ? 1 : 0;
    if (samples[i].mismatch) mismatches.push_back(static_cast<std::int64_t>(i));
  }
  Result r;
  r.doc["seed"] = g.seed;
  r.doc["samples"] = o.count;
  r.doc["with_witness"] = witnesses;
  r.doc["mismatches"] = mismatches;
  r.human = std::to_string(o.count) + " colourings, " + std::to_string(witnesses) + " with a copy, " +
            std::to_string(mismatches.size()) + " disagreements\n";
  if (!mismatches.empty()) r.code = kNegative;
  return r;
}

Result run_parity_sweep(const SweepOpts& o, const Globals& g) {
  if (o.k < 3 || o.k > 10) throw DomainError("k must be in [3, 10]");
  const auto inst = power_instance(o.k);
  std::vector<CopyCounts> counts(static_cast<std::size_t>(o.count));
  parallel_for(counts.size(), g.workers, [&](std::size_t i) {
    auto rng = sample_rng(g.seed, i);
    counts[i] = count_copies(random_colouring(rng, inst.n, 1 + below(rng, 9)), inst);
  });
  std::vector<std::int64_t> odd;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if ((counts[i].red + counts[i].blue) % 2 != 0) odd.push_back(static_cast<std::int64_t>(i));
  }
  Result r;
  r.doc["k"] = o.k;
  r.doc["seed"] = g.seed;
  r.doc["samples"] = o.count;
  r.doc["odd"] = odd;
  r.human = std::to_string(o.count) + " colourings of Z_" + std::to_string(inst.n) + ", " +
            std::to_string(odd.size()) + " with an odd number of monochromatic copies\n";
  if (!odd.empty()) r.code = kRefutation;
  return r;
}

Result run_fraenkel_sweep(const SweepOpts& o, const Globals& g) {
  if (o.max_den < 2 || o.max_den > 64) throw DomainError("--max-den must be in [2, 64]");
  std::vector<Rational> fractions;
  for (std::int64_t q = 2; q <= o.max_den; ++q) {
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) == 1) fractions.emplace_back(BigInt{p}, BigInt{q});
    }
  }
  std::sort(fractions.begin(), fractions.end());
  std::vector<std::array<Rational, 3>> triples;
  for (const auto& a : fractions) {
    for (const auto& b : fractions) {
      if (!(b < a)) continue;
      const Rational c = Rational(1) - a - b;
      if (c.sign() > 0 && c < b && c.den() <= o.max_den) triples.push_back({a, b, c});
    }
  }
  const auto power = power_tuple(3);

  struct Sample {
    bool partitions = false;
    bool non_power = false;
    std::vector<Rational> alphas, betas;
  };
  std::vector<Sample> samples(static_cast<std::size_t>(o.count));
  parallel_for(samples.size(), g.workers, [&](std::size_t i) {
    auto rng = sample_rng(g.seed, i);
    const auto& tr = triples[below(rng, triples.size())];
    std::vector<Rational> alphas, betas;
    for (const auto& x : tr) alphas.push_back(Rational(1) / x);
    const bool half = below(rng, 3) == 0;
    for (const auto& a : alphas) {
      if (half) {
        betas.push_back(a / Rational(2));
        continue;
      }
      const auto q = static_cast<std::int64_t>(1 + below(rng, static_cast<std::uint64_t>(o.max_den)));
      const auto top = to_int64((a * Rational(q)).ceil());
      betas.emplace_back(BigInt{static_cast<std::int64_t>(below(rng, static_cast<std::uint64_t>(top)))}, BigInt{q});
    }
    const BeattyPair pair(alphas, betas);
    BigInt offset = 0;
    for (const auto& b : betas) offset = std::max(offset, b.floor());
    const auto v = partition_check(pair, to_int64(offset) + pair.period() + 1);
    Sample s;
    s.partitions = v.ok() && v.exact;
    s.non_power = s.partitions && !std::equal(tr.begin(), tr.end(), power.distances().begin());
    s.alphas = std::move(alphas);
    s.betas = std::move(betas);
    samples[i] = std::move(s);
  });
  std::int64_t partitions = 0;
  json non_power = json::array();
  for (const auto& s : samples) {
    partitions += s.partitions ? 1 : 0;
    if (s.non_power) non_power.push_back(json{{"alphas", rationals(s.alphas)}, {"betas", rationals(s.betas)}});
  }
  Result r;
  r.doc["seed"] = g.seed;
  r.doc["samples"] = o.count;
  r.doc["density_triples"] = triples.size();
  r.doc["partitioning"] = partitions;
  r.doc["non_power"] = non_power;
  r.human = std::to_string(o.count) + " pairs, " + std::to_string(partitions) + " partition the integers, " +
            std::to_string(non_power.size()) + " of those with non-power densities\n";
  if (!non_power.empty()) r.code = kRefutation;
  return r;
}

// ---- batch -------------------------------------------------------------------

struct BatchItem {
  int line = 0;
  int expected = 0;
  std::vector<std::string> args;
};

std::vector<BatchItem> parse_sweep(const std::string& text) {
  std::vector<BatchItem> items;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    const auto words = split_words(hash == std::string::npos ? line : line.substr(0, hash));
    if (words.empty()) continue;
    BatchItem item;
    item.line = line_no;
    const auto& e = words[0];
    if (e.size() != 1 || e[0] < '0' || e[0] > '4') {
      throw ParseError("expected an exit code 0-4, got '" + e + "'", line_no, 1);
    }
    item.expected = e[0] - '0';
    if (words.size() < 2) throw ParseError("missing command", line_no, 1);
    if (words[1] == "batch") throw ParseError("nested batch runs are not allowed", line_no, 1);
    item.args.assign(words.begin() + 1, words.end());
    items.push_back(std::move(item));
  }
  return items;
}

Result run_batch(const std::string& file, const std::string& report, const Globals& g) {
  const auto items = parse_sweep(read_file(file));
  struct Outcome {
    int code = 0;
    std::string out, err;
  };
  std::vector<Outcome> outcomes(items.size());
  parallel_for(items.size(), g.workers, [&](std::size_t i) {
    std::vector<std::string> args{"--json"};
    args.insert(args.end(), items[i].args.begin(), items[i].args.end());
    std::ostringstream out, err;
    outcomes[i].code = dispatch(args, out, err);
    outcomes[i].out = out.str();
    outcomes[i].err = err.str();
  });

  json list = json::array();
  std::int64_t passed = 0;
  bool errored = false;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& item = items[i];
    const auto& oc = outcomes[i];
    const bool pass = oc.code == item.expected;
    passed += pass ? 1 : 0;
    if (!pass && oc.code == kUsage) errored = true;
    json entry;
    entry["line"] = item.line;
    entry["args"] = item.args;
    entry["expected"] = item.expected;
    entry["exit"] = oc.code;
    entry["pass"] = pass;
    auto parsed = json::parse(oc.out, nullptr, false);
    entry["output"] = parsed.is_discarded() ? json(oc.out) : parsed;
    list.push_back(std::move(entry));
  }
  Result r;
  r.doc["sweep"] = file;
  r.doc["total"] = items.size();
  r.doc["passed"] = passed;
  r.doc["failed"] = static_cast<std::int64_t>(items.size()) - passed;
  r.doc["items"] = list;
  for (const auto& e : list) {
    r.human += std::string(e["pass"].get<bool>() ? "PASS" : "FAIL") + "  line " + std::to_string(e["line"].get<int>()) +
               "  exit " + std::to_string(e["exit"].get<int>()) + " (expected " +
               std::to_string(e["expected"].get<int>()) + ")\n";
  }
  r.human += std::to_string(passed) + "/" + std::to_string(items.size()) + " passed\n";
  if (!report.empty()) {
    json full = r.doc;
    full["schema"] = kSchema;
    full["command"] = "batch";
    write_file(report, full.dump(2) + "\n");
  }
  if (errored) {
    r.code = kUsage;
  } else if (passed != static_cast<std::int64_t>(items.size())) {
    r.code = kNegative;
  }
  return r;
}

}  // namespace

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> words;
  std::string cur;
  bool in_word = false;
  char quote = 0;
  for (char ch : line) {
    if (quote) {
      if (ch == quote) {
        quote = 0;
      } else {
        cur += ch;
      }
    } else if (ch == '\'' || ch == '"') {
      quote = ch;
      in_word = true;
    } else if (ch == ' ' || ch == '\t') {
      if (in_word) words.push_back(std::move(cur));
      cur.clear();
      in_word = false;
    } else {
      cur += ch;
      in_word = true;
    }
  }
  if (quote) throw ParseError("unterminated quote", 1, static_cast<int>(line.size()));
  if (in_word) words.push_back(std::move(cur));
  return words;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification toolkit for Ramsey tuples on the circle", "ramsey"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option defaults");
  Globals g;
  app.add_flag("--json", g.json, "Print a JSON document instead of text");
  app.add_option("--parallel", g.workers, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", g.seed, "Seed for randomized sweeps");

  std::map<CLI::App*, std::function<Result()>> handlers;
  auto sub = [&](const char* name, const char* help, std::function<Result()> fn) {
    CLI::App* s = app.add_subcommand(name, help);
    handlers[s] = std::move(fn);
    return s;
  };

  CheckOpts check;
  auto* s = sub("check", "Search a colouring for a monochromatic copy", [&] { return run_check(check, g); });
  s->add_option("--input", check.input, "Colouring file")->required();
  s->add_option("--gaps", check.gaps, "Fractions summing to 1, or integer gaps summing to n")->required();
  auto* dp = s->add_flag("--dp", check.dp, "Use the path dynamic program");
  auto* brute = s->add_flag("--brute", check.brute, "Use exhaustive search");
  dp->excludes(brute);
  s->add_option("--restrict", check.restrict, "File of allowed cyclic gap orders");
  s->add_flag("--count", check.count, "Count red and blue copies instead");

  UniformOpts uniform;
  s = sub("uniform-check", "Red copies of the (k,2)-power in every uniform colouring",
          [&] { return run_uniform_check(uniform, g); });
  s->add_option("--k", uniform.k)->required();
  s->add_option("--max-t", uniform.max_t, "Default 2^(k+1) - 2");

  WitnessSearchOpts ws;
  s = sub("witness-search", "Smallest t whose uniform colouring avoids the tuple",
          [&] { return run_witness_search(ws, g); });
  s->add_option("--gaps", ws.gaps)->required();
  s->add_option("--max-t", ws.max_t);

  BeattyOpts beatty;
  s = sub("beatty-check", "Does a family of Beatty sequences partition the integers",
          [&] { return run_beatty_check(beatty, g); });
  s->add_option("--alphas", beatty.alphas)->required();
  auto* betas = s->add_option("--betas", beatty.betas);
  auto* half = s->add_flag("--half", beatty.half, "beta_i = alpha_i / 2");
  betas->excludes(half);
  s->add_option("--limit", beatty.limit, "Check [0, M)")->required();
  s->add_flag("--diagnostics", beatty.diagnostics, "Period, symmetry and density report");

  std::string period;
  s = sub("balanced-check", "Is a periodic word balanced", [&] { return run_balanced_check(period, g); });
  s->add_option("--period", period, "e.g. abacaba or 1,2,1,3")->required();

  DoublingOpts dbl;
  s = sub("doubling", "Prefix-sum permutation of a doubling orbit", [&] { return run_doubling(dbl, g); });
  s->add_option("--k", dbl.k);
  s->add_option("--t", dbl.t);
  s->add_option("--xs", dbl.xs, "Values summing to 0");
  s->add_option("--x1", dbl.x1, "Seed of the orbit (with --k)");

  SuitableOpts suit;
  s = sub("suitable", "Is t (strongly) suitable for a tuple", [&] { return run_suitable(suit, g); });
  s->add_option("--gaps", suit.gaps)->required();
  s->add_option("--t", suit.t)->required();
  s = sub("suitable-search", "Smallest strongly suitable t", [&] { return run_suitable_search(suit, g); });
  s->add_option("--gaps", suit.gaps)->required();
  s->add_option("--max-t", suit.max_t);
  s = sub("nearly-ramsey", "All colourings of Z_N with a black vertex", [&] { return run_nearly_ramsey(suit, g); });
  s->add_option("--gaps", suit.gaps)->required();
  s->add_option("--n", suit.n)->required();

  MajorityOpts maj;
  s = sub("majority", "The ten-interval colouring has no red (k,2)-power", [&] { return run_majority(maj, g); });
  s->add_option("--k", maj.k)->required();
  s->add_option("--eps", maj.eps)->required();
  s->add_option("--emit", maj.emit, "Write the colouring to a file");

  CnfOpts cnf;
  s = sub("cnf", "Write the DIMACS formula for k", [&] { return run_cnf(cnf, g); });
  s->add_option("--k", cnf.k)->required();
  s->add_option("--out", cnf.out);
  s = sub("solve", "Run an external SAT solver on the formula for k", [&] { return run_solve(cnf, g); });
  s->add_option("--k", cnf.k)->required();
  s->add_option("--solver", cnf.solver, "Command; the formula path is appended");
  s->add_option("--timeout", cnf.timeout, "Seconds");
  s->add_option("--drop", cnf.drop, "Remove clause i (1-based) first");

  SweepOpts sweep;
  s = sub("oracle-sweep", "Dynamic program against exhaustive search on random colourings",
          [&] { return run_oracle_sweep(sweep, g); });
  s->add_option("--count", sweep.count);
  s = sub("parity-sweep", "Parity of monochromatic copy counts", [&] { return run_parity_sweep(sweep, g); });
  s->add_option("--k", sweep.k)->required();
  s->add_option("--count", sweep.count);
  s = sub("fraenkel-sweep", "Random three-sequence Beatty families", [&] { return run_fraenkel_sweep(sweep, g); });
  s->add_option("--count", sweep.count);
  s->add_option("--max-den", sweep.max_den);

  std::string batch_file, batch_report;
  s = sub("batch", "Run a sweep file of command lines", [&] { return run_batch(batch_file, batch_report, g); });
  s->add_option("file", batch_file, "Lines of '<expected-exit> <command> <flags...>'")->required();
  s->add_option("--report", batch_report, "Also write the JSON report here");

  for (auto& [cmd, fn] : handlers) {
    if (cmd->get_name() == "oracle-sweep" || cmd->get_name() == "parity-sweep" || cmd->get_name() == "fraenkel-sweep") {
      cmd->get_option("--count")->check(CLI::Range(std::int64_t{1}, std::int64_t{100'000'000}));
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Result result;
  try {
    result = handlers.at(chosen)();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    if (g.json) {
      json doc{{"schema", kSchema}, {"command", chosen->get_name()}, {"error", e.what()}};
      if (dynamic_cast<const SolverNotFound*>(&e)) doc["error_kind"] = "solver_not_found";
      if (dynamic_cast<const SolverFailed*>(&e)) doc["error_kind"] = "solver_failed";
      if (dynamic_cast<const ModelValidationError*>(&e)) doc["error_kind"] = "model_validation";
      out << doc.dump(2) << "\n";
    }
    return kUsage;
  }
  if (g.json) {
    json doc{{"schema", kSchema}, {"command", chosen->get_name()}, {"exit", result.code}};
    doc.update(result.doc);
    out << doc.dump(2) << "\n";
  } else {
    out << result.human;
  }
  return result.code;
}

}  // namespace ramsey::cli
