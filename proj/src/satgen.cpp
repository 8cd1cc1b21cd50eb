#include "ramsey/satgen.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "ramsey/detector.hpp"

#ifndef RAMSEY_DEFAULT_SOLVER
#define RAMSEY_DEFAULT_SOLVER "glucose -model"
#endif

namespace ramsey {

const char* const kGeneratorVersion = "ramsey-satgen 1.0";

namespace {

constexpr std::int64_t kMaxClauses = 20'000'000;

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t from = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > from) out.push_back(line.substr(from, i - from));
  }
  return out;
}

long long parse_int(std::string_view tok, int line) {
  long long v = 0;
  std::size_t i = 0;
  bool neg = false;
  if (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) {
    neg = tok[0] == '-';
    i = 1;
  }
  if (i == tok.size()) throw ParseError("expected an integer, got '" + std::string(tok) + "'", line, 1);
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9') throw ParseError("expected an integer, got '" + std::string(tok) + "'", line, 1);
    v = v * 10 + (tok[i] - '0');
    if (v > 2'000'000'000) throw ParseError("integer out of range", line, 1);
  }
  return neg ? -v : v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempFile {
 public:
  explicit TempFile(const std::string& suffix) {
    auto tmpl = (std::filesystem::temp_directory_path() / ("ramsey-XXXXXX" + suffix)).string();
    const int fd = mkstemps(tmpl.data(), static_cast<int>(suffix.size()));
    if (fd < 0) throw Error("cannot create a temporary file");
    ::close(fd);
    path_ = tmpl;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') {
      out += "'\\''";
    } else {
      out += ch;
    }
  }
  return out + "'";
}

}  // namespace

std::int64_t power_clause_count(int k) {
  if (k < 1 || k > 20) throw DomainError("k out of range");
  BigInt count = 2 * ((BigInt{1} << k) - 1);
  for (int i = 2; i < k; ++i) count = checked_mul(count, i);
  return to_int64(count);
}

CnfFormula cnf_generate(int k) {
  if (k < 3 || k > 16) throw DomainError("cnf generation supports 3 <= k <= 16, got " + std::to_string(k));
  if (power_clause_count(k) > kMaxClauses) {
    throw DomainError("k = " + std::to_string(k) + " needs " + std::to_string(power_clause_count(k)) +
                      " clauses, over the limit of " + std::to_string(kMaxClauses));
  }
  const auto inst = power_instance(k);
  const auto copies = enumerate_copies(inst);
  CnfFormula f;
  f.num_vars = static_cast<int>(inst.n);
  f.power_k = k;
  f.clauses.reserve(copies.size() * 2);
  for (const auto& copy : copies) {
    std::vector<int> clause;
    for (auto v : copy) clause.push_back(static_cast<int>(v) + 1);
    std::sort(clause.begin(), clause.end());
    f.clauses.push_back(std::move(clause));
  }
  for (std::size_t i = 0; i < copies.size(); ++i) {
    auto clause = f.clauses[i];
    for (auto& lit : clause) lit = -lit;
    std::sort(clause.begin(), clause.end());
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

std::string dimacs_write(const CnfFormula& f) {
  std::string out = "p cnf " + std::to_string(f.num_vars) + " " + std::to_string(f.clauses.size()) + "\n";
  if (f.power_k) out += "c k " + std::to_string(*f.power_k) + "\n";
  out += "c generator " + std::string(kGeneratorVersion) + "\n";
  out += "c variable v+1 true iff vertex v is red\n";
  for (const auto& clause : f.clauses) {
    for (int lit : clause) {
      out += std::to_string(lit);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

CnfFormula dimacs_read(std::string_view text) {
  CnfFormula f;
  bool header = false;
  long long declared = 0;
  std::vector<int> pending;
  int pending_line = 0;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "c") {
      if (toks.size() == 3 && toks[1] == "k") {
        const auto k = parse_int(toks[2], line_no);
        if (k < 1 || k > 62) throw ParseError("k out of range", line_no, 1);
        f.power_k = static_cast<int>(k);
      }
      continue;
    }
    if (toks[0] == "p") {
      if (header) throw ParseError("duplicate header", line_no, 1);
      if (toks.size() != 4 || toks[1] != "cnf") throw ParseError("header must be 'p cnf <vars> <clauses>'", line_no, 1);
      const auto vars = parse_int(toks[2], line_no);
      declared = parse_int(toks[3], line_no);
      if (vars < 0 || declared < 0) throw ParseError("negative count in header", line_no, 1);
      f.num_vars = static_cast<int>(vars);
      header = true;
      continue;
    }
    if (!header) throw ParseError("clause before the 'p cnf' header", line_no, 1);
    for (auto tok : toks) {
      const auto lit = parse_int(tok, line_no);
      if (lit == 0) {
        f.clauses.push_back(std::move(pending));
        pending.clear();
        continue;
      }
      if (lit > f.num_vars || -lit > f.num_vars) {
        throw ParseError("literal " + std::to_string(lit) + " exceeds the variable count", line_no, 1);
      }
      if (pending.empty()) pending_line = line_no;
      pending.push_back(static_cast<int>(lit));
    }
  }
  if (!header) throw ParseError("missing 'p cnf' header", line_no == 0 ? 1 : line_no, 1);
  if (!pending.empty()) throw ParseError("clause not terminated by 0", pending_line, 1);
  if (static_cast<long long>(f.clauses.size()) != declared) {
    throw ParseError("header declares " + std::to_string(declared) + " clauses, found " +
                         std::to_string(f.clauses.size()),
                     line_no, 1);
  }
  return f;
}

std::string_view solver_status_name(SolverStatus s) {
  switch (s) {
    case SolverStatus::Sat:
      return "SAT";
    case SolverStatus::Unsat:
      return "UNSAT";
    case SolverStatus::Unknown:
      break;
  }
  return "UNKNOWN";
}

std::string default_solver_command() {
  if (const char* env = std::getenv("RAMSEY_SAT_SOLVER"); env != nullptr && *env != '\0') return env;
  return RAMSEY_DEFAULT_SOLVER;
}

SolverOutcome solve_external(const CnfFormula& f, const std::string& solver_command,
                             std::chrono::duration<double> timeout) {
  if (solver_command.empty()) throw SolverNotFound("no solver command given");
  TempFile input(".cnf");
  TempFile output(".out");
  {
    std::ofstream out(input.path(), std::ios::binary);
    out << dimacs_write(f);
    if (!out) throw Error("cannot write " + input.path());
  }
  const std::string script = solver_command + " " + shell_quote(input.path());

  const auto started = std::chrono::steady_clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) throw Error("fork failed");
  if (pid == 0) {
    ::setpgid(0, 0);
    const int fd = ::open(output.path().c_str(), O_WRONLY | O_TRUNC);
    const int null = ::open("/dev/null", O_RDWR);
    if (fd >= 0) ::dup2(fd, STDOUT_FILENO);
    if (null >= 0) {
      ::dup2(null, STDIN_FILENO);
      ::dup2(null, STDERR_FILENO);
    }
    ::execl("/bin/sh", "sh", "-c", script.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid, pid);

  int status = 0;
  bool timed_out = false;
  for (;;) {
    const pid_t r = ::waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) throw Error("waitpid failed");
    if (std::chrono::steady_clock::now() - started > timeout) {
      ::kill(-pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }

  SolverOutcome outcome;
  outcome.solver_time = std::chrono::steady_clock::now() - started;
  if (timed_out) return outcome;

  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (code == 127) throw SolverNotFound("solver command not found: " + solver_command);

  std::optional<SolverStatus> seen;
  std::vector<int> model;
  std::istringstream lines(slurp(output.path()));
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "s" && toks.size() >= 2) {
      if (toks[1] == "SATISFIABLE") {
        seen = SolverStatus::Sat;
      } else if (toks[1] == "UNSATISFIABLE") {
        seen = SolverStatus::Unsat;
      } else {
        seen = SolverStatus::Unknown;
      }
    } else if (toks[0] == "v") {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto lit = parse_int(toks[i], 0);
        if (lit != 0) model.push_back(static_cast<int>(lit));
      }
    }
  }
  if (!seen) {
    throw SolverFailed("solver exited with status " + std::to_string(code) + " without a status line");
  }
  outcome.status = *seen;
  if (outcome.status != SolverStatus::Sat) return outcome;

  std::vector<std::int8_t> value(static_cast<std::size_t>(f.num_vars) + 1, 0);
  for (int lit : model) {
    const int var = lit < 0 ? -lit : lit;
    if (var > f.num_vars) throw ModelValidationError("model mentions variable " + std::to_string(var));
    value[static_cast<std::size_t>(var)] = lit > 0 ? 1 : -1;
  }
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    const auto& clause = f.clauses[i];
    const bool sat = std::any_of(clause.begin(), clause.end(), [&](int lit) {
      return (lit > 0) == (value[static_cast<std::size_t>(lit < 0 ? -lit : lit)] > 0);
    });
    if (!sat) throw ModelValidationError("model violates clause " + std::to_string(i + 1));
  }
  Colouring c(f.num_vars, Colour::Blue);
  for (int v = 0; v < f.num_vars; ++v) {
    if (value[static_cast<std::size_t>(v) + 1] > 0) c.set(v, Colour::Red);
  }
  if (f.power_k && f.num_vars == (1 << *f.power_k) - 1 &&
      static_cast<std::int64_t>(f.clauses.size()) == power_clause_count(*f.power_k)) {
    if (auto w = detect_bruteforce(c, power_instance(*f.power_k))) {
      throw ModelValidationError("solver model contains a monochromatic copy; the encoding pipeline is broken");
    }
  }
  outcome.model = std::move(c);
  return outcome;
}

}  // namespace ramsey
