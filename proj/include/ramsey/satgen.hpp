#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/core.hpp"

namespace ramsey {

/// Propositional formula over variables 1..num_vars. For the generated
/// formulas variable v + 1 is true iff vertex v is red.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  /// Set when the formula is the full encoding for the (k,2)-power.
  std::optional<int> power_k;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// Expected clause count 2 (2^k - 1) (k - 1)!.
std::int64_t power_clause_count(int k);

/// One positive clause ("not all blue") per copy, then one negative clause
/// ("not all red") per copy. Copies are listed by the vertex of the largest
/// gap and then the remaining gaps in lexicographic order; literals ascend.
CnfFormula cnf_generate(int k);

extern const char* const kGeneratorVersion;

std::string dimacs_write(const CnfFormula& f);
/// Throws ParseError carrying the offending line.
CnfFormula dimacs_read(std::string_view text);

enum class SolverStatus { Sat, Unsat, Unknown };
std::string_view solver_status_name(SolverStatus s);

struct SolverOutcome {
  SolverStatus status = SolverStatus::Unknown;
  std::optional<Colouring> model;
  std::chrono::duration<double> solver_time{0};
};

class SolverNotFound : public Error {
 public:
  using Error::Error;
};
class SolverFailed : public Error {
 public:
  using Error::Error;
};
class ModelValidationError : public Error {
 public:
  using Error::Error;
};

/// RAMSEY_SAT_SOLVER if set, otherwise the bundled pysat wrapper.
std::string default_solver_command();

/// Writes the formula to a temporary file and runs `solver_command <file>`
/// through /bin/sh. Reads SAT-competition output. A model is checked against
/// every clause and, for a full power formula, against the detector.
SolverOutcome solve_external(const CnfFormula& f, const std::string& solver_command,
                             std::chrono::duration<double> timeout);

}  // namespace ramsey
