#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "reflow/errors.hpp"
#include "reflow/rational.hpp"

namespace reflow {

/// One job of the reentrant shop: how many times it traverses all machines
/// and how much its completion is worth.
struct Job {
  std::uint32_t loops = 1;
  Rational weight = 1;
};

/// std::uint32_t is plenty for machine counts and loop counts; all time
/// arithmetic happens in 64 bits and is range-checked at validation.
struct Instance {
  std::uint32_t machines = 1;
  std::vector<Job> jobs;

  std::uint32_t n() const { return static_cast<std::uint32_t>(jobs.size()); }
  std::uint64_t total_loops() const {
    std::uint64_t total = 0;
    for (const Job& job : jobs) total += job.loops;
    return total;
  }
};

/// Loop k (1-based, k <= loops of the job) of a 0-based job index.
struct LoopRef {
  std::uint32_t job = 0;
  std::uint32_t k = 1;

  friend bool operator==(const LoopRef&, const LoopRef&) = default;
};

/// Report-style validation: returns every violated invariant, empty when ok.
inline std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> violations;
  if (inst.machines < 1) violations.push_back("machines must be >= 1");
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    if (inst.jobs[j].loops < 1)
      violations.push_back("jobs[" + std::to_string(j) + "].loops must be >= 1");
    if (!inst.jobs[j].weight.is_positive())
      violations.push_back("jobs[" + std::to_string(j) + "].weight must be > 0");
  }
  // All schedule times live in [0, m * total_loops + m); keep that in range.
  detail::UInt128 horizon = detail::UInt128(inst.machines) * (inst.total_loops() + 1);
  if (horizon > std::numeric_limits<std::uint64_t>::max())
    violations.push_back("machines * total loops exceeds the 64-bit time horizon");
  return violations;
}

inline void require_valid(const Instance& inst) {
  std::vector<std::string> violations = validate_instance(inst);
  if (violations.empty()) return;
  std::string message = "invalid instance:";
  for (const std::string& v : violations) message += " " + v + ";";
  throw ValidationError(message);
}

inline void require_nonempty(const Instance& inst, const char* op) {
  require_valid(inst);
  if (inst.jobs.empty()) throw ValidationError(std::string(op) + " requires at least one job");
}

}  // namespace reflow
