#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "reflow/errors.hpp"
#include "reflow/instance.hpp"
#include "reflow/rational.hpp"

namespace reflow {

using TimeUnit = std::uint64_t;

/// Machine-1 start times of every loop. With unit processing times the rest
/// of the timing is determined: a loop started at S occupies machine i during
/// [S+i-1, S+i) and completes the shop at S + m.
class Schedule {
 public:
  Schedule() = default;
  Schedule(std::uint32_t machines, std::vector<std::vector<TimeUnit>> starts)
      : machines_(machines), starts_(std::move(starts)) {}

  std::uint32_t machines() const { return machines_; }
  std::uint32_t n() const { return static_cast<std::uint32_t>(starts_.size()); }
  std::uint32_t loops(std::uint32_t job) const {
    return static_cast<std::uint32_t>(starts_[job].size());
  }
  std::uint64_t total_loops() const {
    std::uint64_t total = 0;
    for (const auto& s : starts_) total += s.size();
    return total;
  }

  TimeUnit start(LoopRef l) const { return starts_[l.job][l.k - 1]; }
  TimeUnit completion(LoopRef l) const { return start(l) + machines_; }
  TimeUnit job_completion(std::uint32_t job) const {
    return starts_[job].back() + machines_;
  }
  /// One past the last busy slot of the whole shop; 0 for an empty schedule.
  TimeUnit horizon() const {
    TimeUnit h = 0;
    for (const auto& s : starts_)
      if (!s.empty()) h = std::max(h, s.back() + machines_);
    return h;
  }

  const std::vector<std::vector<TimeUnit>>& starts() const { return starts_; }

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::uint32_t machines_ = 1;
  std::vector<std::vector<TimeUnit>> starts_;
};

/// All loops ordered by machine-1 start time.
inline std::vector<LoopRef> sequence_of(const Schedule& sched) {
  std::vector<LoopRef> seq;
  for (std::uint32_t j = 0; j < sched.n(); ++j)
    for (std::uint32_t k = 1; k <= sched.loops(j); ++k) seq.push_back({j, k});
  std::sort(seq.begin(), seq.end(),
            [&](LoopRef a, LoopRef b) { return sched.start(a) < sched.start(b); });
  return seq;
}

/// Semi-active list scheduling: each loop of the sequence starts at the
/// earliest slot after its predecessor in the list that respects the
/// precedence to the job's previous loop. The sequence must contain every
/// loop exactly once, with each job's loops in index order.
inline Schedule simulate_sequence(const Instance& inst, std::span<const LoopRef> seq) {
  require_valid(inst);
  if (seq.size() != inst.total_loops())
    throw ValidationError("sequence covers " + std::to_string(seq.size()) + " loops, instance has " +
                          std::to_string(inst.total_loops()));
  std::vector<std::vector<TimeUnit>> starts(inst.n());
  for (std::uint32_t j = 0; j < inst.n(); ++j) starts[j].reserve(inst.jobs[j].loops);
  bool first = true;
  TimeUnit prev = 0;
  for (const LoopRef& l : seq) {
    if (l.job >= inst.n() || l.k < 1 || l.k > inst.jobs[l.job].loops)
      throw ValidationError("sequence refers to nonexistent loop (job " + std::to_string(l.job + 1) +
                            ", k " + std::to_string(l.k) + ")");
    if (l.k != starts[l.job].size() + 1)
      throw ValidationError("loops of job " + std::to_string(l.job + 1) + " are out of order in the sequence");
    TimeUnit ready = l.k == 1 ? 0 : starts[l.job][l.k - 2] + inst.machines;
    TimeUnit s = first ? ready : std::max(prev + 1, ready);
    starts[l.job].push_back(s);
    prev = s;
    first = false;
  }
  return Schedule(inst.machines, std::move(starts));
}

inline Schedule simulate_sequence(const Instance& inst, const std::vector<LoopRef>& seq) {
  return simulate_sequence(inst, std::span<const LoopRef>(seq));
}

/// Report-style validation of the Schedule invariants against its instance.
inline std::vector<std::string> schedule_violations(const Instance& inst, const Schedule& sched) {
  std::vector<std::string> violations;
  if (sched.machines() != inst.machines) violations.push_back("machine count mismatch");
  if (sched.n() != inst.n()) {
    violations.push_back("job count mismatch");
    return violations;
  }
  std::unordered_set<TimeUnit> seen;
  for (std::uint32_t j = 0; j < inst.n(); ++j) {
    if (sched.loops(j) != inst.jobs[j].loops) {
      violations.push_back("job " + std::to_string(j + 1) + " is missing loops");
      continue;
    }
    for (std::uint32_t k = 1; k <= sched.loops(j); ++k) {
      TimeUnit s = sched.start({j, k});
      if (!seen.insert(s).second)
        violations.push_back("two loops start at time " + std::to_string(s));
      if (k >= 2 && s < sched.start({j, k - 1}) + inst.machines)
        violations.push_back("job " + std::to_string(j + 1) + " loop " + std::to_string(k) +
                             " starts before its previous loop completes");
    }
  }
  return violations;
}

inline void require_valid(const Instance& inst, const Schedule& sched) {
  std::vector<std::string> violations = schedule_violations(inst, sched);
  if (violations.empty()) return;
  std::string message = "invalid schedule:";
  for (const std::string& v : violations) message += " " + v + ";";
  throw ValidationError(message);
}

/// Exact total weighted completion time.
inline Rational evaluate_objective(const Instance& inst, const Schedule& sched) {
  if (sched.n() != inst.n() || sched.machines() != inst.machines)
    throw ValidationError("schedule does not belong to this instance");
  Rational total = 0;
  for (std::uint32_t j = 0; j < inst.n(); ++j) {
    if (sched.loops(j) != inst.jobs[j].loops)
      throw ValidationError("schedule does not belong to this instance");
    total += inst.jobs[j].weight * Rational(static_cast<long long>(sched.job_completion(j)));
  }
  return total;
}

/// First idle slot on machine 1 (the smallest time that is not a start).
/// Diagnostic only; no algorithm depends on it.
inline TimeUnit first_idle_time(const Schedule& sched) {
  std::vector<TimeUnit> all;
  for (std::uint32_t j = 0; j < sched.n(); ++j)
    for (std::uint32_t k = 1; k <= sched.loops(j); ++k) all.push_back(sched.start({j, k}));
  std::sort(all.begin(), all.end());
  TimeUnit t = 0;
  for (TimeUnit s : all) {
    if (s > t) break;
    t = s + 1;
  }
  return t;
}

}  // namespace reflow
