#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "reflow/errors.hpp"
#include "reflow/instance.hpp"
#include "reflow/schedule.hpp"

namespace reflow {

/// Maximal chain of loops whose machine-1 starts step by exactly m: each loop
/// starts the moment the previous one leaves machine m. w_last sums the
/// weights of jobs whose final loop lies in the chain; it is what a shift of
/// the whole chain costs per time unit.
struct Progression {
  std::vector<LoopRef> loops;
  TimeUnit start = 0;
  Rational w_last = 0;
};

namespace detail {

inline std::map<TimeUnit, LoopRef> occupancy(const Schedule& sched) {
  std::map<TimeUnit, LoopRef> occ;
  for (std::uint32_t j = 0; j < sched.n(); ++j)
    for (std::uint32_t k = 1; k <= sched.loops(j); ++k) occ.emplace(sched.start({j, k}), LoopRef{j, k});
  return occ;
}

inline Progression chain_from(const Instance& inst, const Schedule& sched,
                              const std::map<TimeUnit, LoopRef>& occ, LoopRef head) {
  Progression p;
  p.start = sched.start(head);
  TimeUnit t = p.start;
  for (auto it = occ.find(t); it != occ.end() && it->first == t; it = occ.find(t)) {
    p.loops.push_back(it->second);
    if (it->second.k == inst.jobs[it->second.job].loops) p.w_last += inst.jobs[it->second.job].weight;
    t += inst.machines;
  }
  return p;
}

}  // namespace detail

/// The progression initiated by `head`: the chain from that loop onward.
inline Progression progression_at(const Instance& inst, const Schedule& sched, LoopRef head) {
  if (head.job >= sched.n() || head.k < 1 || head.k > sched.loops(head.job))
    throw ValidationError("loop does not exist in this schedule");
  return detail::chain_from(inst, sched, detail::occupancy(sched), head);
}

/// Partition of all loops into maximal progressions, ordered by start time.
inline std::vector<Progression> extract_progressions(const Instance& inst, const Schedule& sched) {
  std::map<TimeUnit, LoopRef> occ = detail::occupancy(sched);
  std::vector<Progression> out;
  for (const auto& [t, loop] : occ) {
    bool is_head = t < inst.machines || !occ.count(t - inst.machines);
    if (is_head) out.push_back(detail::chain_from(inst, sched, occ, loop));
  }
  return out;
}

/// True iff every loop k >= 2 starts exactly when loop k-1 completes.
inline bool is_non_interruptive(const Schedule& sched) {
  for (std::uint32_t j = 0; j < sched.n(); ++j)
    for (std::uint32_t k = 2; k <= sched.loops(j); ++k)
      if (sched.start({j, k}) != sched.start({j, k - 1}) + sched.machines()) return false;
  return true;
}

/// Swap the progressions initiated by `a` and `b`: the chain of `a` shifts
/// forward by delta = S_b - S_a, the chain of `b` shifts back by delta,
/// everything else stays. The objective changes by exactly
/// delta * (w_last(Pg(a)) - w_last(Pg(b))). The result may contain unforced
/// idleness or interruptions; it must still be a feasible schedule, otherwise
/// the interchange was not applicable and a ValidationError is thrown.
inline Schedule interchange_progressions(const Instance& inst, const Schedule& sched, LoopRef a,
                                         LoopRef b) {
  std::map<TimeUnit, LoopRef> occ = detail::occupancy(sched);
  Progression pa = detail::chain_from(inst, sched, occ, a);
  Progression pb = detail::chain_from(inst, sched, occ, b);
  if (sched.start(a) >= sched.start(b))
    throw ValidationError("interchange requires the first loop to start strictly earlier");
  for (const LoopRef& l : pa.loops)
    if (l == b) throw ValidationError("interchange requires disjoint progressions");
  TimeUnit delta = sched.start(b) - sched.start(a);

  std::vector<std::vector<TimeUnit>> starts = sched.starts();
  for (const LoopRef& l : pa.loops) starts[l.job][l.k - 1] += delta;
  for (const LoopRef& l : pb.loops) starts[l.job][l.k - 1] -= delta;
  Schedule result(inst.machines, std::move(starts));

  std::vector<std::string> violations = schedule_violations(inst, result);
  if (!violations.empty())
    throw ValidationError("interchange yields an infeasible schedule: " + violations.front());

  // Tripwire for the interchange cost identity.
  Rational expected = evaluate_objective(inst, sched) +
                      Rational(static_cast<long long>(delta)) * (pa.w_last - pb.w_last);
  if (evaluate_objective(inst, result) != expected)
    throw std::logic_error("interchange delta formula violated");
  return result;
}

}  // namespace reflow
