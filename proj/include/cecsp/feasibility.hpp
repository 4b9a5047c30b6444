// Max-flow screen for instances: jobs feed intervals between consecutive
// distinct release/deadline values, each interval drains at P per unit of
// time. Lower rate bounds are ignored, so passing is necessary but not
// sufficient for a feasible schedule.

#ifndef CECSP_FEASIBILITY_HPP
#define CECSP_FEASIBILITY_HPP

#include <vector>

#include "cecsp/core.hpp"

namespace cecsp {

inline constexpr double kFlowSlack = 1e-9;

struct FlowArc {
  int from = 0;
  int to = 0;
  double capacity = 0;
};

// Node layout: 0 source, 1 sink, 2..n+1 jobs, then one node per interval.
struct FlowNetwork {
  int num_jobs = 0;
  std::vector<double> breakpoints;  // sorted distinct r_j and d_j
  std::vector<FlowArc> arcs;

  static constexpr int source() { return 0; }
  static constexpr int sink() { return 1; }
  int job_node(int job) const { return 1 + job; }
  int interval_node(int k) const { return 2 + num_jobs + k; }  // 0-based k
  int num_intervals() const { return static_cast<int>(breakpoints.size()) - 1; }
  int num_nodes() const { return 2 + num_jobs + num_intervals(); }
};

FlowNetwork build_network(const Instance& inst);

struct FeasibilityReport {
  double max_flow = 0;
  double demand = 0;
  bool passes = false;
  std::vector<double> job_flow;   // per job, 0-based
  std::vector<double> shortfall;  // E_j - job_flow, 0-based
  // Jobs on the source side of the minimum cut (1-based); empty on a pass.
  std::vector<int> cut_jobs;
};

FeasibilityReport check_feasibility(const Instance& inst);

// Reports for many instances, computed in parallel with OpenMP.
std::vector<FeasibilityReport> check_feasibility_batch(
    const std::vector<Instance>& instances);
std::vector<FeasibilityReport> check_feasibility_batch_serial(
    const std::vector<Instance>& instances);

}  // namespace cecsp

#endif  // CECSP_FEASIBILITY_HPP
