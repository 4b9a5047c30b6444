#include "cecsp/feasibility.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace cecsp {

FlowNetwork build_network(const Instance& inst) {
  FlowNetwork net;
  net.num_jobs = inst.num_jobs();
  for (const Job& job : inst.jobs()) {
    net.breakpoints.push_back(job.release);
    net.breakpoints.push_back(job.deadline);
  }
  std::sort(net.breakpoints.begin(), net.breakpoints.end());
  net.breakpoints.erase(std::unique(net.breakpoints.begin(), net.breakpoints.end()),
                        net.breakpoints.end());

  for (int j = 1; j <= net.num_jobs; ++j) {
    net.arcs.push_back({FlowNetwork::source(), net.job_node(j), inst.job(j).e_total});
  }
  for (int j = 1; j <= net.num_jobs; ++j) {
    const Job& job = inst.job(j);
    for (int k = 0; k < net.num_intervals(); ++k) {
      const double t_s = net.breakpoints[k];
      const double t_e = net.breakpoints[k + 1];
      if (job.release <= t_s && t_e <= job.deadline) {
        net.arcs.push_back({net.job_node(j), net.interval_node(k), (t_e - t_s) * job.p_max});
      }
    }
  }
  for (int k = 0; k < net.num_intervals(); ++k) {
    const double span = net.breakpoints[k + 1] - net.breakpoints[k];
    net.arcs.push_back({net.interval_node(k), FlowNetwork::sink(), span * inst.capacity()});
  }
  return net;
}

namespace {

// Dinic's algorithm on a residual graph with paired edges.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : head_(nodes, -1), level_(nodes), cursor_(nodes) {}

  int add_arc(int from, int to, double capacity) {
    const int id = static_cast<int>(to_.size());
    push(from, to, capacity);
    push(to, from, 0.0);
    return id;
  }

  double run(int s, int t) {
    double total = 0;
    while (bfs(s, t)) {
      cursor_ = head_;
      while (double pushed = dfs(s, t, std::numeric_limits<double>::infinity())) {
        total += pushed;
      }
    }
    return total;
  }

  double flow_on(int arc) const { return residual_[arc ^ 1]; }

  // Nodes reachable from s in the final residual graph.
  std::vector<char> source_side(int s) {
    bfs(s, -1);
    std::vector<char> side(level_.size());
    for (std::size_t v = 0; v < level_.size(); ++v) side[v] = level_[v] >= 0;
    return side;
  }

 private:
  static constexpr double kEps = 1e-12;

  void push(int from, int to, double capacity) {
    to_.push_back(to);
    residual_.push_back(capacity);
    next_.push_back(head_[from]);
    head_[from] = static_cast<int>(to_.size()) - 1;
  }

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      for (int e = head_[v]; e != -1; e = next_[e]) {
        if (residual_[e] > kEps && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[v] + 1;
          queue.push(to_[e]);
        }
      }
    }
    return t >= 0 && level_[t] >= 0;
  }

  double dfs(int v, int t, double limit) {
    if (v == t) return limit;
    for (int& e = cursor_[v]; e != -1; e = next_[e]) {
      const int w = to_[e];
      if (residual_[e] <= kEps || level_[w] != level_[v] + 1) continue;
      const double pushed = dfs(w, t, std::min(limit, residual_[e]));
      if (pushed > 0) {
        residual_[e] -= pushed;
        residual_[e ^ 1] += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<int> head_, level_, cursor_;
  std::vector<int> to_, next_;
  std::vector<double> residual_;
};

}  // namespace

FeasibilityReport check_feasibility(const Instance& inst) {
  const FlowNetwork net = build_network(inst);
  MaxFlow flow(net.num_nodes());
  std::vector<int> ids;
  for (const FlowArc& arc : net.arcs) ids.push_back(flow.add_arc(arc.from, arc.to, arc.capacity));

  FeasibilityReport report;
  report.max_flow = flow.run(FlowNetwork::source(), FlowNetwork::sink());
  report.demand = inst.total_energy();
  report.passes = report.max_flow >= report.demand - kFlowSlack;
  // The first n arcs are the source arcs, in job order.
  for (int j = 1; j <= net.num_jobs; ++j) {
    const double got = flow.flow_on(ids[j - 1]);
    report.job_flow.push_back(got);
    report.shortfall.push_back(std::max(0.0, inst.job(j).e_total - got));
  }
  if (!report.passes) {
    const std::vector<char> side = flow.source_side(FlowNetwork::source());
    for (int j = 1; j <= net.num_jobs; ++j) {
      if (side[net.job_node(j)]) report.cut_jobs.push_back(j);
    }
  }
  return report;
}

std::vector<FeasibilityReport> check_feasibility_batch_serial(
    const std::vector<Instance>& instances) {
  std::vector<FeasibilityReport> out;
  out.reserve(instances.size());
  for (const Instance& inst : instances) out.push_back(check_feasibility(inst));
  return out;
}

std::vector<FeasibilityReport> check_feasibility_batch(
    const std::vector<Instance>& instances) {
  const int count = static_cast<int>(instances.size());
  std::vector<FeasibilityReport> out(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (int k = 0; k < count; ++k) out[k] = check_feasibility(instances[k]);
  return out;
}

}  // namespace cecsp
