#include "tbdrive/propagators.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <future>
#include <sstream>

namespace tbdrive {

namespace {

MethodComparison timed_run(std::string name, const std::function<PropagationResult()>& run) {
  MethodComparison out;
  out.method = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    out.result = run();
  } catch (const InapplicableMethod& e) {
    out.applicable = false;
    out.reason = e.what();
  }
  out.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void score_against(MethodComparison& m, const PropagationResult& oracle) {
  if (!m.applicable) return;
  if (m.result.failed) {
    m.reason = m.result.failure_reason;
    return;
  }
  m.fidelity_vs_oracle = fidelity(m.result, oracle);
  m.terminal_fidelity = m.fidelity_vs_oracle.back();
  m.terminal_error = (m.result.final_state() - oracle.final_state()).norm();
}

}  // namespace

ComparisonReport compare_methods(const LatticeSpec& spec, const DriveProfile& drive, const StateVector& psi0,
                                 double t_final, double dt, const std::vector<int>& orders, int record_stride) {
  spec.validate();
  ComparisonReport report;
  report.spec = spec;
  report.drive = drive.describe();

  // Methods share only immutable inputs, so they run concurrently.
  std::vector<std::pair<std::string, std::function<PropagationResult()>>> jobs;
  jobs.emplace_back("su2", [&] { return su2_propagate(spec, drive, psi0, t_final, dt, record_stride); });
  for (int order : orders) {
    jobs.emplace_back("series(order=" + std::to_string(order) + ")",
                      [&, order] { return series_propagate(spec, drive, psi0, t_final, dt, order, record_stride); });
  }

  auto oracle_future = std::async(std::launch::async, [&] {
    return timed_run("oracle", [&] { return oracle_propagate(spec, drive, psi0, t_final, dt, record_stride); });
  });
  std::vector<std::future<MethodComparison>> futures;
  for (const auto& job : jobs) {
    futures.push_back(std::async(std::launch::async, [&job] { return timed_run(job.first, job.second); }));
  }
  report.oracle = oracle_future.get();
  report.oracle.terminal_fidelity = 1.0;
  report.oracle.terminal_error = 0.0;
  for (auto& f : futures) {
    auto m = f.get();
    score_against(m, report.oracle.result);
    report.methods.push_back(std::move(m));
  }
  return report;
}

std::string ComparisonReport::to_table(bool include_runtime) const {
  std::ostringstream os;
  char line[512];
  os << "lattice: " << to_string(spec.boundary) << ", dim=" << spec.dim() << ", G=" << spec.coupling << "\n";
  os << "drive:   " << drive << "\n";
  std::snprintf(line, sizeof line, "%-18s %-13s %-22s %-22s%s\n", "method", "status", "terminal_fidelity",
                "terminal_error", include_runtime ? " runtime_s" : "");
  os << line;
  const auto row = [&](const MethodComparison& m) {
    std::string status = !m.applicable ? "inapplicable" : (m.result.failed ? "failed" : "ok");
    char fid[32] = "-";
    char err[32] = "-";
    if (m.applicable && !m.result.failed) {
      std::snprintf(fid, sizeof fid, "%.15f", m.terminal_fidelity);
      std::snprintf(err, sizeof err, "%.6e", m.terminal_error);
    }
    char rt[32] = "";
    if (include_runtime) std::snprintf(rt, sizeof rt, " %.4f", m.runtime_seconds);
    std::snprintf(line, sizeof line, "%-18s %-13s %-22s %-22s%s\n", m.method.c_str(), status.c_str(), fid, err, rt);
    os << line;
    if (!m.reason.empty()) os << "  reason: " << m.reason << "\n";
  };
  row(oracle);
  for (const auto& m : methods) row(m);
  return os.str();
}

}  // namespace tbdrive
