#include <algorithm>
#include <cstdio>
#include <sstream>

#include "mcas/harness.hpp"
#include "mcas/model_io.hpp"

namespace mcas {
namespace {

void sort_rows(std::vector<ExperimentResult>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    const auto pa = to_string(a.spec.problem), pb = to_string(b.spec.problem);
    if (pa != pb) return pa < pb;
    if (a.spec.num_agents != b.spec.num_agents) return a.spec.num_agents < b.spec.num_agents;
    const auto ma = to_string(a.method), mb = to_string(b.method);
    if (ma != mb) return ma < mb;
    return a.spec.qualifiers < b.spec.qualifiers;
  });
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string emit_csv(std::vector<ExperimentResult> results) {
  sort_rows(results);
  std::string out = "problem,qualifiers,agents,method,mean,ci95,n_runs,mean_max_set,anomalies\n";
  for (const auto& r : results) {
    out += std::string(to_string(r.spec.problem)) + ',' + r.spec.qualifier_string(';') + ',' +
           std::to_string(r.spec.num_agents) + ',' + std::string(to_string(r.method)) + ',' +
           format_real(r.mean) + ',' + format_real(r.ci95_halfwidth) + ',' +
           std::to_string(r.n_runs) + ',' + format_real(r.mean_max_set_size) + ',' +
           std::to_string(r.anomalies) + '\n';
  }
  return out;
}

std::string emit_table(std::vector<ExperimentResult> results) {
  sort_rows(results);
  std::vector<std::vector<std::string>> cells = {
      {"problem", "qualifiers", "agents", "method", "mean", "ci95", "runs", "max set", "anomalies"}};
  for (const auto& r : results) {
    cells.push_back({std::string(to_string(r.spec.problem)), r.spec.qualifier_string(),
                     std::to_string(r.spec.num_agents), std::string(to_string(r.method)),
                     fixed(r.mean, 2), fixed(r.ci95_halfwidth, 2), std::to_string(r.n_runs),
                     r.method == Method::Mcas || r.method == Method::McasAlpha
                         ? fixed(r.mean_max_set_size, 2)
                         : "-",
                     std::to_string(r.anomalies) + (r.solver_timed_out ? " (solver timeout)" : "")});
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::string out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      const std::string& v = cells[r][c];
      const bool numeric = c >= 2 && c != 3;
      std::string pad(width[c] - v.size(), ' ');
      out += numeric ? pad + v : v + pad;
      out += c + 1 < cells[r].size() ? "  " : "\n";
    }
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w + 2;
      out += std::string(total - 2, '-') + '\n';
    }
  }
  out += "seeding: paired (episode k uses the same environment stream for every method)\n";
  return out;
}

EmittedResults emit_results(const std::vector<ExperimentResult>& results) {
  return {emit_csv(results), emit_table(results)};
}

}  // namespace mcas
