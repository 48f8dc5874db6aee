#include "rel/metrics.hpp"

#include <algorithm>

namespace rel {

QuadratureResult mean_tttf(const SystemModel& model) {
  return integrate_survival([&model](double t) { return model.survival(t); });
}

double birnbaum(const SystemModel& model, std::string_view component_name, double t) {
  return model.survival_pinned(component_name, 1.0, t) -
         model.survival_pinned(component_name, 0.0, t);
}

double improvement(const SystemModel& model, std::string_view component_name, double t) {
  return model.survival_pinned(component_name, 1.0, t) - model.survival(t);
}

std::vector<ImportanceRow> importance_rows(const SystemModel& model,
                                           const std::vector<double>& times) {
  std::vector<ImportanceRow> rows;
  rows.reserve(times.size() * model.components().size());
  std::vector<ImportanceRow> at_t;
  for (double t : times) {
    const double base = model.survival(t);
    at_t.clear();
    for (const auto& c : model.components()) {
      const double p = model.survival_pinned(c.name, 1.0, t);
      const double q = model.survival_pinned(c.name, 0.0, t);
      at_t.push_back({c.name, t, p - q, p - base});
    }
    std::sort(at_t.begin(), at_t.end(), [](const ImportanceRow& a, const ImportanceRow& b) {
      if (a.birnbaum != b.birnbaum) return a.birnbaum > b.birnbaum;
      return a.component_name < b.component_name;
    });
    rows.insert(rows.end(), at_t.begin(), at_t.end());
  }
  return rows;
}

std::vector<ImportanceRow> importance_ranking(const SystemModel& model, const Grid& grid) {
  return importance_rows(model, grid.points());
}

AnalysisReport analyze(const SystemModel& model, const Grid& grid,
                       const std::vector<double>& deadlines,
                       const std::vector<double>& report_times) {
  const auto mean = mean_tttf(model);

  AnalysisReport report{mean.value,
                        mean.est_error,
                        {},
                        importance_rows(model, report_times),
                        {grid, {}},
                        {grid, {}},
                        {grid, {}}};
  report.deadline_failures.reserve(deadlines.size());
  for (double d : deadlines) {
    report.deadline_failures.emplace_back(d, model.failure_before(d));
  }

  const auto& points = grid.points();
  report.survival.values.reserve(points.size());
  report.hazard.values.reserve(points.size());
  report.pdf.values.reserve(points.size());
  for (double t : points) {
    report.survival.values.push_back(model.survival(t));
    report.hazard.values.push_back(model.hazard(t));
    report.pdf.values.push_back(model.pdf(t));
  }
  return report;
}

}  // namespace rel
