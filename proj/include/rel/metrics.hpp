#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rel/numerics.hpp"
#include "rel/rbd.hpp"

namespace rel {

/// One (component, time) entry of an importance table. For coherent
/// structures 0 <= improvement <= birnbaum <= 1.
struct ImportanceRow {
  std::string component_name;
  double t;
  double birnbaum;
  double improvement;

  bool operator==(const ImportanceRow&) const = default;
};

/// Everything the analyze command reports: the three curves share one grid,
/// importance rows are evaluated at the report times only.
struct AnalysisReport {
  double mean_tttf;
  double mean_tttf_error;
  std::vector<std::pair<double, double>> deadline_failures;
  std::vector<ImportanceRow> importance;
  SurvivalCurve survival;
  SurvivalCurve hazard;
  SurvivalCurve pdf;
};

/// Mean TTTF as the integral of the system survival function.
QuadratureResult mean_tttf(const SystemModel& model);

/// B_i(t) = p_i(t) - q_i(t): system survival with the component pinned
/// perfect minus pinned failed. For a series root this is the product of
/// the other components' survivals.
double birnbaum(const SystemModel& model, std::string_view component_name, double t);

/// I_i(t) = p_i(t) - R_w(t): the survival gained by making the component
/// perfect. Equals birnbaum * (1 - R_i) when the component appears once.
double improvement(const SystemModel& model, std::string_view component_name, double t);

/// Both measures for every component at every time, ordered by
/// (t ascending, birnbaum descending, name ascending).
std::vector<ImportanceRow> importance_rows(const SystemModel& model,
                                           const std::vector<double>& times);

std::vector<ImportanceRow> importance_ranking(const SystemModel& model, const Grid& grid);

AnalysisReport analyze(const SystemModel& model, const Grid& grid,
                       const std::vector<double>& deadlines,
                       const std::vector<double>& report_times);

}  // namespace rel
