#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rel/errors.hpp"
#include "rel/mcsim.hpp"
#include "rel/metrics.hpp"
#include "rel/model_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kDefaultTmax = 5.0;
constexpr int kDefaultSteps = 500;
const std::vector<double> kDefaultDeadlines{0.5, 1.0, 2.0};
const std::vector<double> kReportTimes{0.5, 1.0, 2.0, 5.0};

/// Shortest decimal representation that round-trips to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw rel::IoError("cannot open '" + tmp.string() + "' for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      throw rel::IoError("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    throw rel::IoError("cannot move '" + tmp.string() + "' into place: " + ec.message());
  }
}

fs::path prepare_out_dir(const std::string& out_dir) {
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw rel::IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  }
  return dir;
}

rel::Grid resolve_grid(const rel::ModelFile& m, std::optional<double> tmax,
                       std::optional<int> steps) {
  const double t = tmax.value_or(m.grid ? m.grid->t_max() : kDefaultTmax);
  const int s = steps.value_or(m.grid ? m.grid->steps() : kDefaultSteps);
  return rel::Grid(t, s);
}

json rows_json(const std::vector<rel::ImportanceRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"t", r.t},
                   {"component", r.component_name},
                   {"birnbaum", r.birnbaum},
                   {"improvement", r.improvement}});
  }
  return out;
}

json deadlines_json(const std::vector<std::pair<double, double>>& failures) {
  json out = json::array();
  for (const auto& [deadline, probability] : failures) {
    out.push_back({{"deadline", deadline}, {"probability", probability}});
  }
  return out;
}

std::string curves_csv(const rel::AnalysisReport& report) {
  std::string csv = "t,survival,hazard,pdf\n";
  const auto& pts = report.survival.grid.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    csv += fmt(pts[i]);
    csv += ',';
    csv += fmt(report.survival.values[i]);
    csv += ',';
    csv += fmt(report.hazard.values[i]);
    csv += ',';
    csv += fmt(report.pdf.values[i]);
    csv += '\n';
  }
  return csv;
}

int cmd_analyze(const std::string& model_path, const std::string& out_dir,
                std::optional<double> tmax, std::optional<int> steps,
                std::optional<int> retx_flag) {
  const auto m = rel::load_model_file(model_path);
  const auto grid = resolve_grid(m, tmax, steps);
  const auto& deadlines = m.deadlines.empty() ? kDefaultDeadlines : m.deadlines;
  const int retransmissions = retx_flag.value_or(m.retransmissions);
  if (retransmissions < 0) {
    throw rel::ValidationError({"retransmissions must be >= 0"});
  }

  const auto report = rel::analyze(m.model, grid, deadlines, kReportTimes);
  json summary{{"model_file", model_path},
               {"grid", {{"t_max", grid.t_max()}, {"steps", grid.steps()}}},
               {"mean_tttf", report.mean_tttf},
               {"mean_tttf_error", report.mean_tttf_error},
               {"deadline_failures", deadlines_json(report.deadline_failures)},
               {"importance", rows_json(report.importance)},
               {"retransmissions", retransmissions}};

  if (retransmissions > 0) {
    const auto redundant = m.model.with_retransmission(retransmissions + 1);
    const auto mean = rel::mean_tttf(redundant);
    json failures = json::array();
    for (double d : deadlines) {
      failures.push_back({{"deadline", d}, {"probability", redundant.failure_before(d)}});
    }
    summary["with_retransmissions"] = {{"copies", retransmissions + 1},
                                       {"mean_tttf", mean.value},
                                       {"mean_tttf_error", mean.est_error},
                                       {"deadline_failures", std::move(failures)}};
    std::cout << "mean TTTF " << fmt(report.mean_tttf) << " (with " << retransmissions
              << " retransmission(s): " << fmt(mean.value) << ")\n";
  } else {
    std::cout << "mean TTTF " << fmt(report.mean_tttf) << "\n";
  }

  const auto dir = prepare_out_dir(out_dir);
  write_atomic(dir / "curves.csv", curves_csv(report));
  write_atomic(dir / "summary.json", summary.dump(2) + "\n");
  std::cout << "wrote " << (dir / "curves.csv").string() << "\n"
            << "wrote " << (dir / "summary.json").string() << "\n";
  return 0;
}

int cmd_importance(const std::string& model_path, const std::string& out_dir) {
  const auto m = rel::load_model_file(model_path);
  const auto grid = resolve_grid(m, std::nullopt, std::nullopt);

  std::string csv = "t,component,birnbaum,improvement\n";
  for (const auto& r : rel::importance_ranking(m.model, grid)) {
    csv += fmt(r.t);
    csv += ',';
    csv += csv_field(r.component_name);
    csv += ',';
    csv += fmt(r.birnbaum);
    csv += ',';
    csv += fmt(r.improvement);
    csv += '\n';
  }

  const auto summary_rows = rel::importance_rows(m.model, kReportTimes);
  json rankings = json::array();
  for (double t : kReportTimes) {
    json ranking = json::array();
    for (const auto& r : summary_rows) {
      if (r.t == t) {
        ranking.push_back({{"component", r.component_name},
                           {"birnbaum", r.birnbaum},
                           {"improvement", r.improvement}});
      }
    }
    rankings.push_back({{"t", t}, {"ranking", std::move(ranking)}});
  }
  json summary{{"model_file", model_path},
               {"report_times", kReportTimes},
               {"rankings", std::move(rankings)}};

  const auto dir = prepare_out_dir(out_dir);
  write_atomic(dir / "importance.csv", csv);
  write_atomic(dir / "importance.json", summary.dump(2) + "\n");
  std::cout << "wrote " << (dir / "importance.csv").string() << "\n"
            << "wrote " << (dir / "importance.json").string() << "\n";
  return 0;
}

int cmd_simulate(const std::string& model_path, std::uint64_t samples, std::uint64_t seed,
                 const std::string& out_dir) {
  const auto m = rel::load_model_file(model_path);
  const auto grid = resolve_grid(m, std::nullopt, std::nullopt);
  const auto mc = rel::run(m.model, {samples, seed}, grid);
  const auto analytic_mean = rel::mean_tttf(m.model);

  std::string csv = "t,empirical_survival,analytic_survival,abs_deviation\n";
  const auto& pts = grid.points();
  double max_dev = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double analytic = m.model.survival(pts[i]);
    const double dev = std::abs(mc.empirical_survival.values[i] - analytic);
    max_dev = std::max(max_dev, dev);
    csv += fmt(pts[i]);
    csv += ',';
    csv += fmt(mc.empirical_survival.values[i]);
    csv += ',';
    csv += fmt(analytic);
    csv += ',';
    csv += fmt(dev);
    csv += '\n';
  }

  json summary{{"model_file", model_path},
               {"n_samples", mc.n_samples},
               {"seed", seed},
               {"mean_tttf", mc.mean_tttf},
               {"std_error", mc.std_error},
               {"degenerate", mc.n_samples < 2},
               {"analytic_mean_tttf", analytic_mean.value},
               {"max_abs_deviation", max_dev}};

  const auto dir = prepare_out_dir(out_dir);
  write_atomic(dir / "simulation.csv", csv);
  write_atomic(dir / "simulation.json", summary.dump(2) + "\n");
  std::cout << "mean TTTF " << fmt(mc.mean_tttf) << " +/- " << fmt(mc.std_error) << " ("
            << mc.n_samples << " samples)\n"
            << "wrote " << (dir / "simulation.csv").string() << "\n"
            << "wrote " << (dir / "simulation.json").string() << "\n";
  return 0;
}

int cmd_export(const std::string& model_path) {
  const auto m = rel::load_model_file(model_path);
  std::cout << rel::to_canonical_json(m);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wireless-link reliability analysis over reliability block diagrams"};
  app.require_subcommand(1);

  std::string model_path;
  std::string out_dir = ".";
  std::optional<double> grid_tmax;
  std::optional<int> grid_steps;
  std::optional<int> retransmissions;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  auto* analyze = app.add_subcommand(
      "analyze", "Survival, hazard, and density curves plus mean TTTF and deadline metrics");
  analyze->add_option("model", model_path, "model file (JSON)")->required();
  analyze->add_option("--out", out_dir, "output directory")->capture_default_str();
  analyze->add_option("--grid-tmax", grid_tmax, "evaluation grid upper endpoint");
  analyze->add_option("--grid-steps", grid_steps, "evaluation grid step count");
  analyze->add_option("--retransmissions", retransmissions,
                      "independent retransmissions (overrides the model file)");

  auto* importance = app.add_subcommand(
      "importance", "Birnbaum and improvement importance per component over the grid");
  importance->add_option("model", model_path, "model file (JSON)")->required();
  importance->add_option("--out", out_dir, "output directory")->capture_default_str();

  auto* simulate =
      app.add_subcommand("simulate", "Monte Carlo cross-check of the analytic survival curve");
  simulate->add_option("model", model_path, "model file (JSON)")->required();
  simulate->add_option("--samples", samples, "number of simulated transmissions")->required();
  simulate->add_option("--seed", seed, "simulation seed")->required();
  simulate->add_option("--out", out_dir, "output directory")->capture_default_str();

  auto* export_cmd = app.add_subcommand("export", "Canonical re-serialization of a model file");
  export_cmd->add_option("model", model_path, "model file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) {
      return cmd_analyze(model_path, out_dir, grid_tmax, grid_steps, retransmissions);
    }
    if (*importance) {
      return cmd_importance(model_path, out_dir);
    }
    if (*simulate) {
      if (samples < 1) {
        throw rel::ValidationError({"--samples must be at least 1"});
      }
      return cmd_simulate(model_path, samples, seed, out_dir);
    }
    return cmd_export(model_path);
  } catch (const rel::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rel::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const rel::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
