#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pkmeans/csv.hpp"
#include "pkmeans/outliers.hpp"
#include "pkmeans/penalty.hpp"
#include "pkmeans/svg.hpp"
#include "pkmeans/synth.hpp"

namespace pkmeans {

struct RunConfig {
  std::string input_path;          // CSV; ignored when synth is set
  std::optional<SynthSpec> synth;
  int k_min = 2;
  int k_max = 0;                   // 0 = min(3 * scan_k_max, N - 1)
  int scan_k_max = 10;             // largest assumed K in the scan
  PenaltyFamily family;
  bool filter = false;
  DensityFilterConfig filter_cfg;
  std::string out_dir;             // empty = no files written
  int threads = 1;
  bool emit_plots = false;
  LloydParams lloyd;
};

struct RunOutput {
  EstimationReport report;
  Dataset data;  // after any filtering
  std::vector<std::size_t> removed_indices;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string join_ints(const std::vector<int>& v) {
  if (v.empty()) return "none";
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace detail

// Structured text report plus the scan table and curves as CSV. Output is
// byte-identical for identical inputs.
inline void emit_report(const EstimationReport& rep, const std::string& dir,
                        bool plots = false) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto path = [&](const std::string& name) { return (fs::path(dir) / name).string(); };

  {
    std::ofstream out(path("report.txt"), std::ios::binary);
    if (!out) throw std::runtime_error(dir + ": cannot write report.txt");
    out << "n_points=" << format_double(rep.n_points) << '\n';
    out << "penalty_family=" << rep.family.name() << '\n';
    out << "k_min=" << rep.ks.front() << '\n';
    out << "k_max=" << rep.ks.back() << '\n';
    out << "scan_k_max=" << (rep.scan.empty() ? 0 : rep.scan.back().assumed_k) << '\n';
    out << "additive_candidates=" << detail::join_ints(rep.additive_candidates) << '\n';
    out << "multiplicative_global_min=" << rep.mult_global_min << '\n';
    out << "multiplicative_global_interior=" << (rep.mult_global_interior ? "true" : "false")
        << '\n';
    out << "multiplicative_local_minima=" << detail::join_ints(rep.mult_local_minima) << '\n';
    out << "multiplicative_candidates=" << detail::join_ints(rep.mult_candidates) << '\n';
    out << "agreed=" << detail::join_ints(rep.agreed) << '\n';
    out << "final_estimate="
        << (rep.final_estimate ? std::to_string(*rep.final_estimate) : std::string("none"))
        << '\n';
    if (!out) throw std::runtime_error(dir + ": write failed for report.txt");
  }

  {
    std::ofstream out(path("scan_table.csv"), std::ios::binary);
    if (!out) throw std::runtime_error(dir + ": cannot write scan_table.csv");
    out << "assumed_K,lambda,estimated_k,is_candidate\n";
    for (const auto& row : rep.scan)
      out << row.assumed_k << ',' << format_double(row.lambda) << ',' << row.estimated_k << ','
          << (row.is_candidate ? 1 : 0) << '\n';
  }

  {
    std::ofstream out(path("curve_multiplicative.csv"), std::ios::binary);
    if (!out) throw std::runtime_error(dir + ": cannot write curve_multiplicative.csv");
    out << "k,raw_error,penalized_error\n";
    for (std::size_t i = 0; i < rep.ks.size(); ++i)
      out << rep.ks[i] << ',' << format_double(rep.raw_errors[i]) << ','
          << format_double(rep.multiplicative.penalized[i]) << '\n';
  }

  for (const auto& row : rep.scan) {
    const auto curve = additive_curve(rep.ks, rep.raw_errors, row.lambda, rep.family);
    std::ofstream out(path("curve_additive_K" + std::to_string(row.assumed_k) + ".csv"),
                      std::ios::binary);
    if (!out) throw std::runtime_error(dir + ": cannot write additive curve");
    out << "k,raw_error,penalized_error\n";
    for (std::size_t i = 0; i < curve.ks.size(); ++i)
      out << curve.ks[i] << ',' << format_double(curve.raw[i]) << ','
          << format_double(curve.penalized[i]) << '\n';
  }

  if (plots) {
    write_curve_svg(path("curve_multiplicative.svg"), "multiplicative penalized error",
                    rep.ks, rep.multiplicative.penalized, "f(k) * E_k");
    std::vector<int> assumed, estimated;
    for (const auto& row : rep.scan) {
      assumed.push_back(row.assumed_k);
      estimated.push_back(row.estimated_k);
    }
    if (!assumed.empty())
      write_staircase_svg(path("scan_staircase.svg"), "estimated vs assumed", assumed,
                          estimated);
    for (const auto& row : rep.scan) {
      if (!row.is_candidate) continue;
      const auto curve = additive_curve(rep.ks, rep.raw_errors, row.lambda, rep.family);
      write_curve_svg(path("curve_additive_K" + std::to_string(row.assumed_k) + ".svg"),
                      "additive penalized error, assumed K=" + std::to_string(row.assumed_k),
                      curve.ks, curve.penalized, "E_k + lambda f(k)");
    }
  }
}

// Load (or generate) -> optional density filter -> sweep -> scan ->
// multiplicative minima -> agreement. Writes the report when out_dir is set.
inline RunOutput run_estimate(const RunConfig& cfg) {
  RunOutput out;
  if (cfg.synth) {
    out.data = generate(*cfg.synth).data;
  } else if (!cfg.input_path.empty()) {
    out.data = parse_csv(cfg.input_path);
  } else {
    throw std::invalid_argument("run_estimate: need an input path or a synth spec");
  }

  if (cfg.filter) {
    auto filtered = density_filter(out.data, cfg.filter_cfg);
    out.removed_indices = std::move(filtered.removed_indices);
    out.warnings = std::move(filtered.warnings);
    out.data = std::move(filtered.kept);
  }

  if (cfg.scan_k_max < 2) throw std::invalid_argument("run_estimate: scan_k_max must be >= 2");
  const int n = static_cast<int>(out.data.size());
  int k_max = cfg.k_max > 0 ? cfg.k_max : std::min(3 * cfg.scan_k_max, n - 1);
  k_max = std::min(k_max, n);
  if (cfg.k_min < 1 || cfg.k_min > 2)
    throw std::invalid_argument("run_estimate: k_min must be 1 or 2 so the scan can start at 2");
  if (k_max < cfg.scan_k_max)
    throw std::invalid_argument("run_estimate: k range cannot cover scan_k_max on this input");

  SweepParams sp;
  sp.lloyd = cfg.lloyd;
  sp.threads = cfg.threads;
  SweepResult swept = sweep(out.data, cfg.k_min, k_max, sp);
  for (auto& w : swept.warnings) out.warnings.push_back(std::move(w));

  // The scan and curves start at k = 2 even if the sweep includes k = 1.
  std::vector<ClusteringResult> from2;
  for (auto& r : swept.results)
    if (r.k >= 2) from2.push_back(std::move(r));

  out.report = estimate_report(out.data, from2, cfg.scan_k_max, cfg.family);
  if (!cfg.out_dir.empty()) emit_report(out.report, cfg.out_dir, cfg.emit_plots);
  return out;
}

}  // namespace pkmeans
