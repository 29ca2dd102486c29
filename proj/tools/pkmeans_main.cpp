// Command-line frontend: dataset generation, outlier filtering, clustering,
// the assumed-vs-estimated scan, full estimation, geometry tables, and the
// Monte Carlo verification table.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pkmeans/pkmeans.hpp"

namespace {

using namespace pkmeans;

struct SynthFlags {
  SynthSpec spec;
  void attach(CLI::App* app, bool required) {
    auto* k = app->add_option("--clusters,-K", spec.clusters, "number of clusters");
    if (required) k->required();
    app->add_option("--dim,-d", spec.dim, "feature-space dimension");
    app->add_option("--radius,-R", spec.radius, "cluster ball radius");
    app->add_option("--points,-n", spec.points_per_cluster, "points per cluster");
    app->add_option("--min-sep", spec.min_separation,
                    "centroid pairwise-distance floor, in units of R");
    app->add_option("--shrink", spec.shrink, "shrink factor toward the centroid mean, (0,1]");
    app->add_option("--seed", spec.seed, "random seed");
    app->add_option("--box", spec.placement_box, "placement hypercube side (0 = auto)");
    app->add_option("--noise", spec.noise_points, "uniform background noise points");
    app->add_flag("--jitter", spec.jitter, "vary per-cluster counts by +/-10%");
  }
};

void write_truth(const std::string& path, const SynthData& synth, std::size_t dim) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  for (std::size_t c = 0; c * dim < synth.truth_centroids.size(); ++c) {
    out << "centroid";
    for (std::size_t j = 0; j < dim; ++j)
      out << ',' << format_double(synth.truth_centroids[c * dim + j]);
    out << '\n';
  }
  for (int lab : synth.truth_labels) out << "label," << lab << '\n';
  if (!out) throw std::runtime_error(path + ": write failed");
}

void cmd_gen(const SynthFlags& flags, const std::string& output, std::string truth_path,
             bool header) {
  const SynthData synth = generate(flags.spec);
  write_points_csv(output, synth.data, header);
  if (truth_path.empty()) truth_path = output + ".truth.csv";
  write_truth(truth_path, synth, synth.data.dim());
  std::printf("wrote %zu points (dim %zu) to %s, truth to %s\n", synth.data.size(),
              synth.data.dim(), output.c_str(), truth_path.c_str());
}

void cmd_filter(const std::string& input, const std::string& output,
                std::string removed_path, double radius, int min_neighbors) {
  const Dataset data = parse_csv(input);
  DensityFilterConfig cfg;
  cfg.radius = radius;
  cfg.min_neighbors = min_neighbors;
  const DensityFilterResult res = density_filter(data, cfg);
  write_points_csv(output, res.kept);
  if (removed_path.empty()) removed_path = output + ".removed.csv";
  std::ofstream rem(removed_path, std::ios::binary);
  if (!rem) throw std::runtime_error(removed_path + ": cannot open for writing");
  for (std::size_t idx : res.removed_indices) rem << idx << '\n';
  for (const auto& w : res.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  std::printf("kept %zu of %zu points (radius %s); removed indices in %s\n", res.kept.size(),
              data.size(), format_double(res.radius_used).c_str(), removed_path.c_str());
}

void cmd_cluster(const std::string& input, int k_min, int k_max, int threads,
                 const std::string& out_dir, LloydParams lp) {
  const Dataset data = parse_csv(input);
  SweepParams sp;
  sp.lloyd = lp;
  sp.threads = threads;
  const SweepResult swept = sweep(data, k_min, k_max, sp);
  for (const auto& w : swept.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::ofstream err((fs::path(out_dir) / "errors.csv").string(), std::ios::binary);
  err << "k,error,iterations,stop\n";
  for (const auto& r : swept.results) {
    err << r.k << ',' << format_double(r.error) << ',' << r.iterations << ','
        << to_string(r.stop) << '\n';
    std::ofstream lab((fs::path(out_dir) / ("labels_k" + std::to_string(r.k) + ".csv")).string(),
                      std::ios::binary);
    for (int l : r.labels) lab << l << '\n';
    Dataset centroids(r.dim, r.centroids);
    write_points_csv((fs::path(out_dir) / ("centroids_k" + std::to_string(r.k) + ".csv")).string(),
                     centroids);
  }
  std::printf("swept k=%d..%d on %zu points; outputs in %s\n", k_min, k_max, data.size(),
              out_dir.c_str());
}

void print_report_summary(const EstimationReport& rep) {
  const auto join = [](const std::vector<int>& v) {
    if (v.empty()) return std::string("none");
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i]);
    }
    return s;
  };
  std::printf("additive candidates: %s\n", join(rep.additive_candidates).c_str());
  std::printf("multiplicative global min: %d%s\n", rep.mult_global_min,
              rep.mult_global_interior ? "" : " (boundary)");
  std::printf("multiplicative candidates: %s\n", join(rep.mult_candidates).c_str());
  std::printf("agreed: %s\n", join(rep.agreed).c_str());
  std::printf("final estimate: %s\n",
              rep.final_estimate ? std::to_string(*rep.final_estimate).c_str() : "none");
}

void cmd_geometry(int d_min, int d_max, double radius) {
  std::printf("d,alpha,beta,gamma,alpha_over_2beta\n");
  for (int d = d_min; d <= d_max; ++d) {
    const GeometryConstants c = constants(d, radius);
    std::printf("%d,%s,%s,%s,%s\n", d, format_double(c.alpha).c_str(),
                format_double(c.beta).c_str(), format_double(c.gamma).c_str(),
                format_double(c.alpha_over_two_beta()).c_str());
  }
}

void cmd_verify(std::size_t samples, std::uint64_t seed) {
  std::printf("shape,d,quantity,closed_form,estimate,std_error,abs_z\n");
  const int dims[] = {1, 2, 3, 8, 16};
  for (int d : dims) {
    const GeometryConstants c = constants(d, 1.0);
    const McMoments sph = mc_moments(d, 1.0, McShape::sphere, samples, seed);
    const McMoments half = mc_moments(d, 1.0, McShape::half_sphere, samples, seed + 1);
    const auto row = [&](const char* shape, const char* what, double exact, double est,
                         double se) {
      std::printf("%s,%d,%s,%s,%s,%s,%s\n", shape, d, what, format_double(exact).c_str(),
                  format_double(est).c_str(), format_double(se).c_str(),
                  format_double(se > 0 ? std::fabs(est - exact) / se : 0.0).c_str());
    };
    row("sphere", "mean_sq_dev", c.alpha, sph.mean_sq_dev, sph.sq_dev_se);
    row("half_sphere", "centroid_offset", c.rho, half.mean_offset, half.offset_se);
    row("half_sphere", "mean_sq_dev", 2.0 * c.beta, half.mean_sq_dev, half.sq_dev_se);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"penalized k-means cluster-count estimation"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an ideal-cluster dataset");
  SynthFlags gen_flags;
  gen_flags.attach(gen, true);
  std::string gen_output, gen_truth;
  bool gen_header = false;
  gen->add_option("--output,-o", gen_output, "output CSV path")->required();
  gen->add_option("--truth", gen_truth, "truth sidecar path (default <output>.truth.csv)");
  gen->add_flag("--header", gen_header, "write a header row");

  // filter
  auto* filter = app.add_subcommand("filter", "density-based outlier removal");
  std::string f_in, f_out, f_removed;
  double f_radius = 0.0;
  int f_minn = 5;
  filter->add_option("--input,-i", f_in, "input CSV")->required();
  filter->add_option("--output,-o", f_out, "output CSV")->required();
  filter->add_option("--removed", f_removed, "removed-indices sidecar path");
  filter->add_option("--radius", f_radius, "neighborhood radius (0 = auto)");
  filter->add_option("--min-neighbors", f_minn, "density threshold");

  // cluster
  auto* cluster = app.add_subcommand("cluster", "farthest-first k-means over a k range");
  std::string c_in, c_dir = "cluster_out";
  int c_kmin = 2, c_kmax = 0, c_threads = 1;
  LloydParams c_lp;
  cluster->add_option("--input,-i", c_in, "input CSV")->required();
  cluster->add_option("--k-min", c_kmin, "smallest k");
  cluster->add_option("--k-max", c_kmax, "largest k (default = k-min)");
  cluster->add_option("--threads", c_threads, "worker threads across k values");
  cluster->add_option("--max-iter", c_lp.max_iter, "Lloyd iteration cap");
  cluster->add_option("--tol", c_lp.tol, "relative error-decrease tolerance");
  cluster->add_option("--output-dir,-o", c_dir, "output directory");

  // scan / estimate share most flags
  auto add_pipeline_flags = [](CLI::App* cmd, RunConfig& cfg, std::string& family,
                               double& poly_p, SynthFlags& synth_flags, bool& use_synth) {
    cmd->add_option("--input,-i", cfg.input_path, "input CSV");
    cmd->add_flag("--synth", use_synth, "generate input from the synth flags instead");
    synth_flags.attach(cmd, false);
    cmd->add_option("--scan-k-max", cfg.scan_k_max, "largest assumed K in the scan");
    cmd->add_option("--k-max", cfg.k_max, "sweep upper k (0 = min(3*scan_k_max, N-1))");
    cmd->add_option("--family", family, "penalty family: linear, log, poly, exp");
    cmd->add_option("--poly-p", poly_p, "polynomial exponent p");
    cmd->add_flag("--filter", cfg.filter, "apply the density filter first");
    cmd->add_option("--filter-radius", cfg.filter_cfg.radius, "filter radius (0 = auto)");
    cmd->add_option("--filter-min-neighbors", cfg.filter_cfg.min_neighbors,
                    "filter density threshold");
    cmd->add_option("--threads", cfg.threads, "worker threads across k values");
    cmd->add_option("--output-dir,-o", cfg.out_dir, "report directory");
    cmd->add_flag("--plots", cfg.emit_plots, "emit SVG curve plots");
  };

  auto* scan = app.add_subcommand("scan", "assumed-vs-estimated additive-penalty scan");
  RunConfig scan_cfg;
  scan_cfg.out_dir = "scan_out";
  std::string scan_family = "linear";
  double scan_p = 2.0;
  SynthFlags scan_synth;
  bool scan_use_synth = false;
  add_pipeline_flags(scan, scan_cfg, scan_family, scan_p, scan_synth, scan_use_synth);

  auto* est = app.add_subcommand("estimate", "full pipeline with agreement disambiguation");
  RunConfig est_cfg;
  est_cfg.out_dir = "estimate_out";
  std::string est_family = "linear";
  double est_p = 2.0;
  SynthFlags est_synth;
  bool est_use_synth = false;
  add_pipeline_flags(est, est_cfg, est_family, est_p, est_synth, est_use_synth);

  // geometry
  auto* geo = app.add_subcommand("geometry", "constants table for a dimension range");
  int g_dmin = 1, g_dmax = 20;
  double g_radius = 1.0;
  geo->add_option("--d-min", g_dmin, "first dimension");
  geo->add_option("--d-max", g_dmax, "last dimension");
  geo->add_option("--radius,-R", g_radius, "ball radius");

  // verify
  auto* verify = app.add_subcommand("verify", "Monte Carlo vs closed-form table");
  std::size_t v_samples = 100000;
  std::uint64_t v_seed = 0;
  verify->add_option("--samples", v_samples, "samples per estimate");
  verify->add_option("--seed", v_seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      cmd_gen(gen_flags, gen_output, gen_truth, gen_header);
    } else if (filter->parsed()) {
      cmd_filter(f_in, f_out, f_removed, f_radius, f_minn);
    } else if (cluster->parsed()) {
      if (c_kmax == 0) c_kmax = c_kmin;
      cmd_cluster(c_in, c_kmin, c_kmax, c_threads, c_dir, c_lp);
    } else if (scan->parsed() || est->parsed()) {
      RunConfig& cfg = scan->parsed() ? scan_cfg : est_cfg;
      cfg.family = PenaltyFamily::parse(scan->parsed() ? scan_family : est_family,
                                        scan->parsed() ? scan_p : est_p);
      const bool use_synth = scan->parsed() ? scan_use_synth : est_use_synth;
      if (use_synth) cfg.synth = (scan->parsed() ? scan_synth : est_synth).spec;
      const RunOutput out = run_estimate(cfg);
      for (const auto& w : out.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      print_report_summary(out.report);
      std::printf("report written to %s\n", cfg.out_dir.c_str());
    } else if (geo->parsed()) {
      if (g_dmin < 1 || g_dmin > g_dmax) throw std::invalid_argument("geometry: bad d range");
      cmd_geometry(g_dmin, g_dmax, g_radius);
    } else if (verify->parsed()) {
      cmd_verify(v_samples, v_seed);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
