// Command-line laboratory: each subcommand runs one numerical experiment
// and writes figure-ready CSV plus a manifest echoing the resolved
// configuration, so every output is reproducible from its manifest alone.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "sslab/catmap.hpp"
#include "sslab/csv.hpp"
#include "sslab/decay.hpp"
#include "sslab/fields.hpp"
#include "sslab/kicks.hpp"
#include "sslab/special.hpp"
#include "sslab/stats.hpp"

namespace fs = std::filesystem;
using namespace sslab;

namespace {

constexpr double kPi = std::numbers::pi;

struct CommonOpts {
  std::string out_dir = ".";
  std::string preset;
  std::string config_file;
  std::uint64_t seed = 12345;
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& c, const std::string& presets) {
  const char* env_out = std::getenv("SSLAB_OUT");
  if (env_out) c.out_dir = env_out;
  cmd->add_option("--out", c.out_dir, "output directory");
  cmd->add_option("--preset", c.preset, "named configuration: " + presets);
  cmd->add_option("--seed", c.seed, "master RNG seed");
  cmd->add_option("--threads", c.threads,
                  "worker threads (never affects results)");
  cmd->add_option("--config", c.config_file,
                  "flat key=value config file; explicit flags win");
}

// Expand `--config file` into ordinary --key value arguments for every
// key the command line does not already carry, so precedence is
// flag > config file > built-in default and unknown keys are rejected
// by the regular option parser.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line is not key=value: " + line);
    const std::string key = line.substr(first, eq - first);
    const std::string value = line.substr(eq + 1);
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
    if (!given) {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

// True when the user did not pass the option explicitly (so a preset may
// fill it in without overriding the command line).
bool unset(const CLI::App* cmd, const std::string& name) {
  return cmd->get_option(name)->count() == 0;
}

class Manifest {
 public:
  Manifest(const std::string& subcommand, const CommonOpts& c)
      : out_(fs::path(c.out_dir) / "manifest.txt") {
    put("subcommand", subcommand);
    put("preset", c.preset.empty() ? "none" : c.preset);
    put("seed", std::to_string(c.seed));
    put("threads", std::to_string(c.threads));
  }
  void put(const std::string& key, const std::string& value) {
    out_ << key << "=" << value << "\n";
  }
  void put(const std::string& key, double value) {
    put(key, format_double(value));
  }
  void put(const std::string& key, long value) {
    put(key, std::to_string(value));
  }
  void put(const std::string& key, int value) {
    put(key, std::to_string(value));
  }

 private:
  std::ofstream out_;
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

// ---------------------------------------------------------------- decay

struct DecayOpts {
  CommonOpts common;
  int n = 1, N = 100;
  double delta_omega = 2.0 * kPi / 300.0;
  double g = 1.0 / 70.0;
  double tmax = 400.0;
  int nt = 4001;
  double fit_lo = 20.0, fit_hi = 70.0;
};

int run_decay(const DecayOpts& o) {
  Manifest m("decay", o.common);
  m.put("n", o.n);
  m.put("N", o.N);
  m.put("delta_omega", o.delta_omega);
  m.put("g", o.g);
  m.put("tmax", o.tmax);
  m.put("nt", o.nt);
  m.put("fit_lo", o.fit_lo);
  m.put("fit_hi", o.fit_hi);

  const DecayModel model = uniform_band_model(o.n, o.N, o.delta_omega, o.g);
  QuantumState psi0{VectorXcd::Zero(model.dim())};
  psi0.amplitudes[0] = 1.0;
  const auto grid = linspace(0.0, o.tmax, o.nt);
  const SurvivalCurve curve =
      survival_curve(model, psi0, grid, o.common.threads);

  CsvWriter csv((fs::path(o.common.out_dir) / "decay.csv").string(),
                {"t", "S"});
  for (std::size_t i = 0; i < grid.size(); ++i)
    csv.row({curve.times[i], curve.values[i]});

  const MatrixXcd H = assemble_hamiltonian(model);
  const double tau = zeno_time(H, psi0);
  std::vector<double> ft, fls;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i] >= o.fit_lo && grid[i] <= o.fit_hi && curve.values[i] > 0) {
      ft.push_back(grid[i]);
      fls.push_back(std::log(curve.values[i]));
    }
  const LinearFit fit = fit_line(ft, fls);
  std::ofstream diag(fs::path(o.common.out_dir) / "diagnostics.txt");
  diag << "zeno_time=" << format_double(tau) << "\n"
       << "golden_rule_slope=" << format_double(fit.slope) << "\n"
       << "golden_rule_prediction="
       << format_double(-2.0 * kPi * o.g * o.g / o.delta_omega) << "\n"
       << "recurrence_estimate=" << format_double(2.0 * kPi / o.delta_omega)
       << "\n";
  return 0;
}

// --------------------------------------------------------------- special

struct SpecialOpts {
  CommonOpts common;
  std::string variant = "demo";  // demo | constant | random-phase
  double t0 = 16.0;
  double g = 0.015;
  double tmax = 32.0;
  int nt = 641;
};

int run_special(const SpecialOpts& o) {
  Manifest m("special", o.common);
  m.put("variant", o.variant);
  m.put("t0", o.t0);
  m.put("g", o.g);
  m.put("tmax", o.tmax);
  m.put("nt", o.nt);

  DecayModel model;
  if (o.variant == "demo")
    model = demo_multi_level_model();
  else if (o.variant == "constant")
    model = constant_coupling_model(o.g);
  else if (o.variant == "random-phase")
    model = random_phase_model(o.g, o.common.seed);
  else
    throw ValidationError("special: unknown variant " + o.variant);

  const SpecialStateSet set = special_states(model, o.t0);
  CsvWriter spec((fs::path(o.common.out_dir) / "spectrum.csv").string(),
                 {"index", "eigenvalue"});
  for (int k = 0; k < model.n(); ++k)
    spec.row({static_cast<double>(k), set.eigenvalues[k]});

  const auto grid = linspace(0.0, o.tmax, o.nt);
  const SurvivalCurve top =
      specialness_trace(model, set, 0, grid, o.common.threads);
  const SurvivalCurve bottom =
      specialness_trace(model, set, model.n() - 1, grid, o.common.threads);
  // ensemble average over the canonical undecayed basis
  std::vector<double> avg(grid.size(), 0.0);
  for (int kk = 0; kk < model.n(); ++kk) {
    QuantumState basis{VectorXcd::Zero(model.dim())};
    basis.amplitudes[kk] = 1.0;
    const SurvivalCurve c =
        survival_curve(model, basis, grid, o.common.threads);
    for (std::size_t i = 0; i < grid.size(); ++i)
      avg[i] += c.values[i] / model.n();
  }
  CsvWriter tr((fs::path(o.common.out_dir) / "trace.csv").string(),
               {"t", "S_avg", "S_top", "S_bottom"});
  for (std::size_t i = 0; i < grid.size(); ++i)
    tr.row({grid[i], avg[i], top.values[i], bottom.values[i]});
  return 0;
}

// ---------------------------------------------------------------- catmap

struct CatmapOpts {
  CommonOpts common;
  int n_points = 250;
  int grains_per_side = 10;
  int horizon = 19;
  double ix = 0.0, iy = 0.0, iw = 0.1, ih = 0.1;
  double fx = 0.0, fy = 0.0, fw = 0.1, fh = 0.1;
  long budget = 10'000'000;
  std::string snapshot_times = "0,1,2,4,5,8,11,14,15,17,18,19";
};

int run_catmap(const CatmapOpts& o) {
  Manifest m("catmap", o.common);
  m.put("n_points", o.n_points);
  m.put("grains", o.grains_per_side);
  m.put("T", o.horizon);
  m.put("initial_box", format_double(o.ix) + "," + format_double(o.iy) + "," +
                           format_double(o.iw) + "," + format_double(o.ih));
  m.put("final_box", format_double(o.fx) + "," + format_double(o.fy) + "," +
                         format_double(o.fw) + "," + format_double(o.fh));
  m.put("budget", o.budget);
  m.put("snapshots", o.snapshot_times);

  TwoTimeProblem prob;
  prob.initial_box = {o.ix, o.iy, o.iw, o.ih};
  prob.final_box = {o.fx, o.fy, o.fw, o.fh};
  prob.horizon = o.horizon;
  prob.n_target = o.n_points;
  prob.seed = o.common.seed;
  prob.candidate_budget = o.budget;
  const GrainGrid grid{o.grains_per_side};

  const TwoTimeSolution sol = solve_two_time(prob, o.common.threads);
  std::vector<int> snaps;
  std::stringstream ss(o.snapshot_times);
  for (std::string item; std::getline(ss, item, ',');)
    snaps.push_back(std::stoi(item));

  CsvWriter snap((fs::path(o.common.out_dir) / "snapshots.csv").string(),
                 {"t", "x", "y"});
  CatEnsemble e = sol.constrained;
  for (int t = 0; t <= prob.horizon; ++t) {
    if (std::find(snaps.begin(), snaps.end(), t) != snaps.end())
      for (const auto& p : e.points)
        snap.row({static_cast<double>(t), p.x, p.y});
    if (t < prob.horizon) e = evolve(e, 1);
  }

  const EntropyTraces traces =
      entropy_experiment(prob, grid, o.common.threads);
  CsvWriter ent((fs::path(o.common.out_dir) / "entropy.csv").string(),
                {"t", "S_constrained", "S_unconstrained"});
  for (std::size_t i = 0; i < traces.times.size(); ++i)
    ent.row({static_cast<double>(traces.times[i]), traces.constrained[i],
             traces.unconstrained[i]});

  std::ofstream rep(fs::path(o.common.out_dir) / "acceptance.txt");
  rep << "acceptance_rate=" << format_double(sol.acceptance_rate()) << "\n"
      << "candidates_tried=" << sol.candidates_tried << "\n"
      << "final_box_area=" << format_double(prob.final_box.area()) << "\n";
  return 0;
}

// ----------------------------------------------------------------- kicks

struct KicksOpts {
  CommonOpts common;
  std::string mode = "probs";  // probs | expectation | selfavg | optimize
  double a = 1e-4;
  long n_max = 100000;
  int n_theta = 181;
  int batch = 100;
  int repeats = 10000;
  std::string opt_mode = "sorted";  // sorted | total
};

int run_kicks(const KicksOpts& o) {
  Manifest m("kicks", o.common);
  m.put("mode", o.mode);
  m.put("a", o.a);
  m.put("n_max", o.n_max);
  m.put("n_theta", o.n_theta);
  m.put("batch", o.batch);
  m.put("repeats", o.repeats);
  m.put("opt_mode", o.opt_mode);

  const fs::path dir(o.common.out_dir);
  if (o.mode == "probs") {
    CsvWriter csv((dir / "probs.csv").string(),
                  {"theta", "p_up", "p_down", "ratio", "tan2"});
    for (int i = 0; i < o.n_theta; ++i) {
      const double th = kPi * i / (o.n_theta - 1);
      const OutcomeProbabilities p = outcome_probabilities({o.a, th, o.n_max});
      const double half = std::tan(th / 2.0);
      csv.row({th, p.p_up, p.p_down,
               p.p_up > 0 ? p.p_down / p.p_up
                          : std::numeric_limits<double>::infinity(),
               half * half});
    }
  } else if (o.mode == "expectation") {
    CsvWriter csv((dir / "expectation.csv").string(),
                  {"theta", "mean_up", "mean_down", "mean_up_numeric",
                   "mean_down_numeric"});
    for (int i = 0; i < o.n_theta; ++i) {
      const double th = kPi * i / (o.n_theta - 1);
      const KickExpectations cf = conditional_kick_expectation_closed(th);
      const KickExpectations num =
          conditional_kick_expectation_numeric({o.a, th, o.n_max});
      csv.row({th, cf.mean_up, cf.mean_down, num.mean_up, num.mean_down});
    }
  } else if (o.mode == "selfavg") {
    const SelfAveragingReport r =
        self_averaging_test(o.a, o.batch, o.repeats, o.common.seed);
    std::ofstream rep(dir / "selfavg.txt");
    rep << "ks_cauchy=" << format_double(r.ks_cauchy) << "\n"
        << "ks_gauss=" << format_double(r.ks_gauss) << "\n"
        << "ks_critical_1pct=" << format_double(r.ks_critical_1pct) << "\n"
        << "cauchy_self_similar=" << (r.cauchy_passes ? "yes" : "no") << "\n"
        << "gauss_control_collapses=" << (r.gauss_fails ? "yes" : "no")
        << "\n";
  } else if (o.mode == "optimize") {
    const OptimizeMode mode = o.opt_mode == "total" ? OptimizeMode::Total
                                                    : OptimizeMode::Sorted;
    const AngleOptimum opt = optimize_entry_angle(mode);
    CsvWriter csv((dir / "objective.csv").string(), {"theta", "objective"});
    for (std::size_t i = 0; i < opt.thetas.size(); ++i)
      csv.row({opt.thetas[i], opt.objective[i]});
    std::ofstream rep(dir / "optimum.txt");
    rep << "mode=" << o.opt_mode << "\n"
        << "theta_star_rad=" << format_double(opt.theta_star) << "\n"
        << "theta_star_deg=" << format_double(opt.theta_star * 180.0 / kPi)
        << "\n";
  } else {
    throw ValidationError("kicks: unknown mode " + o.mode);
  }
  return 0;
}

// ---------------------------------------------------------------- fields

struct FieldsOpts {
  CommonOpts common;
  double s = 0.01, L = 0.1, I = 1.0;
  double z = 0.013;
  double y0 = -0.15, y1 = 0.15;
  int ny = 301;
  int n_nodes = 512;
  double delta_t = 1e-6;
};

int run_fields(const FieldsOpts& o) {
  Manifest m("fields", o.common);
  m.put("s", o.s);
  m.put("L", o.L);
  m.put("I", o.I);
  m.put("z", o.z);
  m.put("y0", o.y0);
  m.put("y1", o.y1);
  m.put("ny", o.ny);
  m.put("n_nodes", o.n_nodes);
  m.put("delta_t", o.delta_t);

  const WireLoop loop{o.s, o.L, o.I};
  CsvWriter csv((fs::path(o.common.out_dir) / "profile.csv").string(),
                {"y", "Bx", "By", "Bz", "dBx_dx"});
  for (int i = 0; i < o.ny; ++i) {
    const double y = o.y0 + (o.y1 - o.y0) * i / (o.ny - 1);
    const Vec3 bz = straight_wire_field(loop, y, o.z);
    const Vec3 gx = straight_wire_gradient_x(loop, y, o.z);
    // entry semicircle plus mirrored exit semicircle
    const double bx = semicircle_bx(loop, y + o.L / 2.0, o.z) -
                      semicircle_bx(loop, -y + o.L / 2.0, o.z);
    csv.row({y, bx, 0.0, bz[2], gx[0]});
  }
  const KickEstimate est = kick_estimates(o.delta_t, o.L);
  std::ofstream rep(fs::path(o.common.out_dir) / "estimates.txt");
  rep << "delta_t_s=" << format_double(est.delta_t) << "\n"
      << "B_delta_t_Ts=" << format_double(est.B_delta_t) << "\n"
      << "B_required_T=" << format_double(est.B_required) << "\n"
      << "E_field_V_per_m=" << format_double(est.E_field) << "\n"
      << "photon_energy_eV=" << format_double(est.photon_energy_eV) << "\n";
  const BracketMaximum bm = bracket_maximum(
      {0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95, 1.0});
  rep << "bracket_max=" << format_double(bm.value) << "\n"
      << "bracket_s_over_z=" << format_double(bm.s_over_z) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"special-state measurement laboratory"};
  app.require_subcommand(1);

  DecayOpts d;
  CLI::App* decay = app.add_subcommand("decay", "survival-probability curves");
  add_common(decay, d.common, "fig1");
  decay->add_option("--n", d.n, "discrete levels");
  decay->add_option("--N", d.N, "band levels");
  decay->add_option("--delta-omega", d.delta_omega, "band spacing");
  decay->add_option("--g", d.g, "coupling");
  decay->add_option("--tmax", d.tmax);
  decay->add_option("--nt", d.nt, "time-grid points");
  decay->add_option("--fit-lo", d.fit_lo, "exponential fit window start");
  decay->add_option("--fit-hi", d.fit_hi, "exponential fit window end");

  SpecialOpts s;
  CLI::App* special =
      app.add_subcommand("special", "near-0/1 survival eigenstates");
  add_common(special, s.common, "fig2");
  special->add_option("--variant", s.variant, "demo|constant|random-phase");
  special->add_option("--t0", s.t0, "measurement time");
  special->add_option("--g", s.g, "coupling for constant/random-phase");
  special->add_option("--tmax", s.tmax);
  special->add_option("--nt", s.nt, "time-grid points");

  CatmapOpts c;
  CLI::App* catmap =
      app.add_subcommand("catmap", "two-time entropy experiment");
  add_common(catmap, c.common, "fig3-5, fig6");
  catmap->add_option("--n-points", c.n_points, "constrained ensemble size");
  catmap->add_option("--grains", c.grains_per_side, "grains per side");
  catmap->add_option("--T", c.horizon, "time horizon");
  catmap->add_option("--ix", c.ix);
  catmap->add_option("--iy", c.iy);
  catmap->add_option("--iw", c.iw);
  catmap->add_option("--ih", c.ih);
  catmap->add_option("--fx", c.fx);
  catmap->add_option("--fy", c.fy);
  catmap->add_option("--fw", c.fw);
  catmap->add_option("--fh", c.fh);
  catmap->add_option("--budget", c.budget, "candidate budget");
  catmap->add_option("--snapshots", c.snapshot_times, "comma-separated times");

  KicksOpts k;
  CLI::App* kicks = app.add_subcommand("kicks", "Cauchy kick statistics");
  add_common(kicks, k.common, "angle-scan");
  kicks->add_option("--mode", k.mode, "probs|expectation|selfavg|optimize");
  kicks->add_option("--a", k.a, "Cauchy scale");
  kicks->add_option("--n-max", k.n_max, "summation cutoff");
  kicks->add_option("--n-theta", k.n_theta, "angle-grid points");
  kicks->add_option("--batch", k.batch, "batch size for selfavg");
  kicks->add_option("--repeats", k.repeats, "batches for selfavg");
  kicks->add_option("--opt-mode", k.opt_mode, "sorted|total");

  FieldsOpts f;
  CLI::App* fields = app.add_subcommand("fields", "wire-loop field profiles");
  add_common(fields, f.common, "field-profile");
  fields->add_option("--s", f.s, "half separation");
  fields->add_option("--L", f.L, "wire length");
  fields->add_option("--I", f.I, "current");
  fields->add_option("--z", f.z, "flight height");
  fields->add_option("--y0", f.y0);
  fields->add_option("--y1", f.y1);
  fields->add_option("--ny", f.ny, "profile points");
  fields->add_option("--n-nodes", f.n_nodes, "quadrature panels");
  fields->add_option("--delta-t", f.delta_t, "kick duration for estimates");

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ValidationError& e) {
    std::cerr << "error=validation message=" << e.what() << "\n";
    return 2;
  }
  CLI::App* sub = app.get_subcommands().front();

  try {
    // presets fill in documented figure configurations without overriding
    // anything given explicitly
    const std::string& preset = sub == decay     ? d.common.preset
                                : sub == special ? s.common.preset
                                : sub == catmap  ? c.common.preset
                                : sub == kicks   ? k.common.preset
                                                 : f.common.preset;
    if (!preset.empty()) {
      if (sub == decay && preset == "fig1") {
        // subcommand defaults are the fig1 configuration
      } else if (sub == special && preset == "fig2") {
        if (unset(sub, "--variant")) s.variant = "demo";
        if (unset(sub, "--t0")) s.t0 = 16.0;
      } else if (sub == catmap && (preset == "fig3-5" || preset == "fig6")) {
        if (unset(sub, "--grains")) c.grains_per_side = 10;
        if (unset(sub, "--T")) c.horizon = 19;
        if (unset(sub, "--n-points")) c.n_points = 250;
      } else if (sub == kicks && preset == "angle-scan") {
        if (unset(sub, "--mode")) k.mode = "optimize";
      } else if (sub == fields && preset == "field-profile") {
        // subcommand defaults are the field-profile configuration
      } else {
        throw ValidationError("unknown preset for " + sub->get_name() + ": " +
                              preset);
      }
    }

    const CommonOpts& common = sub == decay     ? d.common
                               : sub == special ? s.common
                               : sub == catmap  ? c.common
                               : sub == kicks   ? k.common
                                                : f.common;
    fs::create_directories(common.out_dir);
    if (sub == decay) return run_decay(d);
    if (sub == special) return run_special(s);
    if (sub == catmap) return run_catmap(c);
    if (sub == kicks) return run_kicks(k);
    return run_fields(f);
  } catch (const ValidationError& e) {
    std::cerr << "error=validation message=" << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error=numeric message=" << e.what() << "\n";
    return 3;
  } catch (const ResourceError& e) {
    std::cerr << "error=resource message=" << e.what() << "\n";
    return 4;
  }
}
