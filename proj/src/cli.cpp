#include "nrmm/cli.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "nrmm/floquet.hpp"
#include "nrmm/io.hpp"
#include "nrmm/localization.hpp"
#include "nrmm/model.hpp"
#include "nrmm/scan.hpp"
#include "nrmm/spectral.hpp"
#include "nrmm/topology.hpp"
#include "nrmm/version.hpp"

namespace nrmm {

namespace {

struct CliOptions {
  double J = 1.0;
  double V = 1.0;
  double gamma = 0.0;
  double theta = 0.0;
  int alpha_level = 13;
  int L = 0;  // 0 -> F_{level+1}
  int n_theta = 256;
  double im_threshold = 1e-5;
  std::string e0 = "0";
  std::string grid;  // vmin,vmax,vcount,gmin,gmax,gcount
  std::string quantities = "max_im,rho";
  std::string format = "csv";
  std::string out;
  double margin = 0.05;
  int samples = 10000;
  unsigned seed = 12345;
  double denom_floor = 1e-12;
  int workers = 0;
  std::string config_path;
};

Complex parse_complex(const std::string& text) {
  std::stringstream ss(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(ss >> re)) throw CLI::ValidationError("--E0", "expected re[,im]");
  if (ss >> comma) {
    if (comma != ',' || !(ss >> im))
      throw CLI::ValidationError("--E0", "expected re[,im]");
  }
  return Complex(re, im);
}

void load_config(const std::string& path, CliOptions& opt) {
  std::ifstream is(path);
  if (!is) throw CLI::ValidationError("--config", "cannot open " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--config", std::string("parse error: ") + e.what());
  }
  if (j.contains("J")) opt.J = j["J"].get<double>();
  if (j.contains("V")) opt.V = j["V"].get<double>();
  if (j.contains("gamma")) opt.gamma = j["gamma"].get<double>();
  if (j.contains("theta")) opt.theta = j["theta"].get<double>();
  if (j.contains("alpha_level")) opt.alpha_level = j["alpha_level"].get<int>();
  if (j.contains("L")) opt.L = j["L"].get<int>();
  if (j.contains("n_theta")) opt.n_theta = j["n_theta"].get<int>();
  if (j.contains("im_threshold")) opt.im_threshold = j["im_threshold"].get<double>();
  if (j.contains("E0")) {
    const auto& e0 = j["E0"];
    if (e0.is_array())
      opt.e0 = std::to_string(e0.at(0).get<double>()) + "," +
               std::to_string(e0.size() > 1 ? e0.at(1).get<double>() : 0.0);
    else
      opt.e0 = e0.is_string() ? e0.get<std::string>()
                              : std::to_string(e0.get<double>());
  }
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    std::ostringstream ss;
    ss << g["v"].at(0).get<double>() << ',' << g["v"].at(1).get<double>() << ','
       << g["v"].at(2).get<int>() << ',' << g["gamma"].at(0).get<double>() << ','
       << g["gamma"].at(1).get<double>() << ',' << g["gamma"].at(2).get<int>();
    opt.grid = ss.str();
  }
  if (j.contains("quantities")) {
    if (j["quantities"].is_array()) {
      std::string list;
      for (const auto& q : j["quantities"]) {
        if (!list.empty()) list += ',';
        list += q.get<std::string>();
      }
      opt.quantities = list;
    } else {
      opt.quantities = j["quantities"].get<std::string>();
    }
  }
  if (j.contains("format")) opt.format = j["format"].get<std::string>();
  if (j.contains("out")) opt.out = j["out"].get<std::string>();
  if (j.contains("margin")) opt.margin = j["margin"].get<double>();
  if (j.contains("samples")) opt.samples = j["samples"].get<int>();
  if (j.contains("seed")) opt.seed = j["seed"].get<unsigned>();
  if (j.contains("denom_floor")) opt.denom_floor = j["denom_floor"].get<double>();
  if (j.contains("workers")) opt.workers = j["workers"].get<int>();
}

ModelParams model_from(const CliOptions& opt, std::ostream& err) {
  ModelParams p;
  p.J = opt.J;
  p.V = opt.V;
  p.gamma = opt.gamma;
  p.alpha = fibonacci_alpha(opt.alpha_level);
  p.L = opt.L > 0 ? opt.L : static_cast<int>(p.alpha.den);
  p.theta = opt.theta;
  validate(p);
  if (!p.commensurate())
    err << "warning: L=" << p.L << " is not a multiple of q=" << p.alpha.den
        << "; the potential is not exactly periodic over the ring\n";
  return p;
}

GridSpec grid_from(const CliOptions& opt) {
  if (opt.grid.empty())
    throw CLI::ValidationError("--grid",
                               "required: vmin,vmax,vcount,gmin,gmax,gcount");
  std::stringstream ss(opt.grid);
  std::string item;
  std::vector<double> vals;
  while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
  if (vals.size() != 6)
    throw CLI::ValidationError("--grid", "expected 6 comma-separated values");
  GridSpec spec;
  spec.v_min = vals[0];
  spec.v_max = vals[1];
  spec.v_count = static_cast<int>(vals[2]);
  spec.gamma_min = vals[3];
  spec.gamma_max = vals[4];
  spec.gamma_count = static_cast<int>(vals[5]);
  spec.J = opt.J;
  spec.alpha_level = opt.alpha_level;
  spec.L = opt.L;
  spec.theta = opt.theta;
  spec.n_theta = opt.n_theta;
  spec.im_threshold = opt.im_threshold;
  spec.base_energy = parse_complex(opt.e0);
  spec.workers = opt.workers;
  validate(spec);
  return spec;
}

template <typename T>
void write_result(const T& value, const CliOptions& opt, std::ostream& out) {
  const Format fmt = parse_format(opt.format);
  if (opt.out.empty())
    emit(value, fmt, out);
  else
    emit_to_file(value, fmt, opt.out);
}

void write_states(const std::vector<StateDiagnostics>& states, const Spectrum& s,
                  const CliOptions& opt, std::ostream& out) {
  const Format fmt = parse_format(opt.format);
  if (opt.out.empty()) {
    emit(states, fmt, out, &s);
  } else {
    std::ofstream os(opt.out);
    if (!os) throw std::runtime_error("cannot open output file: " + opt.out);
    emit(states, fmt, os, &s);
  }
}

int run_spectrum(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  const ModelParams params = model_from(opt, err);
  const Spectrum s = eigendecompose(build_hamiltonian(params), true);
  const auto states = classify_states(s, params, opt.im_threshold);
  write_states(states, s, opt, out);
  err << "L=" << params.L << " max|Im E|=" << format_double(max_abs_imag(s))
      << " rho=" << format_double(complex_dos(s, opt.im_threshold)) << '\n';
  return 0;
}

int run_ipr(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  const ModelParams params = model_from(opt, err);
  const Spectrum s = eigendecompose(build_hamiltonian(params), true);
  const IprSummary summary = ipr_summary(s);
  out << "min_ipr=" << format_double(summary.min)
      << " max_ipr=" << format_double(summary.max)
      << " mean_ipr=" << format_double(summary.mean) << '\n';
  if (!opt.out.empty()) {
    const auto states = classify_states(s, params, opt.im_threshold);
    std::ofstream os(opt.out);
    if (!os) throw std::runtime_error("cannot open output file: " + opt.out);
    emit(states, parse_format(opt.format), os, &s);
  }
  return 0;
}

int run_winding(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  const ModelParams params = model_from(opt, err);
  const WindingResult result =
      winding_number(params, parse_complex(opt.e0), opt.n_theta);
  out << result.w << '\n';
  if (!opt.out.empty()) emit_to_file(result, parse_format(opt.format), opt.out);
  return 0;
}

int run_mobility_edge(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.gamma == 0.0)
    throw CLI::ValidationError(
        "--gamma", "the mobility edge is undefined in the Hermitian limit");
  const ModelParams params = model_from(opt, err);
  const Spectrum s = eigendecompose(build_hamiltonian(params), true);
  const auto states = classify_states(s, params, opt.im_threshold);
  write_states(states, s, opt, out);

  int outside = 0, agree = 0, extended = 0;
  for (const auto& d : states) {
    if (d.label == StateLabel::extended) ++extended;
    if (std::abs(d.ellipse_value - 1.0) <= opt.margin) continue;
    ++outside;
    if ((d.ellipse_value < 1.0) == (d.label == StateLabel::extended)) ++agree;
  }
  err << "states=" << states.size() << " extended=" << extended
      << " outside_margin=" << outside << " classifier_agreement="
      << (outside ? static_cast<double>(agree) / outside : 1.0) << '\n';
  return 0;
}

int run_phase_diagram(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  const GridSpec spec = grid_from(opt);
  const auto quantities = parse_quantities(opt.quantities);
  const PhaseDiagram diagram = phase_scan(spec, quantities);
  int failures = 0;
  for (const auto& c : diagram.cells)
    if (!c.ok) ++failures;
  if (failures)
    err << "warning: " << failures << " of " << diagram.cells.size()
        << " cells failed (recorded in-cell)\n";
  write_result(diagram, opt, out);
  return 0;
}

int run_floquet_check(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  const ModelParams params = model_from(opt, err);
  const Spectrum s = eigendecompose(build_hamiltonian(params), true);

  double worst = 0.0;
  int unverifiable = 0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const RatioCheck check = eigenpair_ratio_check(
        s.eigenvalues(i), s.right_vectors->col(i), params, opt.denom_floor);
    worst = std::max(worst, check.max_residual);
    unverifiable += check.unverifiable_sites;
  }
  out << "eigen_ratio_max_residual=" << format_double(worst)
      << " unverifiable_sites=" << unverifiable
      << " denom_floor=" << format_double(opt.denom_floor) << '\n';

  std::mt19937 rng(opt.seed);
  std::uniform_real_distribution<double> ux(-M_PI, M_PI), ure(-2.0, 2.0),
      uim(-1.0, 1.0), uv(0.5, 2.5), ug(-1.0, 1.0);
  double kick_worst = 0.0;
  int done = 0;
  while (done < opt.samples) {
    const double x = ux(rng);
    const Complex energy(ure(rng), uim(rng));
    const double v = uv(rng);
    const double g = ug(rng);
    try {
      kick_worst = std::max(kick_worst, kick_identity_check(x, energy, v, g));
    } catch (const KickPoleError&) {
      continue;  // resample away from the pole
    }
    ++done;
  }
  out << "kick_identity_max_residual=" << format_double(kick_worst)
      << " samples=" << opt.samples << '\n';

  if (params.commensurate() && params.L == params.alpha.den) {
    // Quasienergy experiment at the eigenvalue nearest the spectrum center.
    Eigen::Index pick = 0;
    for (Eigen::Index i = 1; i < s.eigenvalues.size(); ++i)
      if (std::abs(s.eigenvalues(i)) < std::abs(s.eigenvalues(pick))) pick = i;
    const RingSpectrum ring =
        ring_propagator_spectrum(params, s.eigenvalues(pick));
    out << "ring_min_abs_eigenphase=" << format_double(ring.min_abs_phase)
        << " at_E=" << format_double(s.eigenvalues(pick).real()) << ","
        << format_double(s.eigenvalues(pick).imag()) << '\n';
  }
  return 0;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  CLI::App app{"nrmm: spectra, localization diagnostics, winding numbers and "
               "phase-diagram scans of the nonreciprocal Maryland model"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CliOptions opt;
  // Config files load first so that explicit flags win.
  try {
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size())
        load_config(args[i + 1], opt);
      else if (args[i].rfind("--config=", 0) == 0)
        load_config(args[i].substr(9), opt);
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--J", opt.J, "hopping amplitude");
    cmd->add_option("--V", opt.V, "onsite potential amplitude");
    cmd->add_option("--gamma", opt.gamma, "hopping asymmetry");
    cmd->add_option("--theta", opt.theta, "boundary twist");
    cmd->add_option("--alpha-level", opt.alpha_level,
                    "Fibonacci level l; alpha = F_l / F_{l+1}");
    cmd->add_option("--L", opt.L, "lattice length (0 = F_{l+1})");
    cmd->add_option("--im-threshold", opt.im_threshold,
                    "|Im E| cutoff for counting complex eigenvalues");
    cmd->add_option("--format", opt.format, "csv or json");
    cmd->add_option("--out", opt.out, "output file (default stdout)");
    cmd->add_option("--config", opt.config_path,
                    "JSON config file; flags take precedence");
    return cmd;
  };

  auto* spectrum = add_common(app.add_subcommand(
      "spectrum", "full eigendecomposition with per-state diagnostics"));
  auto* ipr_cmd = add_common(
      app.add_subcommand("ipr", "min/max/mean inverse participation ratio"));
  auto* winding = add_common(
      app.add_subcommand("winding", "spectral winding number around E0"));
  winding->add_option("--E0", opt.e0, "base energy re[,im]");
  winding->add_option("--n-theta", opt.n_theta, "twist grid size (>= 64)");
  auto* mobility = add_common(app.add_subcommand(
      "mobility-edge", "per-state table with mobility-edge classification"));
  mobility->add_option("--margin", opt.margin,
                       "|ellipse_value - 1| band excluded from agreement");
  auto* phase = add_common(app.add_subcommand(
      "phase-diagram", "scan a (V, gamma) grid and emit per-cell quantities"));
  phase->add_option("--grid", opt.grid, "vmin,vmax,vcount,gmin,gmax,gcount");
  phase->add_option("--quantities", opt.quantities,
                    "comma list from max_im,rho,min_ipr,w");
  phase->add_option("--E0", opt.e0, "base energy for w");
  phase->add_option("--n-theta", opt.n_theta, "twist grid size for w");
  phase->add_option("--workers", opt.workers,
                    "worker threads (0 = hardware; NRMM_WORKERS overrides)");
  auto* floquet = add_common(app.add_subcommand(
      "floquet-check", "kicked-particle identities and ring propagator"));
  floquet->add_option("--samples", opt.samples, "kick-identity sample count");
  floquet->add_option("--seed", opt.seed, "RNG seed for sampling");
  floquet->add_option("--denom-floor", opt.denom_floor,
                      "unverifiable-site denominator floor");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(opt, out, err);
    if (ipr_cmd->parsed()) return run_ipr(opt, out, err);
    if (winding->parsed()) return run_winding(opt, out, err);
    if (mobility->parsed()) return run_mobility_edge(opt, out, err);
    if (phase->parsed()) return run_phase_diagram(opt, out, err);
    if (floquet->parsed()) return run_floquet_check(opt, out, err);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace nrmm
