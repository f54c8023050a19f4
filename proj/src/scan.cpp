#include "nrmm/scan.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nrmm/localization.hpp"
#include "nrmm/spectral.hpp"
#include "nrmm/topology.hpp"
#include "nrmm/version.hpp"

namespace nrmm {

std::set<Quantity> parse_quantities(const std::string& csv_list) {
  std::set<Quantity> out;
  std::stringstream ss(csv_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "max_im")
      out.insert(Quantity::max_im);
    else if (item == "rho")
      out.insert(Quantity::rho);
    else if (item == "min_ipr")
      out.insert(Quantity::min_ipr);
    else if (item == "w")
      out.insert(Quantity::w);
    else
      throw std::invalid_argument("unknown quantity: " + item);
  }
  if (out.empty()) throw std::invalid_argument("no quantities requested");
  return out;
}

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::max_im: return "max_im";
    case Quantity::rho: return "rho";
    case Quantity::min_ipr: return "min_ipr";
    case Quantity::w: return "w";
  }
  return "?";
}

double GridSpec::v_at(int i) const {
  if (v_count <= 1) return v_min;
  return v_min + (v_max - v_min) * i / (v_count - 1);
}

double GridSpec::gamma_at(int j) const {
  if (gamma_count <= 1) return gamma_min;
  return gamma_min + (gamma_max - gamma_min) * j / (gamma_count - 1);
}

void validate(const GridSpec& spec) {
  if (spec.v_count < 1 || spec.gamma_count < 1)
    throw std::invalid_argument("GridSpec: counts must be >= 1");
  if (!std::isfinite(spec.v_min) || !std::isfinite(spec.v_max) ||
      !std::isfinite(spec.gamma_min) || !std::isfinite(spec.gamma_max))
    throw std::invalid_argument("GridSpec: ranges must be finite");
  if (spec.v_max < spec.v_min || spec.gamma_max < spec.gamma_min)
    throw std::invalid_argument("GridSpec: range max below min");
  if (spec.J == 0.0) throw std::invalid_argument("GridSpec: J must be nonzero");
  if (spec.n_theta < 64)
    throw std::invalid_argument("GridSpec: n_theta must be >= 64");
}

namespace {

int resolve_workers(int configured) {
  if (const char* env = std::getenv("NRMM_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  if (configured > 0) return configured;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

ModelParams cell_params(const GridSpec& spec, double v, double gamma) {
  ModelParams p;
  p.J = spec.J;
  p.V = v;
  p.gamma = gamma;
  p.alpha = fibonacci_alpha(spec.alpha_level);
  p.L = spec.L > 0 ? spec.L : static_cast<int>(p.alpha.den);
  p.theta = spec.theta;
  return p;
}

void compute_cell(const GridSpec& spec, const std::set<Quantity>& quantities,
                  PhaseCell& cell) {
  const ModelParams params = cell_params(spec, cell.V, cell.gamma);
  const bool need_spectrum = quantities.count(Quantity::max_im) ||
                             quantities.count(Quantity::rho) ||
                             quantities.count(Quantity::min_ipr);
  const bool need_vectors = quantities.count(Quantity::min_ipr) > 0;
  if (need_spectrum) {
    const Spectrum s = eigendecompose(build_hamiltonian(params), need_vectors);
    if (quantities.count(Quantity::max_im)) cell.max_im = max_abs_imag(s);
    if (quantities.count(Quantity::rho))
      cell.rho = complex_dos(s, spec.im_threshold);
    if (need_vectors) cell.min_ipr = ipr_summary(s).min;
  }
  if (quantities.count(Quantity::w))
    cell.w = winding_number(params, spec.base_energy, spec.n_theta).w;
}

}  // namespace

PhaseDiagram phase_scan(const GridSpec& spec, const std::set<Quantity>& quantities) {
  validate(spec);
  if (quantities.empty())
    throw std::invalid_argument("phase_scan: no quantities requested");
  validate(cell_params(spec, spec.v_at(0), spec.gamma_at(0)));

  const auto start = std::chrono::steady_clock::now();
  const std::size_t total =
      static_cast<std::size_t>(spec.v_count) * static_cast<std::size_t>(spec.gamma_count);

  PhaseDiagram diagram;
  diagram.grid = spec;
  diagram.version = kVersion;
  diagram.cells.resize(total);
  for (int i = 0; i < spec.v_count; ++i)
    for (int j = 0; j < spec.gamma_count; ++j) {
      PhaseCell& cell =
          diagram.cells[static_cast<std::size_t>(i) * spec.gamma_count + j];
      cell.V = spec.v_at(i);
      cell.gamma = spec.gamma_at(j);
    }

  const int workers =
      std::min<int>(resolve_workers(spec.workers), static_cast<int>(total));
  std::atomic<std::size_t> next{0};
  const auto run = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= total) return;
      PhaseCell& cell = diagram.cells[k];
      try {
        compute_cell(spec, quantities, cell);
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
      }
    }
  };

  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }

  diagram.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return diagram;
}

}  // namespace nrmm
