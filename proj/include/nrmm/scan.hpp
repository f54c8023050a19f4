#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nrmm/model.hpp"

namespace nrmm {

enum class Quantity { max_im, rho, min_ipr, w };

std::set<Quantity> parse_quantities(const std::string& csv_list);
std::string quantity_name(Quantity q);

/// Rectangular (V, gamma) grid plus the fixed parameters shared by every
/// cell. L == 0 resolves to F_{alpha_level + 1} (commensurate default).
/// workers == 0 means hardware concurrency; the NRMM_WORKERS environment
/// variable overrides either value.
struct GridSpec {
  double v_min = 0.0;
  double v_max = 2.0;
  int v_count = 2;
  double gamma_min = 0.0;
  double gamma_max = 1.5;
  int gamma_count = 2;

  double J = 1.0;
  int alpha_level = 13;
  int L = 0;
  double theta = 0.0;
  int n_theta = 256;
  double im_threshold = 1e-5;
  Complex base_energy{0.0, 0.0};
  int workers = 0;

  double v_at(int i) const;
  double gamma_at(int j) const;
};

void validate(const GridSpec& spec);

struct PhaseCell {
  double V = 0.0;
  double gamma = 0.0;
  std::optional<double> max_im;
  std::optional<double> rho;
  std::optional<double> min_ipr;
  std::optional<int> w;
  bool ok = true;
  std::string error;  // per-cell failure, does not abort the scan
};

struct PhaseDiagram {
  GridSpec grid;
  std::vector<PhaseCell> cells;  // row-major, V outer / gamma inner
  std::string version;
  double wall_seconds = 0.0;
};

/// Deterministic scan over the grid: cells are independent work items
/// dispatched to a worker pool and written in fixed (V, gamma) order
/// regardless of completion order. Eigenvectors are computed only when
/// min_ipr is requested; the theta loop runs only for w.
PhaseDiagram phase_scan(const GridSpec& spec, const std::set<Quantity>& quantities);

}  // namespace nrmm
