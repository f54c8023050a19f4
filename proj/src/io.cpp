#include "nrmm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "nrmm/version.hpp"

namespace nrmm {

using nlohmann::json;

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw std::invalid_argument("unknown format: " + name);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

const char* label_name(StateLabel label) {
  return label == StateLabel::extended ? "extended" : "localized";
}

json metadata_block() {
  return json{{"tool", "nrmm"}, {"version", kVersion}};
}

// JSON cannot carry inf/nan; those fields are emitted as null.
json json_double(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

void write_state_rows_csv(std::ostream& os, const Spectrum* s,
                          const std::vector<StateDiagnostics>* states) {
  os << "index,re_E,im_E,residual,ipr,ellipse_value,label\n";
  const std::size_t n = states ? states->size()
                               : static_cast<std::size_t>(s->eigenvalues.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Complex energy =
        states ? (*states)[i].energy : s->eigenvalues(static_cast<Eigen::Index>(i));
    os << i << ',' << format_double(energy.real()) << ','
       << format_double(energy.imag()) << ',';
    if (s && i < s->residuals.size()) os << format_double(s->residuals[i]);
    os << ',';
    if (states) os << format_double((*states)[i].ipr);
    os << ',';
    if (states) {
      const double ev = (*states)[i].ellipse_value;
      os << (std::isfinite(ev) ? format_double(ev) : std::string("inf"));
    }
    os << ',';
    if (states) os << label_name((*states)[i].label);
    os << '\n';
  }
}

json state_rows_json(const Spectrum* s, const std::vector<StateDiagnostics>* states) {
  json rows = json::array();
  const std::size_t n = states ? states->size()
                               : static_cast<std::size_t>(s->eigenvalues.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Complex energy =
        states ? (*states)[i].energy : s->eigenvalues(static_cast<Eigen::Index>(i));
    json row{{"index", i},
             {"re_E", energy.real()},
             {"im_E", energy.imag()}};
    if (s && i < s->residuals.size()) row["residual"] = s->residuals[i];
    if (states) {
      row["ipr"] = (*states)[i].ipr;
      row["ellipse_value"] = json_double((*states)[i].ellipse_value);
      row["label"] = label_name((*states)[i].label);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void emit(const Spectrum& s, Format format, std::ostream& os) {
  if (format == Format::csv) {
    os << "# nrmm v" << kVersion << " spectrum\n";
    write_state_rows_csv(os, &s, nullptr);
  } else {
    json j{{"metadata", metadata_block()},
           {"data", json{{"states", state_rows_json(&s, nullptr)}}}};
    os << j.dump(2) << '\n';
  }
}

void emit(const std::vector<StateDiagnostics>& states, Format format,
          std::ostream& os, const Spectrum* paired) {
  if (format == Format::csv) {
    os << "# nrmm v" << kVersion << " state diagnostics\n";
    write_state_rows_csv(os, paired, &states);
  } else {
    json j{{"metadata", metadata_block()},
           {"data", json{{"states", state_rows_json(paired, &states)}}}};
    os << j.dump(2) << '\n';
  }
}

void emit(const WindingResult& result, Format format, std::ostream& os) {
  if (format == Format::csv) {
    os << "# nrmm v" << kVersion << " winding trace\n";
    os << "# w=" << result.w << " base_energy="
       << format_double(result.base_energy.real()) << ","
       << format_double(result.base_energy.imag())
       << " refined=" << (result.refined ? 1 : 0) << '\n';
    os << "theta,phase\n";
    for (std::size_t i = 0; i < result.theta_grid.size(); ++i)
      os << format_double(result.theta_grid[i]) << ','
         << format_double(result.phase_trace[i]) << '\n';
  } else {
    json j{{"metadata", metadata_block()},
           {"data",
            json{{"w", result.w},
                 {"base_energy",
                  json::array({result.base_energy.real(), result.base_energy.imag()})},
                 {"theta_grid", result.theta_grid},
                 {"phase_trace", result.phase_trace},
                 {"refined", result.refined}}}};
    os << j.dump(2) << '\n';
  }
}

void emit(const PhaseDiagram& diagram, Format format, std::ostream& os) {
  const GridSpec& g = diagram.grid;
  if (format == Format::csv) {
    os << "# nrmm v" << diagram.version << " phase diagram\n";
    os << "# J=" << format_double(g.J) << " alpha_level=" << g.alpha_level
       << " L=" << g.L << " theta=" << format_double(g.theta)
       << " n_theta=" << g.n_theta
       << " im_threshold=" << format_double(g.im_threshold)
       << " E0=" << format_double(g.base_energy.real()) << ","
       << format_double(g.base_energy.imag()) << '\n';
    os << "# grid V=[" << format_double(g.v_min) << "," << format_double(g.v_max)
       << "]x" << g.v_count << " gamma=[" << format_double(g.gamma_min) << ","
       << format_double(g.gamma_max) << "]x" << g.gamma_count << '\n';
    os << "# wall_seconds=" << format_double(diagram.wall_seconds) << '\n';
    os << "V,gamma,max_im,rho,min_ipr,w\n";
    for (const PhaseCell& c : diagram.cells) {
      os << format_double(c.V) << ',' << format_double(c.gamma) << ',';
      if (c.max_im) os << format_double(*c.max_im);
      os << ',';
      if (c.rho) os << format_double(*c.rho);
      os << ',';
      if (c.min_ipr) os << format_double(*c.min_ipr);
      os << ',';
      if (c.w) os << *c.w;
      os << '\n';
    }
  } else {
    json meta = metadata_block();
    meta["wall_seconds"] = diagram.wall_seconds;
    meta["grid"] = json{{"v", json::array({g.v_min, g.v_max, g.v_count})},
                        {"gamma", json::array({g.gamma_min, g.gamma_max, g.gamma_count})},
                        {"J", g.J},
                        {"alpha_level", g.alpha_level},
                        {"L", g.L},
                        {"theta", g.theta},
                        {"n_theta", g.n_theta},
                        {"im_threshold", g.im_threshold},
                        {"E0", json::array({g.base_energy.real(), g.base_energy.imag()})}};
    json cells = json::array();
    for (const PhaseCell& c : diagram.cells) {
      json cell{{"V", c.V}, {"gamma", c.gamma}};
      if (c.max_im) cell["max_im"] = *c.max_im;
      if (c.rho) cell["rho"] = *c.rho;
      if (c.min_ipr) cell["min_ipr"] = *c.min_ipr;
      if (c.w) cell["w"] = *c.w;
      if (!c.ok) cell["error"] = c.error;
      cells.push_back(std::move(cell));
    }
    json j{{"metadata", std::move(meta)}, {"data", json{{"cells", std::move(cells)}}}};
    os << j.dump(2) << '\n';
  }
}

template <typename T>
void emit_to_file(const T& value, Format format, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  emit(value, format, os);
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path);
}

template void emit_to_file<Spectrum>(const Spectrum&, Format, const std::string&);
template void emit_to_file<std::vector<StateDiagnostics>>(
    const std::vector<StateDiagnostics>&, Format, const std::string&);
template void emit_to_file<WindingResult>(const WindingResult&, Format,
                                          const std::string&);
template void emit_to_file<PhaseDiagram>(const PhaseDiagram&, Format,
                                         const std::string&);

}  // namespace nrmm
