#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nrmm/localization.hpp"
#include "nrmm/scan.hpp"
#include "nrmm/spectral.hpp"
#include "nrmm/topology.hpp"

namespace nrmm {

enum class Format { csv, json };

Format parse_format(const std::string& name);

/// %.17g — round-trips doubles exactly through text.
std::string format_double(double x);

/// CSV layout: '#' comment lines (metadata, excluded from determinism
/// comparisons), one header line, then data rows. JSON layout:
/// {"metadata": {...}, "data": {...}} with the same fields.
///
/// State table columns: index,re_E,im_E,residual,ipr,ellipse_value,label.
/// Columns a given input cannot fill stay empty.
void emit(const Spectrum& s, Format format, std::ostream& os);
void emit(const std::vector<StateDiagnostics>& states, Format format,
          std::ostream& os, const Spectrum* paired = nullptr);

/// Winding trace: theta,phase rows plus the winding integer in metadata.
void emit(const WindingResult& result, Format format, std::ostream& os);

/// Phase diagram columns: V,gamma,max_im,rho,min_ipr,w. Rows sorted by
/// (V, gamma); failed cells leave their fields empty (JSON carries the
/// per-cell error string).
void emit(const PhaseDiagram& diagram, Format format, std::ostream& os);

/// Writes through any of the overloads above; throws std::runtime_error
/// naming the path when the destination cannot be written.
template <typename T>
void emit_to_file(const T& value, Format format, const std::string& path);

}  // namespace nrmm
