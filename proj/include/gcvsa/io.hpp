#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gcvsa/experiments.hpp"
#include "gcvsa/resonator.hpp"
#include "gcvsa/spatial.hpp"

namespace gcvsa::io {

/// Binary 8-bit PGM (P5). Values are mapped affinely from [lo, hi] to
/// [0, 255] and clamped; rows are written top-down with +y upward.
void write_pgm(const std::string& path, const Field2D& field, double lo,
               double hi);

/// Long-format field dump: header "x,y,value", one row per sample.
void write_field_csv(const std::string& path, const Field2D& field);

/// Header "t,x,y,xhat,yhat", one row per position.
void write_trajectory_csv(const std::string& path,
                          const experiments::Trajectory& traj,
                          const std::vector<Point2D>& decoded);

/// Header "factor,iteration,key,similarity", long format over the trace.
void write_trace_csv(const std::string& path, const ResonatorState& state,
                     const std::vector<std::string>& factor_names,
                     const std::vector<std::vector<std::string>>& factor_keys);

/// Header "index,angle_rad,value", one row per orientation bin.
void write_profile_csv(const std::string& path,
                       const std::vector<double>& profile);

/// Flat key/value config text: one "key = value" per line, '#' comments.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap read_config_file(const std::string& path);
void write_config_file(const std::string& path, const ConfigMap& values);

/// Shortest decimal text that round-trips the double exactly.
std::string format_double(double v);

}  // namespace gcvsa::io
