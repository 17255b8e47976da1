#pragma once

#include "catpursuit/domain.hpp"
#include "catpursuit/pursuit.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace catpursuit {

inline const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> cols{"step", "t",    "L",    "alpha", "alpha_tilde", "beta", "Delta",
                                             "tauP", "tauE", "cP",   "cE",    "rP",          "rE"};
  return cols;
}

void write_trace_csv(const PursuitTrace& trace, const std::filesystem::path& path);
/// Series columns only; positions stay empty. Throws Error(Schema) on a
/// header that does not match trace_columns().
PursuitTrace read_trace_csv(const std::filesystem::path& path);

void write_positions_csv(const PursuitTrace& trace, const std::filesystem::path& path);
/// Fills trace.pursuer and trace.evader from a positions file.
void read_positions_csv(const std::filesystem::path& path, PursuitTrace& trace);

/// printf("%.17g"), with "nan" and "inf" spelled out.
std::string format_double(double x);

}  // namespace catpursuit
