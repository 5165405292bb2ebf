#pragma once

#include <string>
#include <vector>

#include "echcap/geometry.hpp"
#include "echcap/lattice_paths.hpp"
#include "echcap/spectral.hpp"

namespace echcap {

// Curve files are JSON:
//   {"kind":"polygonal","shape_class":"convex","vertices":[["1","0"],["0","1"]]}
//   {"kind":"parametric","shape_class":"strictly_convex",
//    "theta_range":["0","pi/2"],"radial":{"const":"1"},"samples":8192}
// Rational entries are "p/q" strings; angle tokens accept "pi" with rational
// multipliers ("pi/4", "3pi/8"). Parametric radial data is {"const": r} or
// {"samples":[[theta,rho],...]} (linear interpolation).
Curve load_curve(const std::string& path);
Curve parse_curve_json(const std::string& text);
std::string curve_to_json(const Curve& c);

// "3pi/8", "pi", "0.75", ... -> radians
double parse_angle(const std::string& token);
std::vector<AngleInterval> parse_arc_list(const std::string& spec);
std::vector<int> parse_k_list(const std::string& spec);  // "1..60" or "20,50,200"

// fixed formatting contract: exact rationals as "p/q", binary64 as shortest
// 12-significant-digit decimal; identical inputs give byte-identical files
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string to_string() const;
};

void write_text_file(const std::string& path, const std::string& content);  // errors: IoError

CsvTable capacities_csv(const std::vector<CapacityResult>& results);
CsvTable path_csv(const IntegralPath& p);
CsvTable equidist_csv(const ExperimentReport& report);

std::string svg_curve_with_paths(const Curve& curve, const std::vector<IntegralPath>& paths,
                                 const std::vector<double>& scale_factors);
std::string svg_residual_plot(const std::vector<int>& ks, const std::vector<double>& residuals);

}  // namespace echcap
