#pragma once

#include <cstdint>
#include <string>

#include "echcap/geometry.hpp"

namespace echcap {

// Exit codes: 0 success, 2 config error, 3 IO error, 4 engine error,
// 5 acceptance/inequality failure.
struct RunConfig {
  std::string subcommand;
  std::string curve_file;
  std::string k_spec = "1..10";
  Mode mode = Mode::convex;
  std::string arcs_spec;        // "lo:hi,lo:hi,..."; empty = full arc only
  std::string out_dir = "out";
  int precision = 12;           // significant digits for float CSV columns
  std::uint64_t seed = 1;
  int jobs = 0;                 // 0 = library default
  int trials = 200;             // isoper batch size
  int normal_bound = 10;        // nice: primitive normals with entries <= bound
};

int cmd_capacities(const RunConfig& cfg);
int cmd_equidist(const RunConfig& cfg);
int cmd_weyl(const RunConfig& cfg);
int cmd_isoper(const RunConfig& cfg);
int cmd_nice(const RunConfig& cfg);
int cmd_check(const RunConfig& cfg);

// full argv front end; maps thrown Error codes onto the exit contract
int run_cli(int argc, const char* const* argv);

}  // namespace echcap
