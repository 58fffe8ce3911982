#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qdeform/report.hpp"

namespace qdeform {

inline constexpr std::size_t kDefaultSweepCap = 100000;

/// Parsed sweep file:
///   {"axes": {"p": [...], ...} | [["p", [...]], ...],
///    "fixed": {"alpha": 1, ...}, "suites": [...], "dims": [...], "tol": 1e-10}
/// Axis and fixed names are p, q, alpha, gamma, l, nu0, h, j, dim. "dims" and a
/// "dim" axis are mutually exclusive. Throws InvalidArgument on any error.
struct SweepSpec {
  std::vector<std::pair<std::string, std::vector<double>>> axes;
  Point fixed;
  std::vector<Suite> suites;
  std::vector<std::size_t> dims;
  double tol = kDefaultTolerance;

  static SweepSpec parse(const nlohmann::json& j, std::size_t cap = kDefaultSweepCap);

  /// Cartesian product of the axes (dims included), in axis order.
  std::vector<Point> points() const;
};

/// One record per suite x point, evaluated on `threads` workers (0 = hardware
/// concurrency) and sorted.
std::vector<SuiteRecord> run_sweep(const SweepSpec& spec, unsigned threads = 0);

}  // namespace qdeform
