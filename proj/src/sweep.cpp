#include "qdeform/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "qdeform/error.hpp"

namespace qdeform {
namespace {

constexpr std::string_view kAxisNames[] = {"p", "q", "alpha", "gamma", "l", "nu0", "h", "j", "dim"};

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, "sweep spec: " + what);
}

bool known_axis(std::string_view name) {
  return std::find(std::begin(kAxisNames), std::end(kAxisNames), name) != std::end(kAxisNames);
}

double number(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) bad(where + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(where + " must be finite");
  return d;
}

std::size_t dimension(double v, const std::string& where) {
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e6) bad(where + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

void assign(Point& pt, std::string_view name, double v) {
  if (name == "p") pt.p = v;
  else if (name == "q") pt.q = v;
  else if (name == "alpha") pt.alpha = v;
  else if (name == "gamma") pt.gamma = v;
  else if (name == "l") pt.l = v;
  else if (name == "nu0") pt.nu0 = v;
  else if (name == "h") pt.h = v;
  else if (name == "j") pt.j = v;
  else if (name == "dim") pt.dim = dimension(v, "dim");
}

std::vector<double> values(const nlohmann::json& v, const std::string& name) {
  if (!v.is_array() || v.empty()) bad("axis '" + name + "' needs a non-empty value list");
  std::vector<double> out;
  for (const auto& x : v) {
    out.push_back(number(x, "axis '" + name + "' value"));
    if (name == "dim") dimension(out.back(), "axis 'dim' value");
  }
  return out;
}

}  // namespace

SweepSpec SweepSpec::parse(const nlohmann::json& j, std::size_t cap) {
  if (!j.is_object()) bad("top level must be an object");
  for (const auto& [k, v] : j.items()) {
    if (k != "axes" && k != "fixed" && k != "suites" && k != "dims" && k != "tol")
      bad("unknown key '" + k + "'");
  }
  SweepSpec spec;
  std::set<std::string> seen;
  auto add_axis = [&](const std::string& name, const nlohmann::json& vals) {
    if (!known_axis(name)) bad("unknown axis '" + name + "'");
    if (!seen.insert(name).second) bad("duplicate axis '" + name + "'");
    spec.axes.emplace_back(name, values(vals, name));
  };
  if (j.contains("axes")) {
    const auto& axes = j["axes"];
    if (axes.is_object()) {
      for (const auto& [k, v] : axes.items()) add_axis(k, v);
    } else if (axes.is_array()) {
      for (const auto& entry : axes) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string())
          bad("axes entries must be [name, [values]]");
        add_axis(entry[0].get<std::string>(), entry[1]);
      }
    } else {
      bad("axes must be an object or a list");
    }
  }
  if (j.contains("fixed")) {
    if (!j["fixed"].is_object()) bad("fixed must be an object");
    for (const auto& [k, v] : j["fixed"].items()) {
      if (!known_axis(k)) bad("unknown fixed parameter '" + k + "'");
      if (seen.count(k)) bad("'" + k + "' is both fixed and an axis");
      assign(spec.fixed, k, number(v, "fixed '" + k + "'"));
    }
  }
  if (!j.contains("suites") || !j["suites"].is_array() || j["suites"].empty())
    bad("suites must be a non-empty list");
  for (const auto& s : j["suites"]) {
    if (!s.is_string()) bad("suite names must be strings");
    const auto suite = parse_suite(s.get<std::string>());
    if (!suite) bad("unknown suite '" + s.get<std::string>() + "'");
    if (std::find(spec.suites.begin(), spec.suites.end(), *suite) == spec.suites.end())
      spec.suites.push_back(*suite);
  }
  if (j.contains("dims")) {
    if (seen.count("dim")) bad("'dims' and a 'dim' axis are exclusive");
    if (j.contains("fixed") && j["fixed"].contains("dim")) bad("'dims' and fixed 'dim' are exclusive");
    for (double d : values(j["dims"], "dims")) spec.dims.push_back(dimension(d, "dims value"));
  }
  if (j.contains("tol")) {
    spec.tol = number(j["tol"], "tol");
    if (!(spec.tol > 0.0)) bad("tol must be positive");
  }

  double size = static_cast<double>(spec.suites.size()) *
                static_cast<double>(std::max<std::size_t>(1, spec.dims.size()));
  for (const auto& [name, vals] : spec.axes) size *= static_cast<double>(vals.size());
  if (size > static_cast<double>(cap)) bad("grid has more than " + std::to_string(cap) + " jobs");
  return spec;
}

std::vector<Point> SweepSpec::points() const {
  std::vector<Point> pts{fixed};
  auto expand = [&](const std::string& name, const std::vector<double>& vals) {
    std::vector<Point> next;
    next.reserve(pts.size() * vals.size());
    for (const Point& base : pts)
      for (double v : vals) {
        Point pt = base;
        assign(pt, name, v);
        next.push_back(pt);
      }
    pts = std::move(next);
  };
  for (const auto& [name, vals] : axes) expand(name, vals);
  if (!dims.empty()) {
    std::vector<double> d(dims.begin(), dims.end());
    expand("dim", d);
  }
  return pts;
}

std::vector<SuiteRecord> run_sweep(const SweepSpec& spec, unsigned threads) {
  const std::vector<Point> pts = spec.points();
  const std::size_t jobs = pts.size() * spec.suites.size();
  std::vector<SuiteRecord> out(jobs);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, jobs)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs; i = next++) {
      try {
        out[i] = run_suite_or_reject(spec.suites[i % spec.suites.size()],
                                     pts[i / spec.suites.size()], spec.tol);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  sort_records(out);
  return out;
}

}  // namespace qdeform
