#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdeform/correlators.hpp"
#include "qdeform/error.hpp"
#include "qdeform/laurent_json.hpp"
#include "qdeform/ope.hpp"
#include "qdeform/params.hpp"
#include "qdeform/report.hpp"
#include "qdeform/sweep.hpp"

namespace {

using qdeform::cplx;
using qdeform::Error;
using qdeform::ErrorCode;
using nlohmann::json;

struct Globals {
  qdeform::Point pt;
  double tol = qdeform::kDefaultTolerance;
  std::string out;
  std::string format = "json";
  bool no_timestamp = false;
};

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

double parse_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) usage("bad number for " + what);
  return v;
}

// Accepts "a", "bi", "a+bi", "a-bi" and "(a,b)".
cplx parse_complex(std::string s, const std::string& what) {
  std::erase(s, ' ');
  if (s.empty()) usage("empty value for " + what);
  if (s.front() == '(' && s.back() == ')') {
    const auto comma = s.find(',');
    if (comma == std::string::npos) usage("bad complex number for " + what);
    return {parse_double(s.substr(1, comma - 1), what),
            parse_double(s.substr(comma + 1, s.size() - comma - 2), what)};
  }
  if (s.back() != 'i') return parse_double(s, what);
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(t, what);
  };
  if (split == std::string::npos) return {0.0, imag(s)};
  return {parse_double(s.substr(0, split), what), imag(s.substr(split))};
}

std::string show(cplx z) {
  if (z.imag() == 0.0) return qdeform::format_shortest(z.real());
  std::string im = qdeform::format_shortest(z.imag());
  if (im.front() != '-') im = "+" + im;
  return qdeform::format_shortest(z.real()) + im + "i";
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

qdeform::DeformationParams params(const Globals& g) {
  const auto& p = g.pt;
  return qdeform::DeformationParams::validate(p.p, p.q, p.alpha, p.gamma, p.l, false);
}

json point_json(const qdeform::Point& p) {
  return {{"p", p.p},         {"q", p.q}, {"alpha", p.alpha}, {"gamma", p.gamma}, {"l", p.l},
          {"nu0", p.nu0},     {"h", p.h}, {"j", p.j},         {"dim", p.dim}};
}

std::pair<std::int64_t, std::int64_t> parse_window(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) usage("window must look like lo..hi");
  auto integer = [&](const std::string& t) {
    const double v = parse_double(t, "window");
    if (v != std::floor(v) || std::fabs(v) > 1e6) usage("window bounds must be integers");
    return static_cast<std::int64_t>(v);
  };
  return {integer(s.substr(0, dots)), integer(s.substr(dots + 2))};
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    qdeform::write_file_atomic(g.out, text);
  }
}

int emit_report(const Globals& g, qdeform::ReportDocument doc) {
  if (!g.no_timestamp) doc.timestamp = qdeform::utc_timestamp();
  const std::string text = g.format == "csv" ? qdeform::render_csv(doc.records)
                                             : qdeform::dump_json(qdeform::document_json(doc));
  emit(g, text);
  const json s = qdeform::summary_json(doc.records);
  if (!g.out.empty()) {
    std::cout << "records " << s["total"].get<std::size_t>() << ": pass " << s["pass"]
              << ", fail " << s["fail"] << ", vacuous " << s["vacuous"]
              << ", documented-discrepancy " << s["documented-discrepancy"] << ", rejected "
              << s["rejected"] << (s["documentation_only"].get<bool>() ? " (documentation only)" : "")
              << "\n";
  }
  return qdeform::exit_code_for(doc.records);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformed oscillator algebra checks, sweeps and reports"};
  app.name("qdeform");
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--p", g.pt.p, "base p")->capture_default_str();
  app.add_option("--q", g.pt.q, "base q")->capture_default_str();
  app.add_option("--alpha", g.pt.alpha, "exponent alpha")->capture_default_str();
  app.add_option("--gamma", g.pt.gamma, "exponent gamma")->capture_default_str();
  app.add_option("--l", g.pt.l, "exponent l")->capture_default_str();
  app.add_option("--nu0", g.pt.nu0, "Casimir shift nu0")->capture_default_str();
  app.add_option("--dim", g.pt.dim, "truncation dimension")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--h", g.pt.h, "conformal weight")->capture_default_str();
  app.add_option("--j", g.pt.j, "Holstein-Primakoff spin")->capture_default_str();
  app.add_option("--tol", g.tol, "tolerance for gated checks")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "output file (stdout when omitted)");
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_flag("--no-timestamp", g.no_timestamp, "omit the report timestamp");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a single function");
  eval->require_subcommand(1);
  eval->fallthrough();
  double x = 0.0;
  auto* ev_bracket = eval->add_subcommand("bracket", "deformed number [x]");
  ev_bracket->add_option("--x", x, "argument")->required();
  ev_bracket->fallthrough();
  std::int64_t fact_n = 0;
  auto* ev_fact = eval->add_subcommand("factorial", "deformed factorial [n]!");
  ev_fact->add_option("--n", fact_n, "argument")->required();
  ev_fact->fallthrough();
  std::string z_s, a_s, z1_s = "1", z2_s;
  double r = 0.0;
  auto* ev_ha = eval->add_subcommand("ha", "h_a(z) = (az; r)_inf / (z; r)_inf");
  ev_ha->add_option("--z", z_s, "argument (a, a+bi or (a,b))")->required();
  ev_ha->add_option("--a", a_s, "parameter a")->required();
  ev_ha->add_option("--r", r, "product base")->required();
  ev_ha->fallthrough();
  auto* ev_two = eval->add_subcommand("twopoint", "two-point function at omega = -2h");
  ev_two->add_option("--z1", z1_s, "first insertion")->capture_default_str();
  ev_two->add_option("--z2", z2_s, "second insertion")->required();
  ev_two->fallthrough();

  // check
  std::vector<std::string> suites;
  auto* check = app.add_subcommand("check", "run suites at one parameter point");
  check->add_option("--suite", suites, "suite names")->required()->delimiter(',');
  check->fallthrough();

  // sweep
  std::string spec_path;
  auto* sweep = app.add_subcommand("sweep", "run suites over a parameter grid");
  sweep->add_option("spec", spec_path, "sweep spec JSON file")->required();
  unsigned threads = 0;
  sweep->add_option("--threads", threads, "worker threads (0 = all cores)");
  sweep->fallthrough();

  // ope
  auto* ope = app.add_subcommand("ope", "mode bracket and Virasoro structure");
  ope->require_subcommand(1);
  ope->fallthrough();
  std::int64_t n = 0, m = 0;
  std::string modes_s, window_s = "-3..3";
  auto* ope_br = ope->add_subcommand("bracket", "[L_n, phi_m]");
  ope_br->add_option("--n", n)->required();
  ope_br->add_option("--m", m)->required();
  ope_br->add_option("--modes", modes_s, "field modes as JSON {\"k\": [re, im]}; default phi_(n+m) = 1");
  ope_br->fallthrough();
  auto* ope_vir = ope->add_subcommand("virasoro", "centerless Virasoro structure constants");
  ope_vir->add_option("--n", n)->required();
  ope_vir->add_option("--m", m)->required();
  ope_vir->fallthrough();
  auto* ope_anti = ope->add_subcommand("antisym", "antisymmetry scan of [n-m]");
  ope_anti->add_option("--window", window_s, "mode window lo..hi")->capture_default_str();
  ope_anti->fallthrough();

  // corr
  auto* corr = app.add_subcommand("corr", "two-point function and Ward identities");
  corr->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) {
      const auto pr = params(g);
      if (ev_bracket->parsed()) std::cout << qdeform::format_shortest(qdeform::bracket(x, pr)) << "\n";
      if (ev_fact->parsed()) {
        if (fact_n < 0) usage("factorial needs n >= 0");
        std::cout << qdeform::format_shortest(qdeform::bracket_factorial(fact_n, pr)) << "\n";
      }
      if (ev_ha->parsed())
        std::cout << show(qdeform::h_a(parse_complex(z_s, "--z"), parse_complex(a_s, "--a"), r)) << "\n";
      if (ev_two->parsed())
        std::cout << show(qdeform::two_point(parse_complex(z1_s, "--z1"), parse_complex(z2_s, "--z2"),
                                             g.pt.h, pr))
                  << "\n";
      return 0;
    }

    if (check->parsed()) {
      qdeform::ReportDocument doc;
      doc.command = "check";
      json names = json::array();
      for (const auto& s : suites) {
        const auto suite = qdeform::parse_suite(s);
        if (!suite) usage("unknown suite '" + s + "'");
        doc.records.push_back(qdeform::run_suite(*suite, g.pt, g.tol));
        names.push_back(s);
      }
      qdeform::sort_records(doc.records);
      doc.input = {{"suites", names}, {"point", point_json(g.pt)}, {"tol", g.tol}};
      return emit_report(g, std::move(doc));
    }

    if (sweep->parsed()) {
      std::ifstream f(spec_path);
      if (!f) usage("cannot read " + spec_path);
      json spec_json;
      try {
        spec_json = json::parse(f);
      } catch (const json::exception& e) {
        usage(std::string("sweep spec is not valid JSON: ") + e.what());
      }
      const auto spec = qdeform::SweepSpec::parse(spec_json);
      qdeform::ReportDocument doc;
      doc.command = "sweep";
      doc.input = spec_json;
      doc.records = qdeform::run_sweep(spec, threads);
      return emit_report(g, std::move(doc));
    }

    if (ope->parsed()) {
      const auto pr = params(g);
      json out;
      int code = 0;
      if (ope_br->parsed()) {
        std::map<std::int64_t, cplx> modes{{n + m, 1.0}};
        if (!modes_s.empty()) {
          json mj;
          try {
            mj = json::parse(modes_s);
          } catch (const json::exception& e) {
            usage(std::string("--modes is not valid JSON: ") + e.what());
          }
          const auto poly = qdeform::laurent_from_json(mj);
          modes.clear();
          for (const auto& [k, c] : poly.terms()) modes[k] = c;
        }
        const auto res = qdeform::mode_bracket(n, m, g.pt.h, modes, pr);
        json coeffs = json::object();
        for (const auto& [k, c] : res.coefficients) coeffs[std::to_string(k)] = cjson(c);
        const double dev = qdeform::mode_bracket_deviation(res);
        out = {{"n", n},
               {"m", m},
               {"h", g.pt.h},
               {"coefficients", coeffs},
               {"expected_mode", res.expected_mode},
               {"expected", cjson(res.expected)},
               {"weight_L_phi", res.weight_L_phi},
               {"weight_phi_L", res.weight_phi_L},
               {"deviation", dev}};
        code = dev <= g.tol ? 0 : 1;
      } else if (ope_vir->parsed()) {
        const auto v = qdeform::virasoro_structure(n, m, pr);
        out = {{"n", n}, {"m", m}, {"weight_nm", v.weight_nm}, {"weight_mn", v.weight_mn}, {"rhs", v.rhs}};
      } else {
        const auto [lo, hi] = parse_window(window_s);
        const auto scan = qdeform::virasoro_antisymmetry_scan(pr, lo, hi);
        json rows = json::array();
        for (const auto& row : scan.rows) rows.push_back({{"n", row.n}, {"m", row.m}, {"value", row.value}});
        out = {{"window", {lo, hi}}, {"rows", rows}, {"record", qdeform::check_json(scan.record)}};
      }
      emit(g, qdeform::dump_json(out));
      return code;
    }

    if (corr->parsed()) {
      const auto pr = params(g);
      const double h = g.pt.h;
      const auto samples = qdeform::default_ward_samples();
      const auto recs = qdeform::ward_residual(h, h, pr, samples, -2.0 * h, g.tol);
      json checks = json::array(), values = json::array();
      int code = 0;
      for (const auto& c : recs) {
        checks.push_back(qdeform::check_json(c));
        if (c.verdict == qdeform::Verdict::Fail) code = 1;
      }
      for (const auto& s : samples)
        values.push_back({{"z1", cjson(s.z1)}, {"z2", cjson(s.z2)},
                          {"value", cjson(qdeform::two_point(s.z1, s.z2, h, pr))}});
      const std::vector<double> omegas{-2 * h - 1, -2 * h, -2 * h + 1};
      const auto scan = qdeform::omega_scan(h, pr, samples, omegas);
      json rows = json::array();
      for (const auto& row : scan.rows) rows.push_back({{"omega", row.omega}, {"residual", row.residual}});
      const json out = {{"h", h},
                        {"omega", -2 * h},
                        {"r", qdeform::correlator_base(pr)},
                        {"two_point", values},
                        {"checks", checks},
                        {"omega_scan", {{"rows", rows}, {"best_omega", scan.best_omega}}}};
      emit(g, qdeform::dump_json(out));
      return code;
    }
  } catch (const Error& e) {
    std::cerr << "qdeform: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qdeform: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
