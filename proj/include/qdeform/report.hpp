#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qdeform/check.hpp"

namespace qdeform {

inline constexpr std::string_view kSchemaVersion = "1.0";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Suite {
  GD,
  GChJ,
  GHY,
  JsSu2,
  JsGhy,
  HP,
  HpEq36,
  Su11,
  Su11Eq53,
  Coproduct,
  Ope,
  Corr,
  Corr2,
  C2Eigenvalue,
  VirasoroAntisym,
};

inline constexpr Suite kAllSuites[] = {
    Suite::GD,       Suite::GChJ,      Suite::GHY,  Suite::JsSu2,        Suite::JsGhy,
    Suite::HP,       Suite::HpEq36,    Suite::Su11, Suite::Su11Eq53,     Suite::Coproduct,
    Suite::Ope,      Suite::Corr,      Suite::Corr2, Suite::C2Eigenvalue, Suite::VirasoroAntisym,
};

std::string_view suite_name(Suite s);
std::optional<Suite> parse_suite(std::string_view name);

/// Documentation suites never hold gated checks.
bool is_documentation_suite(Suite s);

/// One evaluation point. h feeds the su(1,1), OPE and correlator suites, j the
/// Holstein-Primakoff ones.
struct Point {
  double p = 1.0;
  double q = 1.0;
  double alpha = 1.0;
  double gamma = 1.0;
  double l = 1.0;
  double nu0 = 0.0;
  double h = 0.5;
  double j = 1.0;
  std::size_t dim = 8;
};

struct SuiteRecord {
  std::string suite;
  Point point;
  double residual = 0.0;  // worst scaled residual of the deciding checks
  std::string verdict;    // pass | fail | vacuous | documented-discrepancy | rejected: <code>
  bool gated = false;
  std::string note;
  std::vector<CheckRecord> checks;
};

/// Runs one suite. Precondition failures (qdeform::Error) propagate.
SuiteRecord run_suite(Suite suite, const Point& point, double tol = kDefaultTolerance);

/// As run_suite, but a qdeform::Error becomes a record with verdict
/// "rejected: <code>" and the message as note.
SuiteRecord run_suite_or_reject(Suite suite, const Point& point, double tol);

bool is_rejected(const SuiteRecord& r);

/// Orders by (suite, p, q, alpha, gamma, l, nu0, h, j, dim).
void sort_records(std::vector<SuiteRecord>& records);

struct ReportDocument {
  std::string command;
  nlohmann::json input;
  std::optional<std::string> timestamp;
  std::vector<SuiteRecord> records;
};

/// 0 when no record failed, 1 otherwise. Rejected records do not count.
int exit_code_for(const std::vector<SuiteRecord>& records);

nlohmann::json summary_json(const std::vector<SuiteRecord>& records);
nlohmann::json check_json(const CheckRecord& c);
nlohmann::json record_json(const SuiteRecord& r);
nlohmann::json document_json(const ReportDocument& doc);

/// JSON text with sorted keys, two-space indent and doubles as %.17g
/// (non-finite numbers become null).
std::string dump_json(const nlohmann::json& j);

inline constexpr const char* kCsvHeader =
    "suite,p,q,alpha,gamma,l,nu0,dim,residual,verdict,note";
std::string render_csv(const std::vector<SuiteRecord>& records);

/// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::string& path, std::string_view content);

/// UTC, ISO 8601 with seconds.
std::string utc_timestamp();

/// %.17g.
std::string format_double(double v);

/// Shortest text that reads back to the same double.
std::string format_shortest(double v);

}  // namespace qdeform
