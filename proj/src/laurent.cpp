#include "qdeform/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdeform/error.hpp"
#include "qdeform/laurent_json.hpp"

namespace qdeform {

LaurentPoly LaurentPoly::monomial(std::int64_t k, cplx c) {
  LaurentPoly p;
  p.add(k, c);
  return p;
}

cplx LaurentPoly::coefficient(std::int64_t k) const {
  const auto it = terms_.find(k);
  return it == terms_.end() ? cplx{} : it->second;
}

void LaurentPoly::add(std::int64_t k, cplx c) {
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

cplx LaurentPoly::evaluate(cplx z) const {
  cplx out{};
  for (const auto& [k, c] : terms_) out += c * std::pow(z, static_cast<double>(k));
  return out;
}

LaurentPoly LaurentPoly::rescaled(cplx c) const {
  LaurentPoly out;
  for (const auto& [k, v] : terms_) out.add(k, v * std::pow(c, static_cast<double>(k)));
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(cplx k) {
  if (k == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= k;
    it = it->second == cplx{} ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) out.add(ka + kb, ca * cb);
  return out;
}

double max_coeff_diff(const LaurentPoly& a, const LaurentPoly& b) {
  double m = 0.0;
  const LaurentPoly d = a - b;
  for (const auto& [k, c] : d.terms()) m = std::max(m, std::abs(c));
  return m;
}

bool approx_equal(const LaurentPoly& a, const LaurentPoly& b, double tol) {
  const LaurentPoly d = a - b;
  for (const auto& [k, c] : d.terms()) {
    const double scale = std::max({1.0, std::abs(a.coefficient(k)), std::abs(b.coefficient(k))});
    if (!(std::abs(c) <= tol * scale)) return false;
  }
  return true;
}

nlohmann::json laurent_to_json(const LaurentPoly& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, c] : p.terms()) j[std::to_string(k)] = {c.real(), c.imag()};
  return j;
}

LaurentPoly laurent_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "Laurent polynomial must be an object");
  LaurentPoly p;
  for (const auto& [key, val] : j.items()) {
    std::size_t used = 0;
    long long k = 0;
    try {
      k = std::stoll(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || key.empty()) {
      throw Error(ErrorCode::InvalidArgument, "exponent key '" + key + "' is not an integer");
    }
    cplx c;
    if (val.is_number()) {
      c = val.get<double>();
    } else if (val.is_array() && val.size() == 2 && val[0].is_number() && val[1].is_number()) {
      c = {val[0].get<double>(), val[1].get<double>()};
    } else {
      throw Error(ErrorCode::InvalidArgument, "coefficient for '" + key + "' must be [re, im]");
    }
    p.add(k, c);
  }
  return p;
}

}  // namespace qdeform
