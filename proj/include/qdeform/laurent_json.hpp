#pragma once

#include "json.hpp"
#include "qdeform/laurent.hpp"

namespace qdeform {

/// {"k": [re, im], ...} with decimal integer keys.
nlohmann::json laurent_to_json(const LaurentPoly& p);
/// Throws Error{InvalidArgument} on malformed input.
LaurentPoly laurent_from_json(const nlohmann::json& j);

}  // namespace qdeform
