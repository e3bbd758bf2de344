#pragma once

#include "dlcat/laurent.hpp"
#include "json.hpp"

namespace dlcat {

// Laurent polynomial as {"exponent": coefficient}, keys in numeric order.
// Coefficients that do not fit in 64 bits are written as decimal strings.
nlohmann::ordered_json laurent_to_json(const Laurent& p);
Laurent laurent_from_json(const nlohmann::json& j);

nlohmann::ordered_json bigint_to_json(const BigInt& x);

}  // namespace dlcat
