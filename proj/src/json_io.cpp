#include "dlcat/json_io.hpp"

#include <limits>

#include "dlcat/error.hpp"

namespace dlcat {

nlohmann::ordered_json bigint_to_json(const BigInt& x) {
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

nlohmann::ordered_json laurent_to_json(const Laurent& p) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [e, c] : p.terms()) out[std::to_string(e)] = bigint_to_json(c);
  return out;
}

Laurent laurent_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("Laurent polynomial must be a JSON object");
  Laurent p;
  for (const auto& [key, value] : j.items()) {
    int e = 0;
    try {
      std::size_t used = 0;
      e = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ValidationError("bad exponent key '" + key + "'");
    }
    BigInt c;
    if (value.is_number_integer()) {
      c = BigInt(std::to_string(value.get<std::int64_t>()));
    } else if (value.is_string()) {
      if (c.set_str(value.get<std::string>(), 10) != 0)
        throw ValidationError("bad coefficient for exponent " + key);
    } else {
      throw ValidationError("bad coefficient for exponent " + key);
    }
    p += Laurent::monomial(e, c);
  }
  return p;
}

}  // namespace dlcat
