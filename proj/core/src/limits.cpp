#include "smdp/limits.hpp"

#include <cstdlib>
#include <string>

#include "smdp/errors.hpp"

namespace smdp {

Limits Limits::from_environment() {
  Limits limits;
  if (const char* env = std::getenv("SMDP_LIMIT_STATES"); env != nullptr && *env != '\0') {
    try {
      const auto value = std::stoull(env);
      if (value == 0) throw Error("SMDP_LIMIT_STATES must be positive");
      limits.max_states = static_cast<std::size_t>(value);
    } catch (const std::logic_error&) {
      throw Error(std::string("SMDP_LIMIT_STATES is not a number: ") + env);
    }
  }
  return limits;
}

}  // namespace smdp
