#include "qcomp/onephoton.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcomp {

void OnePhotonParams::validate() const {
  auto bad = [](const char* key, const std::string& why) {
    throw std::invalid_argument(std::string(key) + ": " + why);
  };
  if (!(T1 > 0) || !std::isfinite(T1)) bad("T1", "must be positive");
  if (!(T2 >= 0) || !std::isfinite(T2)) bad("T2", "must be non-negative");
  if (rabi_base && !(std::isfinite(*rabi_base))) bad("rabi_base", "must be finite");
  if (!std::isfinite(eps_rot)) bad("eps", "must be finite");
  if (!std::isfinite(delta)) bad("delta", "must be finite");
  if (!std::isfinite(V)) bad("V", "must be finite");
  if (n_periods < 1 || n_periods > 10000) bad("n_periods", "must be in [1, 10000]");
}

}  // namespace qcomp
