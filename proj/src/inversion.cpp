#include "tcm/inversion.hpp"

#include <cmath>

#include "tcm/errors.hpp"

namespace tcm {

InversionPoint two_atom_inversion(const AmplitudeSet& set) {
  double excited = 0.0;
  double ground = 0.0;
  for (const auto& e : set.entries()) {
    excited += std::norm(e.aa);
    ground += std::norm(e.bb);
  }
  return {set.time(), excited - ground};
}

InversionPoint single_atom_jcm_inversion(const FieldDistribution& field, double gt) {
  if (!(gt >= 0.0) || !std::isfinite(gt)) throw ConfigurationError("gt must be finite and >= 0");
  const auto& window = field.window();
  const auto amplitudes = field.amplitudes();
  double w = 0.0;
  for (std::size_t n = window.n_min; n <= window.n_max; ++n) {
    w += std::norm(amplitudes[n - window.n_min]) * std::cos(2.0 * gt * std::sqrt(static_cast<double>(n) + 1.0));
  }
  return {gt, w};
}

}  // namespace tcm
