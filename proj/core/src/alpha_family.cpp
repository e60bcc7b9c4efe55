#include "osclab/alpha_family.hpp"

#include <algorithm>
#include <stdexcept>

namespace osc {

std::vector<OccupationVector> sup_alpha_strategy(unsigned kappa, std::size_t mode_count,
                                                 std::size_t localized_count,
                                                 const std::vector<std::size_t>& displaced_modes,
                                                 const AlphaFamilyConfig& config,
                                                 std::mt19937_64& engine) {
  if (localized_count > mode_count) {
    throw std::invalid_argument("sup_alpha_strategy: more localized modes than modes");
  }
  std::vector<OccupationVector> family;
  auto add = [&](OccupationVector alpha) {
    if (family.size() < config.cap &&
        std::find(family.begin(), family.end(), alpha) == family.end()) {
      family.push_back(std::move(alpha));
    }
  };

  add(OccupationVector::zeros(mode_count));
  if (kappa == 0) return family;

  OccupationVector full = OccupationVector::zeros(mode_count);
  for (std::size_t j : displaced_modes) {
    if (j >= mode_count) throw std::invalid_argument("sup_alpha_strategy: mode index out of range");
    if (j < localized_count) full.counts[j] = kappa;
  }
  add(std::move(full));

  std::uniform_int_distribution<unsigned> occupation(0, kappa);
  for (std::size_t r = 0; r < config.random_count; ++r) {
    OccupationVector alpha = OccupationVector::zeros(mode_count);
    for (std::size_t j = 0; j < localized_count; ++j) alpha.counts[j] = occupation(engine);
    add(std::move(alpha));
  }
  return family;
}

}  // namespace osc
