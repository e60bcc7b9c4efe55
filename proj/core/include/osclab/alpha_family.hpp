// alpha_family.hpp - the finite family of occupation vectors over which
// suprema over localized eigenstates are evaluated. The family is a lower
// bound on the true supremum.
#pragma once

#include "osclab/config.hpp"
#include "osclab/freeboson.hpp"

#include <cstddef>
#include <random>
#include <vector>

namespace osc {

// In order: alpha = 0; alpha = kappa on every displaced localized mode; then
// `random_count` vectors with independent uniform entries in {0..kappa} on the
// localized modes. Duplicates are dropped and the list is cut at `cap`.
// Raising random_count only appends, so the reported supremum can only grow.
std::vector<OccupationVector> sup_alpha_strategy(unsigned kappa, std::size_t mode_count,
                                                 std::size_t localized_count,
                                                 const std::vector<std::size_t>& displaced_modes,
                                                 const AlphaFamilyConfig& config,
                                                 std::mt19937_64& engine);

}  // namespace osc
