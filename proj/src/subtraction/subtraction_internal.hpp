#pragma once

#include <vector>

#include "kitten/subtraction.hpp"

namespace kitten::subtraction::internal {

std::vector<std::vector<double>> response_matrix(std::size_t dim, const DetectorModel& det);

DensityMatrix resolving_state(const SubtractionFamily& fam, const DetectorModel& det, std::size_t m,
                              double* herald_probability);

DensityMatrix non_resolving_state(const SubtractionFamily& fam, const DetectorModel& det, std::size_t m,
                                  ClickWeighting weighting, double* herald_probability);

}  // namespace kitten::subtraction::internal
