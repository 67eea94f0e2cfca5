#pragma once

#include "kitten/kernels.hpp"

namespace kitten::simd::detail {

// Defined in avx2.cpp only when the translation unit is built with AVX2+FMA.
const KernelTable* avx2_table();

}  // namespace kitten::simd::detail
