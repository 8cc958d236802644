#pragma once

#include <cstddef>

#include "multigraded/polynomial.hpp"

namespace mg::kernels {

/// Reference product of two term maps: every pair of terms, accumulated in
/// one ordered map. Kept for testing the parallel kernel.
TermMap multiply_serial(const GradedChart& chart, const TermMap& f, const TermMap& g);

/// OpenMP product: the terms of f are split across threads, each thread
/// accumulates into a private map, and the partial maps are merged. Falls
/// back to the serial kernel when built without OpenMP.
TermMap multiply_parallel(const GradedChart& chart, const TermMap& f, const TermMap& g);

/// |f| * |g| at or above which multiply() switches to the parallel kernel.
std::size_t parallel_threshold();
void set_parallel_threshold(std::size_t pairs);

/// Threads available to the parallel kernels (1 without OpenMP).
int max_threads();

}  // namespace mg::kernels
