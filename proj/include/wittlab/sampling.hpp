#pragma once

#include "wittlab/extension.hpp"
#include "wittlab/rng.hpp"

namespace wittlab {

// Deterministic element samplers. Every sample is an exact Laurent
// polynomial, so valuation certificates stay decidable downstream.

/// Random element of O_L: coefficient valuations within [threshold,
/// threshold + margin], occasional exactly-zero coefficients.
ExtElement random_integral_element(const ExtensionPtr& ext, Rng& rng, int margin = 3);

/// Random element of L with coefficient valuations straying below the O_L
/// thresholds as well as above (for membership tests).
ExtElement random_mixed_element(const ExtensionPtr& ext, Rng& rng, int below = 2, int above = 2);

/// Random trace-zero element of O_L with v_L >= min_vL (min_vL >= 0).
ExtElement random_trace_zero(const ExtensionPtr& ext, Rng& rng, long long min_vL,
                             int margin = 2);

/// Random element of O_L with exact valuation v_L = target (target >= 0).
ExtElement random_integral_with_valuation(const ExtensionPtr& ext, Rng& rng, long long target);

}  // namespace wittlab
