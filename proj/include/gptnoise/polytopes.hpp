#pragma once

// Named polytope theories and observables on them.

#include <cstdint>

#include "gptnoise/core.hpp"

namespace gptnoise {

/// Square bit: vertices s1=(0,0), s2=(1,0), s3=(1,1), s4=(0,1).
StateSpace squit_space();

/// A^alpha: outcome 0 takes alpha on s1,s2 and 1 on s3,s4; outcome 1 is its complement.
Observable squit_a(double alpha);
/// B^beta: outcome 0 takes beta on s1,s4 and 1 on s2,s3; outcome 1 is its complement.
Observable squit_b(double beta);

/// Regular n-gon inscribed in the unit circle.
StateSpace regular_polygon(Index n);

/// N-outcome observable with random nonnegative affine effects; the last
/// outcome completes the others to the unit effect.
Observable random_polytope_observable(const StateSpace& space, Index outcomes, std::uint64_t seed);

}  // namespace gptnoise
