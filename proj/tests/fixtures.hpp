#pragma once

// Frozen measured baselines for regression assertions. Values were recorded
// from the seeded corpora in this suite; tests assert measurements stay
// within 1.1x of these numbers.

namespace fixtures {

// jet algebra norm-comparison constants (seeded corpus, m <= 3, n <= 2)
inline constexpr double kNormComparisonI = 2.0747;
inline constexpr double kProductBoundII = 1.2755;
inline constexpr double kProductContinuityIII = 5.0072;

// transversality: minimal R of the three-point 1D sigma-hat surrogate
// under label search ({0, 0.45, 1}, m=2)
inline constexpr double kLabelSearchThreePointRMin = 1.0; // placeholder until recorded

} // namespace fixtures
