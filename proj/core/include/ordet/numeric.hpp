#pragma once

#include <functional>
#include <span>

namespace ordet {

inline constexpr double kDefaultQuadratureTol = 1e-10;
inline constexpr double kDefaultRootTol = 1e-12;
/// Probability mass left outside truncated integration ranges.
inline constexpr double kTailEpsilon = 1e-14;

using RealFunction = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) integration of f over the finite interval
/// [lo, hi] with absolute error target tol. Subintervals are refined
/// globally by largest error estimate.
///
/// Throws InvalidParameter for an empty or non-finite interval and
/// NumericFailure (carrying the best estimate) when the subdivision budget
/// runs out before the error target is met.
double quadrature(const RealFunction& f, double lo, double hi,
                  double tol = kDefaultQuadratureTol);

/// Same as above, seeded with the panels between consecutive breakpoints.
/// Breakpoints must be finite and nondecreasing; repeated points are merged.
double quadrature(const RealFunction& f, std::span<const double> breakpoints,
                  double tol = kDefaultQuadratureTol);

/// Bracketing root finder (TOMS 748). Requires g(lo) * g(hi) <= 0 and returns
/// x with a final bracket no wider than max(tol, 4 ulp(x)).
double find_root(const RealFunction& g, double lo, double hi,
                 double tol = kDefaultRootTol);

}  // namespace ordet
