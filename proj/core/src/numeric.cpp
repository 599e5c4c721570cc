#include "ordet/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "ordet/error.hpp"

namespace ordet {
namespace {

// Kronrod 15-point nodes (nonnegative half) and weights, with the embedded
// 7-point Gauss weights on the odd Kronrod nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kMaxSegments = 4000;

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const RealFunction& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(centre);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  double error = std::abs(kronrod - gauss);
  if (!std::isfinite(kronrod)) {
    throw NumericFailure("quadrature: integrand is not finite on [" +
                             std::to_string(lo) + ", " + std::to_string(hi) + "]",
                         kronrod);
  }
  // Round-off floor so that flat panels do not keep splitting forever.
  error = std::max(error, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod));
  return {lo, hi, kronrod, error};
}

}  // namespace

double quadrature(const RealFunction& f, std::span<const double> breakpoints, double tol) {
  std::vector<double> points(breakpoints.begin(), breakpoints.end());
  if (points.size() < 2) throw InvalidParameter("quadrature: need at least two breakpoints");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) {
      throw InvalidParameter("quadrature: breakpoints must be finite");
    }
    if (i > 0 && points[i] < points[i - 1]) {
      throw InvalidParameter("quadrature: breakpoints must be nondecreasing");
    }
  }
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 2) throw InvalidParameter("quadrature: empty interval");
  if (!(tol > 0.0)) throw InvalidParameter("quadrature: tolerance must be positive");

  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    Segment s = gauss_kronrod(f, points[i], points[i + 1]);
    total += s.value;
    total_error += s.error;
    heap.push(s);
  }

  int segments = static_cast<int>(heap.size());
  while (total_error > tol) {
    if (segments >= kMaxSegments) {
      throw NumericFailure("quadrature: error estimate " + std::to_string(total_error) +
                               " above tolerance " + std::to_string(tol),
                           total);
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Interval cannot be split further in double precision.
      throw NumericFailure("quadrature: interval collapsed near " + std::to_string(mid), total);
    }
    Segment left = gauss_kronrod(f, worst.lo, mid);
    Segment right = gauss_kronrod(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++segments;
  }

  // Re-sum to shed the drift accumulated by incremental updates.
  double sum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    heap.pop();
  }
  return sum;
}

double quadrature(const RealFunction& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw InvalidParameter("quadrature: require lo < hi");
  const std::array<double, 2> ends = {lo, hi};
  return quadrature(f, ends, tol);
}

double find_root(const RealFunction& g, double lo, double hi, double tol) {
  if (!(lo <= hi)) throw InvalidParameter("find_root: require lo <= hi");
  const double glo = g(lo);
  const double ghi = g(hi);
  if (std::isnan(glo) || std::isnan(ghi)) {
    throw NumericFailure("find_root: function is NaN at a bracket end", 0.5 * (lo + hi));
  }
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) {
    throw BracketError("find_root: no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
  auto done = [tol](double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(b - a) <= std::max(tol, 4.0 * std::numeric_limits<double>::epsilon() * scale);
  };
  std::uintmax_t max_iter = 500;
  const auto [a, b] =
      boost::math::tools::toms748_solve([&g](double x) { return g(x); }, lo, hi, glo, ghi, done,
                                        max_iter);
  if (!done(a, b)) {
    throw NumericFailure("find_root: bracket did not shrink below tolerance", 0.5 * (a + b));
  }
  if (std::abs(g(a)) <= std::abs(g(b))) return a;
  return b;
}

}  // namespace ordet
