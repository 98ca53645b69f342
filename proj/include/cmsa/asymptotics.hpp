#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "cmsa/error.hpp"
#include "cmsa/special_functions.hpp"

namespace cmsa {

enum class DualCase { case2, case3 };

/// Unique positive root of f'(b) = alpha (case2, 0 < alpha < 1/2) or
/// g'(b) = alpha (case3, alpha > 1). Both derivatives are strictly
/// decreasing, so bisection on a doubling bracket converges to the root.
inline double beta_star(double alpha, DualCase which) {
  auto derivative = [which](double b) { return which == DualCase::case2 ? f_prime(b) : g_prime(b); };
  double lo = 0.0;
  double hi = 1.0;
  if (which == DualCase::case2) {
    require(alpha > 0.0 && alpha < 0.5, Errc::domain, "beta_star(case2) needs 0 < alpha < 1/2");
  } else {
    require(alpha > 1.0 && std::isfinite(alpha), Errc::domain, "beta_star(case3) needs alpha > 1");
    lo = 1e-9;
    while (g_prime(lo) <= alpha) {
      lo /= 16.0;
      require(lo > 1e-300, Errc::range, "beta_star: alpha too large to bracket");
    }
  }
  while (derivative(hi) > alpha) {
    lo = hi;
    hi *= 2.0;
    require(hi < 1e300, Errc::range, "beta_star: alpha too close to the asymptote");
  }
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (derivative(mid) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double r_lo = std::abs(derivative(lo == 0.0 ? hi : lo) - alpha);
  const double r_hi = std::abs(derivative(hi) - alpha);
  return (lo != 0.0 && r_lo < r_hi) ? lo : hi;
}

// ---------------------------------------------------------------------------
// Expected minimum of X_i + lambda Y_i over n i.i.d. pairs.

enum class MinRegime { e1, e2, e3, e4, e5, power_law };

constexpr std::string_view to_string(MinRegime r) {
  switch (r) {
    case MinRegime::e1: return "E1";
    case MinRegime::e2: return "E2";
    case MinRegime::e3: return "E3";
    case MinRegime::e4: return "E4";
    case MinRegime::e5: return "E5";
    case MinRegime::power_law: return "EMIN_POWER";
  }
  return "?";
}

struct ExpectedMin {
  double value;
  MinRegime regime;
};

/// Leading-order value. For s = 1 the regime boundaries are 1/(n log n),
/// log n / n, n / log n and n log n; a lambda sitting exactly on a boundary
/// gets the higher-numbered regime. For s < 1 lambda must lie in
/// [(log n / n)^s, (n / log n)^s].
inline ExpectedMin expected_min(std::size_t n, double lambda, double s) {
  require(n >= 2, Errc::invalid_argument, "expected_min needs n >= 2");
  require(lambda >= 0.0 && std::isfinite(lambda), Errc::invalid_argument,
          "expected_min needs finite lambda >= 0");
  require(s > 0.0 && s <= 1.0, Errc::domain, "expected_min needs s in (0, 1]");
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  if (s < 1.0) {
    const double lo = std::pow(ln / nn, s);
    const double hi = std::pow(nn / ln, s);
    require(lambda >= lo && lambda <= hi, Errc::range,
            "expected_min: lambda outside the power-law validity range");
    return {c_s(s) * std::sqrt(lambda) / std::pow(nn, s / 2.0), MinRegime::power_law};
  }
  if (lambda < 1.0 / (nn * ln)) return {1.0 / nn, MinRegime::e1};
  if (lambda < ln / nn) return {f_eval(lambda * nn) / nn, MinRegime::e2};
  if (lambda < nn / ln) return {std::sqrt(std::numbers::pi / 2.0) * std::sqrt(lambda / nn), MinRegime::e3};
  if (lambda < nn * ln) return {(lambda / nn) * f_eval(nn / lambda), MinRegime::e4};
  return {lambda / nn, MinRegime::e5};
}

// ---------------------------------------------------------------------------
// Predicted optimum of the constrained arborescence problem.

enum class Regime { case1, case2_slack, case2_tight, case3_infeasible, case3_tight, theorem2, ambiguous };

constexpr std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::case1: return "CASE1";
    case Regime::case2_slack: return "CASE2_SLACK";
    case Regime::case2_tight: return "CASE2_TIGHT";
    case Regime::case3_infeasible: return "CASE3_INFEASIBLE";
    case Regime::case3_tight: return "CASE3_TIGHT";
    case Regime::theorem2: return "THEOREM2";
    case Regime::ambiguous: return "AMBIGUOUS";
  }
  return "?";
}

struct Prediction {
  Regime regime;
  std::optional<double> w_star;
  std::optional<double> lambda_star_hint;
  std::optional<double> beta_star;
  double alpha;                // c0 / n in case 2, c0 in case 3, otherwise c0 / n
  double guard_low;            // band edges actually used for the classification
  double guard_high;
};

/// Classifies (n, c0, s) and returns the leading-order prediction.
///
/// s = 1: case 1 when log n <= c0 <= n / log n, case 2 (c0 = alpha n) above
/// that band, case 3 (c0 = alpha) below it. s < 1: the THEOREM2 band
/// n^{1-s} <= c0 <= n, which drops the logarithmic factors of the asymptotic
/// range (with them the band is empty for n in the low thousands).
///
/// Throws AMBIGUOUS-REGIME when no formula applies (c0 == 1 exactly in case 3,
/// or s < 1 outside its band).
inline Prediction predict(std::size_t n, double c0, double s) {
  require(n >= 2, Errc::invalid_argument, "predict needs n >= 2");
  require(c0 > 0.0 && std::isfinite(c0), Errc::invalid_argument, "predict needs c0 > 0");
  require(s > 0.0 && s <= 1.0, Errc::domain, "predict needs s in (0, 1]");
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  Prediction p{Regime::ambiguous, std::nullopt, std::nullopt, std::nullopt, c0 / nn, 0.0, 0.0};

  if (s < 1.0) {
    p.guard_low = std::pow(nn, 1.0 - s);
    p.guard_high = nn;
    if (c0 < p.guard_low || c0 > p.guard_high) {
      throw Error(Errc::ambiguous_regime, "c0 outside the s < 1 band [n^(1-s), n]");
    }
    const double cs2 = c_s(s) * c_s(s);
    p.regime = Regime::theorem2;
    p.w_star = cs2 * std::pow(nn, 2.0 - s) / (4.0 * c0);
    p.lambda_star_hint = cs2 * std::pow(nn, 2.0 - s) / (4.0 * c0 * c0);
    return p;
  }

  if (c0 >= ln && c0 <= nn / ln) {
    p.regime = Regime::case1;
    p.guard_low = ln;
    p.guard_high = nn / ln;
    p.w_star = std::numbers::pi * nn / (8.0 * c0);
    p.lambda_star_hint = std::numbers::pi * nn / (8.0 * c0 * c0);
    return p;
  }
  if (c0 > nn / ln) {
    const double alpha = c0 / nn;
    p.alpha = alpha;
    p.guard_low = nn / ln;
    p.guard_high = std::numeric_limits<double>::infinity();
    if (alpha >= 0.5) {
      p.regime = Regime::case2_slack;
      p.w_star = 1.0;
      p.lambda_star_hint = 0.0;
      return p;
    }
    const double b = beta_star(alpha, DualCase::case2);
    p.regime = Regime::case2_tight;
    p.beta_star = b;
    p.w_star = f_eval(b) - alpha * b;
    p.lambda_star_hint = b / nn;
    return p;
  }
  // c0 < log n: constant-order budget.
  const double alpha = c0;
  p.alpha = alpha;
  p.guard_low = 0.0;
  p.guard_high = ln;
  if (alpha < 1.0) {
    p.regime = Regime::case3_infeasible;
    return p;
  }
  if (alpha == 1.0) throw Error(Errc::ambiguous_regime, "c0 == 1 separates the two case-3 regimes");
  const double b = beta_star(alpha, DualCase::case3);
  p.regime = Regime::case3_tight;
  p.beta_star = b;
  p.w_star = (g_eval(b) - alpha * b) * nn;
  p.lambda_star_hint = b * nn;
  return p;
}

}  // namespace cmsa
