#ifndef P3P_QUARTIC_HPP
#define P3P_QUARTIC_HPP

#include <array>
#include <optional>

// Closed-form real-root extraction for quadratics, cubics, and quartics.
// Complex branches are discarded by sign checks ahead of every square root,
// so no complex arithmetic occurs anywhere in this module.

namespace p3p {

// Real roots in ascending order; only the first `count` entries are valid.
// Roots closer than 1e-9 * (1 + |r|) are merged and reported once.
struct RealRoots {
    int count = 0;
    std::array<double, 4> roots{};
};

// Coefficients of c4*x^4 + c3*x^3 + c2*x^2 + c1*x + c0.
struct QuarticCoeffs {
    double c4 = 0.0;
    double c3 = 0.0;
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;
};

// Real roots of a*x^2 + b*x + c. Degrades to linear when a = 0;
// empty result when the polynomial is identically zero.
std::optional<RealRoots> solve_quadratic_real(double a, double b, double c);

// Real roots of a*x^3 + b*x^2 + c*x + d. Degrades to the quadratic when
// |a| < 1e-14 * max coefficient magnitude.
std::optional<RealRoots> solve_cubic_real(double a, double b, double c, double d);

// Real roots via Ferrari's method: depress, solve the resolvent cubic, split
// into two quadratics. Every returned root gets one Newton step against the
// original quartic. Degrades to the cubic chain when |c4| < 1e-13 * max
// coefficient magnitude.
std::optional<RealRoots> solve_quartic_real(const QuarticCoeffs &q);

} // namespace p3p

#endif
