#include "p3p/quartic.hpp"

#include <algorithm>
#include <cmath>

namespace p3p {

namespace {

constexpr double kMergeRel = 1e-9;

void sort_and_merge(RealRoots &rr) {
    std::sort(rr.roots.begin(), rr.roots.begin() + rr.count);
    int out = 0;
    int i = 0;
    while (i < rr.count) {
        // cluster of roots within the merge band; report their mean once
        double sum = rr.roots[i];
        int n = 1;
        int j = i + 1;
        while (j < rr.count &&
               rr.roots[j] - rr.roots[i] < kMergeRel * (1.0 + std::abs(rr.roots[j]))) {
            sum += rr.roots[j];
            ++n;
            ++j;
        }
        rr.roots[out++] = sum / n;
        i = j;
    }
    rr.count = out;
}

double eval_quartic(const QuarticCoeffs &q, double x) {
    return (((q.c4 * x + q.c3) * x + q.c2) * x + q.c1) * x + q.c0;
}

double eval_quartic_deriv(const QuarticCoeffs &q, double x) {
    return ((4.0 * q.c4 * x + 3.0 * q.c3) * x + 2.0 * q.c2) * x + q.c1;
}

// Roots of y^2 + b*y + c appended to rr (no normalization needed: monic).
void append_monic_quadratic_roots(double b, double c, RealRoots &rr) {
    const double disc = b * b - 4.0 * c;
    if (disc < 0.0) {
        return;
    }
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    if (q == 0.0) {
        rr.roots[rr.count++] = 0.0;
        rr.roots[rr.count++] = 0.0;
        return;
    }
    rr.roots[rr.count++] = q;
    rr.roots[rr.count++] = c / q;
}

} // namespace

std::optional<RealRoots> solve_quadratic_real(double a, double b, double c) {
    if (a == 0.0 && b == 0.0 && c == 0.0) {
        return std::nullopt;
    }
    RealRoots rr;
    if (a == 0.0) {
        if (b != 0.0) {
            rr.roots[rr.count++] = -c / b;
        }
        return rr;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        return rr;
    }
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    if (q == 0.0) {
        // b = 0 and disc = 0, hence c = 0: double root at the origin
        rr.roots[rr.count++] = 0.0;
    } else {
        rr.roots[rr.count++] = q / a;
        rr.roots[rr.count++] = c / q;
    }
    sort_and_merge(rr);
    return rr;
}

std::optional<RealRoots> solve_cubic_real(double a, double b, double c, double d) {
    const double maxc =
        std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
    if (maxc == 0.0) {
        return std::nullopt;
    }
    if (std::abs(a) < 1e-14 * maxc) {
        return solve_quadratic_real(b, c, d);
    }

    const double A = b / a;
    const double B = c / a;
    const double C = d / a;

    const double q = (A * A - 3.0 * B) / 9.0;
    const double r = (A * (2.0 * A * A - 9.0 * B) + 27.0 * C) / 54.0;
    const double r2 = r * r;
    const double q3 = q * q * q;

    RealRoots rr;
    if (r2 <= q3) {
        if (q3 <= 0.0) {
            // q = r = 0: triple root
            rr.roots[rr.count++] = -A / 3.0;
        } else {
            const double t = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
            const double m = -2.0 * std::sqrt(q);
            const double two_pi = 6.283185307179586476925286766559;
            rr.roots[rr.count++] = m * std::cos(t / 3.0) - A / 3.0;
            rr.roots[rr.count++] = m * std::cos((t + two_pi) / 3.0) - A / 3.0;
            rr.roots[rr.count++] = m * std::cos((t - two_pi) / 3.0) - A / 3.0;
        }
    } else {
        double big = -std::cbrt(std::abs(r) + std::sqrt(r2 - q3));
        if (r < 0.0) {
            big = -big;
        }
        const double small = (big == 0.0) ? 0.0 : q / big;
        rr.roots[rr.count++] = (big + small) - A / 3.0;
    }

    // one Newton step against the unnormalized cubic
    for (int i = 0; i < rr.count; ++i) {
        const double x = rr.roots[i];
        const double p = ((a * x + b) * x + c) * x + d;
        const double dp = (3.0 * a * x + 2.0 * b) * x + c;
        if (dp != 0.0) {
            const double step = p / dp;
            if (std::abs(step) < 1.0 + std::abs(x)) {
                rr.roots[i] = x - step;
            }
        }
    }
    sort_and_merge(rr);
    return rr;
}

std::optional<RealRoots> solve_quartic_real(const QuarticCoeffs &q) {
    const double maxc = std::max(std::max(std::abs(q.c4), std::abs(q.c3)),
                                 std::max(std::max(std::abs(q.c2), std::abs(q.c1)),
                                          std::abs(q.c0)));
    if (maxc == 0.0) {
        return std::nullopt;
    }
    if (std::abs(q.c4) < 1e-13 * maxc) {
        return solve_cubic_real(q.c3, q.c2, q.c1, q.c0);
    }

    const double A = q.c3 / q.c4;
    const double B = q.c2 / q.c4;
    const double C = q.c1 / q.c4;
    const double D = q.c0 / q.c4;

    // depress: x = y - A/4 turns the quartic into y^4 + p y^2 + qd y + r
    const double A2 = A * A;
    const double p = B - 3.0 * A2 / 8.0;
    const double qd = C - A * B / 2.0 + A2 * A / 8.0;
    const double r = D - A * C / 4.0 + A2 * B / 16.0 - 3.0 * A2 * A2 / 256.0;

    RealRoots rr;

    bool biquadratic = (qd == 0.0);
    double u = 0.0;
    if (!biquadratic) {
        // resolvent: 8 m^3 + 8 p m^2 + (2 p^2 - 8 r) m - qd^2 = 0.
        // Its value at m = 0 is -qd^2 < 0, so the largest real root is
        // positive and 2m is a valid square-root argument.
        const auto res = solve_cubic_real(8.0, 8.0 * p, 2.0 * p * p - 8.0 * r, -qd * qd);
        const double m = (res && res->count > 0) ? res->roots[res->count - 1] : 0.0;
        if (2.0 * m > 0.0) {
            u = std::sqrt(2.0 * m);
            const double shifted = p + 2.0 * m;
            const double delta = qd / u;
            // (y^2 - u y + s)(y^2 + u y + t)
            const double s = 0.5 * (shifted + delta);
            const double t = 0.5 * (shifted - delta);
            append_monic_quadratic_roots(-u, s, rr);
            append_monic_quadratic_roots(u, t, rr);
        } else {
            // qd^2 underflowed to zero; fall back to the biquadratic split
            biquadratic = true;
        }
    }
    if (biquadratic) {
        // y^4 + p y^2 + r: substitute z = y^2, keep z >= 0 only
        const auto zs = solve_quadratic_real(1.0, p, r);
        if (zs) {
            for (int i = 0; i < zs->count; ++i) {
                const double z = zs->roots[i];
                if (z < 0.0) {
                    continue;
                }
                const double y = std::sqrt(z);
                rr.roots[rr.count++] = y;
                if (y > 0.0) {
                    rr.roots[rr.count++] = -y;
                }
            }
        }
    }

    for (int i = 0; i < rr.count; ++i) {
        double x = rr.roots[i] - A / 4.0;
        // one Newton step against the original quartic
        const double f = eval_quartic(q, x);
        const double df = eval_quartic_deriv(q, x);
        if (df != 0.0) {
            const double step = f / df;
            if (std::abs(step) < 1.0 + std::abs(x)) {
                x -= step;
            }
        }
        rr.roots[i] = x;
    }
    sort_and_merge(rr);
    return rr;
}

} // namespace p3p
