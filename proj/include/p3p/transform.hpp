#ifndef P3P_TRANSFORM_HPP
#define P3P_TRANSFORM_HPP

#include <optional>

#include "p3p/conic.hpp"
#include "p3p/geom.hpp"

// Change of projective coordinates that turns the first conic into the
// canonical parabola y' = x'^2. Three real points are selected on C1, the
// pole of the line through the first two completes a projective frame, and
// the homography mapping the canonical frame onto it is assembled column by
// column. Everything stays real: square-root arguments are sign-checked and
// negative branches rejected before any root is taken.

namespace p3p {

enum class ConicKind { kHyperbola, kEllipse, kParabola };

struct ConicClass {
    double discriminant = 0.0; // 4 (m12^2 + a - 1)
    ConicKind kind = ConicKind::kEllipse;
};

// Projective frame in the original coordinates: p0 is the pole of the line
// through p1 and p2; p1, p2, p3 lie on C1.
struct ReferencePoints {
    HomPoint2 p0, p1, p2, p3;
};

// H maps the canonical frame e0..e3 onto p0..p3; columns are lambda_i * p_i.
struct Homography {
    Mat3 H;
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

// Coefficients of the transformed second conic
//   a2p x'^2 + b2p x' y' + c2p y'^2 + d2p x' + e2p y' + f2p = 0.
struct TransformedConic {
    double a2p = 0.0;
    double b2p = 0.0;
    double c2p = 0.0;
    double d2p = 0.0;
    double e2p = 0.0;
    double f2p = 0.0;
};

enum class ScaleStatus { kOk, kCollinearReferencePoints, kZeroScale };

ConicClass classify_conic(const ConicInvariants &inv);

// Fills p1, p2, p3 of `pts`. p2 and p3 come from the y = 0 line; p1 is a
// real point on a vertical line whose position depends on the conic kind.
// Returns false when no attempted vertical line meets the conic in a real,
// sufficiently distinct point.
bool select_points(const ConicInvariants &inv, const ConicClass &cls, ReferencePoints *pts);

// Pole of the line through p1 and p2: the intersection of their polars.
// Empty when the polars are (near-)coincident.
std::optional<HomPoint2> polar_intersection(const Mat3 &C1, const HomPoint2 &p1,
                                            const HomPoint2 &p2);

// Solves [p0 p1 p2] * lambda = p3.
ScaleStatus solve_scales(const ReferencePoints &pts, Vec3 *lambdas);

// Assembles H = [l0*p0  l1*p1  l2*p2]; empty on collinear frame or vanishing
// scale.
std::optional<Homography> build_homography(const ReferencePoints &pts);

// Reads the six conic coefficients out of H^T C2 H.
TransformedConic transform_conic2(const Mat3 &C2, const Mat3 &H);

} // namespace p3p

#endif
