#ifndef P3P_SOLVER_HPP
#define P3P_SOLVER_HPP

#include <array>

#include "p3p/conic.hpp"
#include "p3p/geom.hpp"
#include "p3p/transform.hpp"

// End-to-end P3P pipeline: intersect the two conics through the parabola
// transformation, keep the positive-quadrant points, recover and refine the
// depths, and recover up to four camera poses.

namespace p3p {

enum class Diagnostic {
    kOk,
    kDegenerateInstance,
    kPointSelectionFailure,
    kNoPositiveIntersection,
    kSingularGeometry,
};

const char *diagnostic_name(Diagnostic d);

// Distances from the camera center to the three world points.
struct DepthTriple {
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
};

struct PoseSolution {
    Pose pose;
    DepthTriple depths;
    double x = 0.0; // d1/d3 at the conic intersection
    double y = 0.0; // d2/d3
};

struct SolverOutput {
    int count = 0;
    std::array<PoseSolution, 4> solutions{};
    Diagnostic diagnostic = Diagnostic::kOk;
};

// Positive-quadrant intersection points of the conic pair.
struct IntersectionSet {
    int count = 0;
    std::array<double, 4> x{};
    std::array<double, 4> y{};
    Diagnostic diagnostic = Diagnostic::kOk;
};

// Transform, solve the five-term quartic, map the real roots back, and keep
// points with x > 0 and y > 0 that still satisfy both original conics.
IntersectionSet intersect_conics(const ConicPair &pair);

// d3 from the third distance equation (it involves y only), then d1 = x d3,
// d2 = y d3. Returns false when the radicand y^2 - 2 m23 y + 1 degenerates.
bool recover_depths(double x, double y, const P3PInstance &inst, const ConicInvariants &inv,
                    DepthTriple *depths);

// Newton refinement of the three pairwise distance residuals
//   r_ij = d_i^2 - 2 d_i d_j m_ij + d_j^2 - |X_i - X_j|^2
// with a full 3x3 step, at most 3 iterations, and step rejection: the result
// is never worse than the input in residual norm.
DepthTriple refine_depths(const DepthTriple &d, const P3PInstance &inst);

// R = Y X^{-1} with the cross-product columns appended to make X invertible;
// t from the first correspondence. Returns false on collinear world points.
bool recover_pose(const DepthTriple &d, const P3PInstance &inst, Pose *pose);

// Unnormalized quaternion read off R by the largest-pivot rule; its norm
// deviates from 1 by roughly the non-orthogonality of R.
std::array<double, 4> rotation_to_quaternion(const Mat3 &R);

// The validity conditions applied to every emitted pose (duplicate removal
// is handled separately at the solution-set level).
struct PoseValidity {
    bool det_rrt_ok = false;  // |det(R R^T) - 1| < 1e-6
    bool det_r_ok = false;    // |det(R) - 1| < 1e-6
    bool quat_ok = false;     // | |q| - 1 | < 1e-5
    bool reproj_ok = false;   // bearing reprojection error < 1e-4
    double reproj_err = 0.0;  // max over points, L1 on unit bearings

    bool all() const { return det_rrt_ok && det_r_ok && quat_ok && reproj_ok; }
};

PoseValidity check_pose_validity(const Pose &pose, const P3PInstance &inst);

// L1 rotation + translation distance between two poses, the metric used for
// duplicate suppression.
double pose_distance_l1(const Pose &p, const Pose &q);

// Full pipeline. Never throws; failures are reported in the diagnostic.
SolverOutput solve_p3p(const P3PInstance &inst);

} // namespace p3p

#endif
