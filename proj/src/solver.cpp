#include "p3p/solver.hpp"

#include <cmath>
#include <limits>

#include "p3p/quartic.hpp"

namespace p3p {

const char *diagnostic_name(Diagnostic d) {
    switch (d) {
    case Diagnostic::kOk:
        return "ok";
    case Diagnostic::kDegenerateInstance:
        return "degenerate_instance";
    case Diagnostic::kPointSelectionFailure:
        return "point_selection_failure";
    case Diagnostic::kNoPositiveIntersection:
        return "no_positive_intersection";
    case Diagnostic::kSingularGeometry:
        return "singular_geometry";
    }
    return "unknown";
}

IntersectionSet intersect_conics(const ConicPair &pair) {
    IntersectionSet out;

    const ConicClass cls = classify_conic(pair.inv);
    ReferencePoints pts;
    if (!select_points(pair.inv, cls, &pts)) {
        out.diagnostic = Diagnostic::kPointSelectionFailure;
        return out;
    }
    const auto p0 = polar_intersection(pair.C1, pts.p1, pts.p2);
    if (!p0) {
        out.diagnostic = Diagnostic::kPointSelectionFailure;
        return out;
    }
    pts.p0 = *p0;
    const auto hom = build_homography(pts);
    if (!hom) {
        out.diagnostic = Diagnostic::kPointSelectionFailure;
        return out;
    }

    const TransformedConic tc = transform_conic2(pair.C2, hom->H);
    const auto roots = solve_quartic_real(
        QuarticCoeffs{tc.c2p, tc.b2p, tc.a2p + tc.e2p, tc.d2p, tc.f2p});
    if (!roots || roots->count == 0) {
        out.diagnostic = Diagnostic::kNoPositiveIntersection;
        return out;
    }

    for (int i = 0; i < roots->count; ++i) {
        const double xp = roots->roots[i];
        const Vec3 mapped = hom->H * Vec3{xp, xp * xp, 1.0};
        if (std::abs(mapped.z) < 1e-12 * norm(mapped)) {
            continue; // back-transformed point at infinity
        }
        const double x = mapped.x / mapped.z;
        const double y = mapped.y / mapped.z;
        if (!(x > 0.0) || !(y > 0.0)) {
            continue;
        }
        double s1;
        double s2;
        const double r1 = conic1_value(pair.inv, x, y, &s1);
        const double r2 = conic2_value(pair.inv, x, y, &s2);
        if (std::abs(r1) > 1e-6 * s1 || std::abs(r2) > 1e-6 * s2) {
            continue;
        }
        out.x[out.count] = x;
        out.y[out.count] = y;
        ++out.count;
    }
    if (out.count == 0) {
        out.diagnostic = Diagnostic::kNoPositiveIntersection;
    }
    return out;
}

bool recover_depths(double x, double y, const P3PInstance &inst, const ConicInvariants &inv,
                    DepthTriple *depths) {
    const double radicand = y * y - 2.0 * inv.m23 * y + 1.0;
    if (radicand <= 1e-20) {
        return false;
    }
    const double d3 = norm(inst.X2 - inst.X3) / std::sqrt(radicand);
    depths->d1 = x * d3;
    depths->d2 = y * d3;
    depths->d3 = d3;
    return true;
}

DepthTriple refine_depths(const DepthTriple &d, const P3PInstance &inst) {
    const double s12 = squared_norm(inst.X1 - inst.X2);
    const double s13 = squared_norm(inst.X1 - inst.X3);
    const double s23 = squared_norm(inst.X2 - inst.X3);
    const double m12 = dot(inst.m1, inst.m2);
    const double m13 = dot(inst.m1, inst.m3);
    const double m23 = dot(inst.m2, inst.m3);
    const double scale = std::max(s12, std::max(s13, s23));
    const double target = 1e-24 * scale * scale;

    auto residuals = [&](const DepthTriple &v, Vec3 *r) {
        r->x = v.d1 * v.d1 - 2.0 * v.d1 * v.d2 * m12 + v.d2 * v.d2 - s12;
        r->y = v.d1 * v.d1 - 2.0 * v.d1 * v.d3 * m13 + v.d3 * v.d3 - s13;
        r->z = v.d2 * v.d2 - 2.0 * v.d2 * v.d3 * m23 + v.d3 * v.d3 - s23;
    };

    DepthTriple best = d;
    Vec3 r;
    residuals(best, &r);
    double best_sq = squared_norm(r);

    for (int iter = 0; iter < 3 && best_sq > target; ++iter) {
        const Mat3 J = Mat3{{2.0 * (best.d1 - best.d2 * m12), 2.0 * (best.d2 - best.d1 * m12), 0.0,
                             2.0 * (best.d1 - best.d3 * m13), 0.0, 2.0 * (best.d3 - best.d1 * m13),
                             0.0, 2.0 * (best.d2 - best.d3 * m23), 2.0 * (best.d3 - best.d2 * m23)}};
        const auto step = solve3(J, r);
        if (!step) {
            break;
        }
        const DepthTriple cand{best.d1 - step->x, best.d2 - step->y, best.d3 - step->z};
        if (cand.d1 <= 0.0 || cand.d2 <= 0.0 || cand.d3 <= 0.0) {
            break;
        }
        Vec3 rc;
        residuals(cand, &rc);
        const double cand_sq = squared_norm(rc);
        if (cand_sq >= best_sq) {
            break; // step rejected, keep previous iterate
        }
        best = cand;
        r = rc;
        best_sq = cand_sq;
    }
    return best;
}

bool recover_pose(const DepthTriple &d, const P3PInstance &inst, Pose *pose) {
    const Vec3 x12 = inst.X1 - inst.X2;
    const Vec3 x13 = inst.X1 - inst.X3;
    const Vec3 nx = cross(x12, x13);
    const Mat3 X = Mat3::from_cols(x12, x13, nx);
    const auto Xinv = invert3(X);
    if (!Xinv) {
        return false;
    }
    const Vec3 y12 = d.d1 * inst.m1 - d.d2 * inst.m2;
    const Vec3 y13 = d.d1 * inst.m1 - d.d3 * inst.m3;
    const Vec3 ny = cross(y12, y13);
    const Mat3 Y = Mat3::from_cols(y12, y13, ny);
    pose->R = Y * (*Xinv);
    pose->t = d.d1 * inst.m1 - pose->R * inst.X1;
    return true;
}

std::array<double, 4> rotation_to_quaternion(const Mat3 &R) {
    // largest-pivot Shepperd read-off, no normalization
    const double t = R(0, 0) + R(1, 1) + R(2, 2);
    std::array<double, 4> q{};
    if (t > R(0, 0) && t > R(1, 1) && t > R(2, 2)) {
        const double w = std::sqrt(std::max(0.0, 1.0 + t));
        q[0] = 0.5 * w;
        const double s = 0.5 / w;
        q[1] = (R(2, 1) - R(1, 2)) * s;
        q[2] = (R(0, 2) - R(2, 0)) * s;
        q[3] = (R(1, 0) - R(0, 1)) * s;
    } else if (R(0, 0) > R(1, 1) && R(0, 0) > R(2, 2)) {
        const double w = std::sqrt(std::max(0.0, 1.0 + 2.0 * R(0, 0) - t));
        q[1] = 0.5 * w;
        const double s = 0.5 / w;
        q[0] = (R(2, 1) - R(1, 2)) * s;
        q[2] = (R(0, 1) + R(1, 0)) * s;
        q[3] = (R(0, 2) + R(2, 0)) * s;
    } else if (R(1, 1) > R(2, 2)) {
        const double w = std::sqrt(std::max(0.0, 1.0 + 2.0 * R(1, 1) - t));
        q[2] = 0.5 * w;
        const double s = 0.5 / w;
        q[0] = (R(0, 2) - R(2, 0)) * s;
        q[1] = (R(0, 1) + R(1, 0)) * s;
        q[3] = (R(1, 2) + R(2, 1)) * s;
    } else {
        const double w = std::sqrt(std::max(0.0, 1.0 + 2.0 * R(2, 2) - t));
        q[3] = 0.5 * w;
        const double s = 0.5 / w;
        q[0] = (R(1, 0) - R(0, 1)) * s;
        q[1] = (R(0, 2) + R(2, 0)) * s;
        q[2] = (R(1, 2) + R(2, 1)) * s;
    }
    return q;
}

PoseValidity check_pose_validity(const Pose &pose, const P3PInstance &inst) {
    PoseValidity v;
    const double det_r = det(pose.R);
    v.det_r_ok = std::abs(det_r - 1.0) < 1e-6;
    v.det_rrt_ok = std::abs(det_r * det_r - 1.0) < 1e-6;

    const auto q = rotation_to_quaternion(pose.R);
    const double qn = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    v.quat_ok = std::abs(qn - 1.0) < 1e-5;

    const Vec3 *X[3] = {&inst.X1, &inst.X2, &inst.X3};
    const Vec3 *m[3] = {&inst.m1, &inst.m2, &inst.m3};
    double err = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Vec3 proj = pose.R * (*X[i]) + pose.t;
        const auto dir = normalize(proj);
        if (!dir) {
            err = std::numeric_limits<double>::infinity();
            break;
        }
        const Vec3 diff = *dir - *m[i];
        err = std::max(err, std::abs(diff.x) + std::abs(diff.y) + std::abs(diff.z));
    }
    v.reproj_err = err;
    v.reproj_ok = err < 1e-4;
    return v;
}

double pose_distance_l1(const Pose &p, const Pose &q) {
    double s = 0.0;
    for (int i = 0; i < 9; ++i) {
        s += std::abs(p.R.m[i] - q.R.m[i]);
    }
    s += std::abs(p.t.x - q.t.x) + std::abs(p.t.y - q.t.y) + std::abs(p.t.z - q.t.z);
    return s;
}

SolverOutput solve_p3p(const P3PInstance &inst) {
    SolverOutput out;

    const auto inv = compute_invariants(inst);
    if (!inv) {
        out.diagnostic = Diagnostic::kDegenerateInstance;
        return out;
    }
    const ConicPair pair = build_conics(*inv);

    const IntersectionSet pts = intersect_conics(pair);
    if (pts.count == 0) {
        out.diagnostic = pts.diagnostic;
        return out;
    }

    bool saw_singular = false;
    for (int i = 0; i < pts.count; ++i) {
        DepthTriple depths;
        if (!recover_depths(pts.x[i], pts.y[i], inst, *inv, &depths)) {
            continue;
        }
        depths = refine_depths(depths, inst);
        Pose pose;
        if (!recover_pose(depths, inst, &pose)) {
            saw_singular = true;
            continue;
        }
        if (!check_pose_validity(pose, inst).all()) {
            continue;
        }
        // duplicate suppression at the benchmark threshold
        bool dup = false;
        for (int j = 0; j < out.count; ++j) {
            if (pose_distance_l1(out.solutions[j].pose, pose) < 1e-5) {
                dup = true;
                break;
            }
        }
        if (dup) {
            continue;
        }
        out.solutions[out.count] = PoseSolution{pose, depths, pts.x[i], pts.y[i]};
        ++out.count;
    }

    if (out.count == 0) {
        out.diagnostic =
            saw_singular ? Diagnostic::kSingularGeometry : Diagnostic::kNoPositiveIntersection;
    }
    return out;
}

} // namespace p3p
