#include "p3p/transform.hpp"

#include <cmath>

namespace p3p {

namespace {

// Real solutions of the conic restricted to the vertical line x = x0:
//   (1-a) y^2 + (2 a m23 - 2 m12 x0) y + (x0^2 - a) = 0.
// Picks the root of larger magnitude (farthest from the y = 0 reference
// points), breaking exact ties toward positive y. Returns false when the
// line misses the conic.
bool restricted_root(const ConicInvariants &inv, double x0, double *y_out) {
    const double qa = 1.0 - inv.a;
    const double qb = 2.0 * inv.a * inv.m23 - 2.0 * inv.m12 * x0;
    const double qc = x0 * x0 - inv.a;

    const double scale = std::max(std::abs(qa), std::max(std::abs(qb), std::abs(qc)));
    if (scale == 0.0) {
        return false;
    }
    if (std::abs(qa) < 1e-14 * scale) {
        // leading coefficient vanishes (a = 1): the restriction is linear
        if (std::abs(qb) < 1e-14 * scale) {
            return false;
        }
        *y_out = -qc / qb;
        return true;
    }
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) {
        return false;
    }
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (qb + std::copysign(sq, qb));
    double r1;
    double r2;
    if (q == 0.0) {
        r1 = 0.0;
        r2 = 0.0;
    } else {
        r1 = q / qa;      // larger-magnitude root
        r2 = qc / q;
    }
    if (std::abs(r1) > std::abs(r2)) {
        *y_out = r1;
    } else if (std::abs(r2) > std::abs(r1)) {
        *y_out = r2;
    } else {
        *y_out = std::max(r1, r2); // tie: prefer positive y
    }
    return true;
}

bool distinct_enough(const HomPoint2 &p, const HomPoint2 &q, double min_dist) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return dx * dx + dy * dy > min_dist * min_dist;
}

} // namespace

ConicClass classify_conic(const ConicInvariants &inv) {
    ConicClass cls;
    cls.discriminant = 4.0 * (inv.m12 * inv.m12 + inv.a - 1.0);
    const double tol = 1e-12 * std::max(1.0, 4.0 * inv.a);
    if (cls.discriminant > tol) {
        cls.kind = ConicKind::kHyperbola;
    } else if (cls.discriminant < -tol) {
        cls.kind = ConicKind::kEllipse;
    } else {
        cls.kind = ConicKind::kParabola;
    }
    return cls;
}

bool select_points(const ConicInvariants &inv, const ConicClass &cls, ReferencePoints *pts) {
    const double sqrt_a = std::sqrt(inv.a);
    pts->p2 = HomPoint2{sqrt_a, 0.0, 1.0};
    pts->p3 = HomPoint2{-sqrt_a, 0.0, 1.0};

    // Ellipses and parabolas always meet the line x = 0; hyperbolas use
    // x = sqrt(a) + 1 with a short retreat ladder for orientations where
    // that line misses (the restricted discriminant grows like Delta * x^2,
    // so a larger offset always succeeds).
    double candidates[5];
    int n_candidates;
    if (cls.kind == ConicKind::kHyperbola) {
        candidates[0] = sqrt_a + 1.0;
        candidates[1] = sqrt_a + 2.0;
        candidates[2] = sqrt_a + 4.0;
        candidates[3] = -sqrt_a - 1.0;
        candidates[4] = -sqrt_a - 2.0;
        n_candidates = 5;
    } else {
        candidates[0] = 0.0;
        n_candidates = 1;
    }

    const double min_dist = 1e-8 * (1.0 + sqrt_a);
    for (int i = 0; i < n_candidates; ++i) {
        double y1;
        if (!restricted_root(inv, candidates[i], &y1)) {
            continue;
        }
        const HomPoint2 p1{candidates[i], y1, 1.0};
        if (!std::isfinite(y1) || !distinct_enough(p1, pts->p2, min_dist) ||
            !distinct_enough(p1, pts->p3, min_dist)) {
            continue;
        }
        pts->p1 = p1;
        return true;
    }
    return false;
}

std::optional<HomPoint2> polar_intersection(const Mat3 &C1, const HomPoint2 &p1,
                                            const HomPoint2 &p2) {
    const Vec3 l1 = C1 * Vec3{p1.x, p1.y, p1.w};
    const Vec3 l2 = C1 * Vec3{p2.x, p2.y, p2.w};
    const Vec3 p0 = cross(l1, l2);
    if (norm(p0) <= 1e-12 * norm(l1) * norm(l2)) {
        return std::nullopt;
    }
    return HomPoint2{p0.x, p0.y, p0.z};
}

ScaleStatus solve_scales(const ReferencePoints &pts, Vec3 *lambdas) {
    const Mat3 P = Mat3::from_cols(Vec3{pts.p0.x, pts.p0.y, pts.p0.w},
                                   Vec3{pts.p1.x, pts.p1.y, pts.p1.w},
                                   Vec3{pts.p2.x, pts.p2.y, pts.p2.w});
    const auto sol = solve3(P, Vec3{pts.p3.x, pts.p3.y, pts.p3.w});
    if (!sol) {
        return ScaleStatus::kCollinearReferencePoints;
    }
    const double lmax = std::max(std::abs(sol->x), std::max(std::abs(sol->y), std::abs(sol->z)));
    if (std::abs(sol->x) < 1e-12 * lmax || std::abs(sol->y) < 1e-12 * lmax ||
        std::abs(sol->z) < 1e-12 * lmax) {
        return ScaleStatus::kZeroScale;
    }
    *lambdas = *sol;
    return ScaleStatus::kOk;
}

std::optional<Homography> build_homography(const ReferencePoints &pts) {
    Vec3 lambdas;
    if (solve_scales(pts, &lambdas) != ScaleStatus::kOk) {
        return std::nullopt;
    }
    Homography hom;
    hom.lambda0 = lambdas.x;
    hom.lambda1 = lambdas.y;
    hom.lambda2 = lambdas.z;
    hom.H = Mat3::from_cols(lambdas.x * Vec3{pts.p0.x, pts.p0.y, pts.p0.w},
                            lambdas.y * Vec3{pts.p1.x, pts.p1.y, pts.p1.w},
                            lambdas.z * Vec3{pts.p2.x, pts.p2.y, pts.p2.w});
    return hom;
}

TransformedConic transform_conic2(const Mat3 &C2, const Mat3 &H) {
    const Mat3 M = H.transpose() * (C2 * H);
    TransformedConic tc;
    tc.a2p = M(0, 0);
    tc.b2p = 2.0 * M(0, 1);
    tc.c2p = M(1, 1);
    tc.d2p = 2.0 * M(0, 2);
    tc.e2p = 2.0 * M(1, 2);
    tc.f2p = M(2, 2);
    return tc;
}

} // namespace p3p
