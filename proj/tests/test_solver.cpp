#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "p3p/solver.hpp"
#include "p3p/synthetic.hpp"

using namespace p3p;

namespace {

double depth_residual_sq(const DepthTriple &d, const P3PInstance &inst) {
    const double s12 = squared_norm(inst.X1 - inst.X2);
    const double s13 = squared_norm(inst.X1 - inst.X3);
    const double s23 = squared_norm(inst.X2 - inst.X3);
    const double m12 = dot(inst.m1, inst.m2);
    const double m13 = dot(inst.m1, inst.m3);
    const double m23 = dot(inst.m2, inst.m3);
    const double r1 = d.d1 * d.d1 - 2.0 * d.d1 * d.d2 * m12 + d.d2 * d.d2 - s12;
    const double r2 = d.d1 * d.d1 - 2.0 * d.d1 * d.d3 * m13 + d.d3 * d.d3 - s13;
    const double r3 = d.d2 * d.d2 - 2.0 * d.d2 * d.d3 * m23 + d.d3 * d.d3 - s23;
    return r1 * r1 + r2 * r2 + r3 * r3;
}

double best_gt_error(const SolverOutput &out, const GroundTruthInstance &g) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < out.count; ++i) {
        double e = 0.0;
        for (int k = 0; k < 9; ++k) {
            e += std::abs(out.solutions[i].pose.R.m[k] - g.R_gt.m[k]);
        }
        e += std::abs(out.solutions[i].pose.t.x - g.t_gt.x) +
             std::abs(out.solutions[i].pose.t.y - g.t_gt.y) +
             std::abs(out.solutions[i].pose.t.z - g.t_gt.z);
        best = std::min(best, e);
    }
    return best;
}

} // namespace

TEST_CASE("recover_depths: direct radicand") {
    P3PInstance inst;
    inst.X2 = Vec3{1, 0, 0};
    inst.X3 = Vec3{0, 1, 0};
    ConicInvariants inv;
    inv.m23 = 0.0;
    DepthTriple d;
    REQUIRE(recover_depths(2.0, 1.0, inst, inv, &d));
    CHECK(d.d3 == doctest::Approx(1.0));
    CHECK(d.d1 == doctest::Approx(2.0));
    CHECK(d.d2 == doctest::Approx(1.0));

    // y m2 = m3 exactly: radicand collapses
    inv.m23 = 1.0;
    CHECK_FALSE(recover_depths(2.0, 1.0, inst, inv, &d));
}

TEST_CASE("recover_depths: ground-truth ratios reproduce the depths") {
    for (uint64_t i = 0; i < 2000; ++i) {
        const GroundTruthInstance g = gen_instance(7, i);
        const auto inv = compute_invariants(g.inst);
        REQUIRE(inv.has_value());
        const double x = g.depths_gt.d1 / g.depths_gt.d3;
        const double y = g.depths_gt.d2 / g.depths_gt.d3;
        DepthTriple d;
        REQUIRE(recover_depths(x, y, g.inst, *inv, &d));
        CHECK(d.d1 == doctest::Approx(g.depths_gt.d1).epsilon(1e-9));
        CHECK(d.d2 == doctest::Approx(g.depths_gt.d2).epsilon(1e-9));
        CHECK(d.d3 == doctest::Approx(g.depths_gt.d3).epsilon(1e-9));
    }
}

TEST_CASE("refine_depths: exact input is a fixed point") {
    const GroundTruthInstance g = gen_instance(21, 0);
    const DepthTriple out = refine_depths(g.depths_gt, g.inst);
    CHECK(out.d1 == doctest::Approx(g.depths_gt.d1).epsilon(1e-12));
    CHECK(out.d2 == doctest::Approx(g.depths_gt.d2).epsilon(1e-12));
    CHECK(out.d3 == doctest::Approx(g.depths_gt.d3).epsilon(1e-12));
}

TEST_CASE("refine_depths: contraction near the solution and monotonicity") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> perturb(-1e-4, 1e-4);
    int improved = 0;
    for (uint64_t i = 0; i < 10000; ++i) {
        const GroundTruthInstance g = gen_instance(23, i);
        DepthTriple d = g.depths_gt;
        d.d1 *= 1.0 + perturb(gen);
        d.d2 *= 1.0 + perturb(gen);
        d.d3 *= 1.0 + perturb(gen);
        const double before = depth_residual_sq(d, g.inst);
        const DepthTriple out = refine_depths(d, g.inst);
        const double after = depth_residual_sq(out, g.inst);
        CHECK(after <= before); // never worse
        if (after <= 1e-2 * before) {
            ++improved;
        }
    }
    // quadratic local convergence: contraction by 100x virtually always
    CHECK(improved > 9990);
}

TEST_CASE("recover_pose: identity configuration") {
    P3PInstance inst = make_instance(Vec3{1, 0, 4}, Vec3{0, 1, 5}, Vec3{-1, -1, 6},
                                     Vec3{1, 0, 4}, Vec3{0, 1, 5}, Vec3{-1, -1, 6});
    const DepthTriple d{norm(Vec3{1, 0, 4}), norm(Vec3{0, 1, 5}), norm(Vec3{-1, -1, 6})};
    Pose pose;
    REQUIRE(recover_pose(d, inst, &pose));
    const Mat3 E = pose.R - Mat3::identity();
    for (double v : E.m) {
        CHECK(std::abs(v) <= 1e-12);
    }
    CHECK(std::abs(pose.t.x) <= 1e-12);
    CHECK(std::abs(pose.t.y) <= 1e-12);
    CHECK(std::abs(pose.t.z) <= 1e-12);
}

TEST_CASE("recover_pose: true depths reproduce the ground-truth pose") {
    for (uint64_t i = 0; i < 2000; ++i) {
        const GroundTruthInstance g = gen_instance(31, i);
        Pose pose;
        REQUIRE(recover_pose(g.depths_gt, g.inst, &pose));
        double err_r = 0.0;
        for (int k = 0; k < 9; ++k) {
            err_r += std::abs(pose.R.m[k] - g.R_gt.m[k]);
        }
        const double err_t = std::abs(pose.t.x - g.t_gt.x) + std::abs(pose.t.y - g.t_gt.y) +
                             std::abs(pose.t.z - g.t_gt.z);
        CHECK(err_r <= 1e-9);
        CHECK(err_t <= 1e-9);

        // reprojection through the recovered pose matches the bearings
        const PoseValidity v = check_pose_validity(pose, g.inst);
        CHECK(v.reproj_err <= 1e-6);
    }
}

TEST_CASE("recover_pose: collinear world points rejected") {
    const P3PInstance inst = make_instance(Vec3{0, 0, 1}, Vec3{0, 0, 2}, Vec3{0, 0, 3},
                                           Vec3{0.1, 0, 1}, Vec3{0.2, 0, 1}, Vec3{0.3, 0, 1});
    Pose pose;
    CHECK_FALSE(recover_pose(DepthTriple{1, 2, 3}, inst, &pose));
}

TEST_CASE("intersect_conics: contains the ground-truth ratio point") {
    for (uint64_t i = 0; i < 5000; ++i) {
        const GroundTruthInstance g = gen_instance(47, i);
        const auto inv = compute_invariants(g.inst);
        REQUIRE(inv.has_value());
        const IntersectionSet pts = intersect_conics(build_conics(*inv));
        const double x_gt = g.depths_gt.d1 / g.depths_gt.d3;
        const double y_gt = g.depths_gt.d2 / g.depths_gt.d3;
        bool found = false;
        for (int k = 0; k < pts.count; ++k) {
            if (std::abs(pts.x[k] - x_gt) < 1e-6 * (1.0 + x_gt) &&
                std::abs(pts.y[k] - y_gt) < 1e-6 * (1.0 + y_gt)) {
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("intersect_conics: all reported points satisfy both conics") {
    for (uint64_t i = 0; i < 5000; ++i) {
        const GroundTruthInstance g = gen_instance(53, i);
        const auto inv = compute_invariants(g.inst);
        REQUIRE(inv.has_value());
        const IntersectionSet pts = intersect_conics(build_conics(*inv));
        for (int k = 0; k < pts.count; ++k) {
            CHECK(pts.x[k] > 0.0);
            CHECK(pts.y[k] > 0.0);
            double s1;
            double s2;
            CHECK(std::abs(conic1_value(*inv, pts.x[k], pts.y[k], &s1)) <= 1e-8 * s1);
            CHECK(std::abs(conic2_value(*inv, pts.x[k], pts.y[k], &s2)) <= 1e-8 * s2);
        }
    }
}

TEST_CASE("solve_p3p: recovers ground truth on noise-free instances") {
    int hits = 0;
    const int n = 20000;
    for (uint64_t i = 0; i < n; ++i) {
        const GroundTruthInstance g = gen_instance(61, i);
        const SolverOutput out = solve_p3p(g.inst);
        CHECK(out.count <= 4);
        if (best_gt_error(out, g) < 1e-6) {
            ++hits;
        }
    }
    CHECK(hits >= n - 2); // at the paper's reported miss rate this is generous
}

TEST_CASE("solve_p3p: emitted poses are sound") {
    for (uint64_t i = 0; i < 5000; ++i) {
        const GroundTruthInstance g = gen_instance(71, i);
        const SolverOutput out = solve_p3p(g.inst);
        for (int k = 0; k < out.count; ++k) {
            const PoseSolution &s = out.solutions[k];
            CHECK(s.depths.d1 > 0.0);
            CHECK(s.depths.d2 > 0.0);
            CHECK(s.depths.d3 > 0.0);
            const PoseValidity v = check_pose_validity(s.pose, g.inst);
            CHECK(v.all());
            CHECK(std::abs(det(s.pose.R) - 1.0) < 1e-6);
            // no two emitted solutions closer than the duplicate threshold
            for (int j = k + 1; j < out.count; ++j) {
                CHECK(pose_distance_l1(s.pose, out.solutions[j].pose) >= 1e-5);
            }
        }
    }
}

TEST_CASE("solve_p3p: collinear world points give a singular-geometry diagnostic") {
    const P3PInstance inst = make_instance(Vec3{0, 0, 1}, Vec3{0, 0, 2}, Vec3{0, 0, 3},
                                           Vec3{0.1, 0.2, 1}, Vec3{-0.2, 0.1, 1},
                                           Vec3{0.3, -0.1, 1});
    const SolverOutput out = solve_p3p(inst);
    CHECK(out.count == 0);
    CHECK(out.diagnostic == Diagnostic::kSingularGeometry);
}

TEST_CASE("solve_p3p: coincident world points give a degenerate-instance diagnostic") {
    const Vec3 X{1, 2, 3};
    const P3PInstance inst =
        make_instance(Vec3{0, 0, 1}, X, X, Vec3{0.1, 0.2, 1}, Vec3{-0.2, 0.1, 1},
                      Vec3{0.3, -0.1, 1});
    const SolverOutput out = solve_p3p(inst);
    CHECK(out.count == 0);
    CHECK(out.diagnostic == Diagnostic::kDegenerateInstance);
}

TEST_CASE("solve_p3p: bitwise deterministic") {
    for (uint64_t i = 0; i < 200; ++i) {
        const GroundTruthInstance g = gen_instance(83, i);
        const SolverOutput a = solve_p3p(g.inst);
        const SolverOutput b = solve_p3p(g.inst);
        REQUIRE(a.count == b.count);
        CHECK(a.diagnostic == b.diagnostic);
        for (int k = 0; k < a.count; ++k) {
            CHECK(std::memcmp(&a.solutions[k].pose.R.m, &b.solutions[k].pose.R.m,
                              sizeof(a.solutions[k].pose.R.m)) == 0);
        }
    }
}

TEST_CASE("intersect_conics agrees with the elimination oracle") {
    int compared = 0;
    for (uint64_t i = 0; i < 2000; ++i) {
        const GroundTruthInstance g = gen_instance(97, i);
        const auto inv = compute_invariants(g.inst);
        REQUIRE(inv.has_value());
        const ConicPair pair = build_conics(*inv);
        const IntersectionSet fast = intersect_conics(pair);
        const auto oracle_pts = oracle::eliminate_intersect(pair);
        if (oracle_pts.inconclusive ||
            (fast.count == 0 && fast.diagnostic != Diagnostic::kNoPositiveIntersection)) {
            continue;
        }
        std::vector<std::pair<double, double>> expect;
        for (const auto &p : oracle_pts.points) {
            if (p.first > 0.0 && p.second > 0.0) {
                expect.push_back(p);
            }
        }
        REQUIRE(fast.count == static_cast<int>(expect.size()));
        std::sort(expect.begin(), expect.end());
        std::vector<std::pair<double, double>> got;
        for (int k = 0; k < fast.count; ++k) {
            got.emplace_back(fast.x[k], fast.y[k]);
        }
        std::sort(got.begin(), got.end());
        for (size_t k = 0; k < got.size(); ++k) {
            CHECK(std::abs(got[k].first - expect[k].first) <= 1e-7 * (1.0 + std::abs(expect[k].first)));
            CHECK(std::abs(got[k].second - expect[k].second) <=
                  1e-7 * (1.0 + std::abs(expect[k].second)));
        }
        ++compared;
    }
    CHECK(compared > 1990);
}
