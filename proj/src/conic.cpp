#include "p3p/conic.hpp"

#include <algorithm>
#include <cmath>

namespace p3p {

P3PInstance make_instance(const Vec3 &X1, const Vec3 &X2, const Vec3 &X3,
                          const Vec3 &m1, const Vec3 &m2, const Vec3 &m3) {
    P3PInstance inst;
    inst.X1 = X1;
    inst.X2 = X2;
    inst.X3 = X3;
    inst.m1 = normalize(m1).value_or(Vec3{});
    inst.m2 = normalize(m2).value_or(Vec3{});
    inst.m3 = normalize(m3).value_or(Vec3{});
    return inst;
}

P3PInstance from_image_points(const Vec3 &X1, const Vec3 &X2, const Vec3 &X3,
                              double u1, double v1, double u2, double v2,
                              double u3, double v3) {
    return make_instance(X1, X2, X3, Vec3{u1, v1, 1.0}, Vec3{u2, v2, 1.0}, Vec3{u3, v3, 1.0});
}

std::optional<ConicInvariants> compute_invariants(const P3PInstance &inst) {
    const double d12 = squared_norm(inst.X1 - inst.X2);
    const double d13 = squared_norm(inst.X1 - inst.X3);
    const double d23 = squared_norm(inst.X2 - inst.X3);
    const double dmax = std::max(d12, std::max(d13, d23));
    if (d23 <= 1e-20 * dmax || dmax == 0.0) {
        return std::nullopt;
    }
    ConicInvariants inv;
    inv.a = d12 / d23;
    inv.b = d13 / d23;
    inv.m12 = dot(inst.m1, inst.m2);
    inv.m13 = dot(inst.m1, inst.m3);
    inv.m23 = dot(inst.m2, inst.m3);
    return inv;
}

ConicPair build_conics(const ConicInvariants &inv) {
    ConicPair pair;
    pair.inv = inv;
    const double a = inv.a;
    const double b = inv.b;
    pair.C1 = Mat3{{1.0, -inv.m12, 0.0,
                    -inv.m12, 1.0 - a, a * inv.m23,
                    0.0, a * inv.m23, -a}};
    pair.C2 = Mat3{{1.0, 0.0, -inv.m13,
                    0.0, -b, b * inv.m23,
                    -inv.m13, b * inv.m23, 1.0 - b}};
    return pair;
}

double conic1_value(const ConicInvariants &inv, double x, double y, double *scale) {
    const double t0 = x * x;
    const double t1 = -2.0 * inv.m12 * x * y;
    const double t2 = (1.0 - inv.a) * y * y;
    const double t3 = 2.0 * inv.a * inv.m23 * y;
    const double t4 = -inv.a;
    if (scale != nullptr) {
        *scale = std::abs(t0) + std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4);
    }
    return t0 + t1 + t2 + t3 + t4;
}

double conic2_value(const ConicInvariants &inv, double x, double y, double *scale) {
    const double t0 = x * x;
    const double t1 = -inv.b * y * y;
    const double t2 = -2.0 * inv.m13 * x;
    const double t3 = 2.0 * inv.b * inv.m23 * y;
    const double t4 = 1.0 - inv.b;
    if (scale != nullptr) {
        *scale = std::abs(t0) + std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4);
    }
    return t0 + t1 + t2 + t3 + t4;
}

} // namespace p3p
