#include "p3p/synthetic.hpp"

#include <cmath>
#include <stdexcept>

namespace p3p {

namespace {

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ull;

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

Mat3 quaternion_to_rotation(double w, double x, double y, double z) {
    return Mat3{{1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y),
                 2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x),
                 2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)}};
}

} // namespace

CounterRng::CounterRng(uint64_t seed, uint64_t index) : state_(mix64(seed + kGolden) + index) {}

uint64_t CounterRng::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double CounterRng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

double CounterRng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    const double u1 = 1.0 - uniform01(); // (0, 1]
    const double u2 = uniform01();
    const double two_pi = 6.283185307179586476925286766559;
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_normal_ = r * std::sin(two_pi * u2);
    has_cached_ = true;
    return r * std::cos(two_pi * u2);
}

bool is_degenerate(const P3PInstance &inst) {
    // bearings must project to finite image points
    if (std::abs(inst.m1.z) < 1e-12 || std::abs(inst.m2.z) < 1e-12 ||
        std::abs(inst.m3.z) < 1e-12) {
        return true;
    }
    const double u1 = inst.m1.x / inst.m1.z, v1 = inst.m1.y / inst.m1.z;
    const double u2 = inst.m2.x / inst.m2.z, v2 = inst.m2.y / inst.m2.z;
    const double u3 = inst.m3.x / inst.m3.z, v3 = inst.m3.y / inst.m3.z;
    const double area = 0.5 * std::abs((u2 - u1) * (v3 - v1) - (u3 - u1) * (v2 - v1));
    if (area < 1e-10) {
        return true;
    }
    const Vec3 nx = cross(inst.X1 - inst.X2, inst.X1 - inst.X3);
    const double dmax = std::max(squared_norm(inst.X1 - inst.X2),
                                 std::max(squared_norm(inst.X1 - inst.X3),
                                          squared_norm(inst.X2 - inst.X3)));
    return norm(nx) < 1e-10 * dmax;
}

GroundTruthInstance gen_instance(uint64_t seed, uint64_t index) {
    CounterRng rng(seed, index);

    for (int attempt = 0; attempt < 100; ++attempt) {
        double qw, qx, qy, qz, qn;
        do {
            qw = rng.normal();
            qx = rng.normal();
            qy = rng.normal();
            qz = rng.normal();
            qn = std::sqrt(qw * qw + qx * qx + qy * qy + qz * qz);
        } while (qn < 1e-6);
        const Mat3 R = quaternion_to_rotation(qw / qn, qx / qn, qy / qn, qz / qn);
        const Vec3 t{rng.normal(), rng.normal(), rng.normal()};

        Vec3 m[3];
        for (auto &mi : m) {
            const double u = rng.uniform(-1.0, 1.0);
            const double v = rng.uniform(-1.0, 1.0);
            mi = *normalize(Vec3{u, v, 1.0});
        }
        DepthTriple d;
        d.d1 = rng.uniform(0.1, 10.0);
        d.d2 = rng.uniform(0.1, 10.0);
        d.d3 = rng.uniform(0.1, 10.0);

        const Mat3 Rt = R.transpose();
        GroundTruthInstance g;
        g.inst.X1 = Rt * (d.d1 * m[0] - t);
        g.inst.X2 = Rt * (d.d2 * m[1] - t);
        g.inst.X3 = Rt * (d.d3 * m[2] - t);
        g.inst.m1 = m[0];
        g.inst.m2 = m[1];
        g.inst.m3 = m[2];
        g.R_gt = R;
        g.t_gt = t;
        g.depths_gt = d;
        g.seed = seed;
        g.index = index;
        if (!is_degenerate(g.inst)) {
            return g;
        }
    }
    throw std::runtime_error("gen_instance: 100 consecutive degenerate draws");
}

} // namespace p3p
