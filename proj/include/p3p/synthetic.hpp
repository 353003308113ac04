#ifndef P3P_SYNTHETIC_HPP
#define P3P_SYNTHETIC_HPP

#include <cstdint>

#include "p3p/conic.hpp"
#include "p3p/geom.hpp"
#include "p3p/solver.hpp"

// Deterministic synthetic instance generation. Each trial owns a random
// stream keyed by (seed, index), so trial i is reproducible regardless of
// how many workers run the benchmark or in which order they pick trials up.

namespace p3p {

// Counter-keyed stream: splitmix64 steps from a state derived by hashing
// the seed and offsetting by the trial index.
class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t index);

    uint64_t next_u64();
    double uniform01();                     // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
    double normal();                        // standard normal (Box-Muller)

  private:
    uint64_t state_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

struct GroundTruthInstance {
    P3PInstance inst;
    Mat3 R_gt;
    Vec3 t_gt;
    DepthTriple depths_gt;
    uint64_t seed = 0;
    uint64_t index = 0;
};

// True when the three image points or the three world points are collinear.
// Near-degenerate instances above the thresholds are deliberately retained.
bool is_degenerate(const P3PInstance &inst);

// Rotation from an isotropic Gaussian quaternion, standard-normal
// translation, image coordinates uniform in [-1,1]^2, depths uniform in
// [0.1,10); world points are back-projected so the ground truth holds
// exactly. Degenerate draws are regenerated from the same stream (bounded;
// throws std::runtime_error if 100 attempts all degenerate).
GroundTruthInstance gen_instance(uint64_t seed, uint64_t index);

} // namespace p3p

#endif
