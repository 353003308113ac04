#ifndef P3P_CONIC_HPP
#define P3P_CONIC_HPP

#include <optional>

#include "p3p/geom.hpp"

// Reduction of a P3P instance to the two-conic form in the depth ratios
// x = d1/d3, y = d2/d3. Both conic equations are quadratics in (x, y):
//
//   x^2 - 2 m12 x y + (1-a) y^2 + 2 a m23 y - a       = 0
//   x^2 - b y^2 - 2 m13 x + 2 b m23 y + 1 - b         = 0

namespace p3p {

// Three world points with their unit bearing vectors.
struct P3PInstance {
    Vec3 X1, X2, X3;
    Vec3 m1, m2, m3;
};

// Squared-distance ratios and bearing dot products: the five scalars that
// fully determine the conic pair.
struct ConicInvariants {
    double a = 0.0;   // |X1-X2|^2 / |X2-X3|^2
    double b = 0.0;   // |X1-X3|^2 / |X2-X3|^2
    double m12 = 0.0; // m1.m2
    double m13 = 0.0; // m1.m3
    double m23 = 0.0; // m2.m3
};

// Symmetric matrix forms of the two conics plus the generating invariants.
struct ConicPair {
    Mat3 C1;
    Mat3 C2;
    ConicInvariants inv;
};

// Builds an instance from bearings. Bearings are re-normalized on ingestion;
// callers may pass approximately-unit vectors.
P3PInstance make_instance(const Vec3 &X1, const Vec3 &X2, const Vec3 &X3,
                          const Vec3 &m1, const Vec3 &m2, const Vec3 &m3);

// Lifts normalized image coordinates (u, v) to bearings (u, v, 1)/|.|.
P3PInstance from_image_points(const Vec3 &X1, const Vec3 &X2, const Vec3 &X3,
                              double u1, double v1, double u2, double v2,
                              double u3, double v3);

// Empty when |X2-X3|^2 falls below 1e-20 * max squared pairwise distance.
std::optional<ConicInvariants> compute_invariants(const P3PInstance &inst);

ConicPair build_conics(const ConicInvariants &inv);

// Residual of each conic equation at (x, y), with `scale` receiving the sum
// of absolute term magnitudes (the natural relative-error denominator).
double conic1_value(const ConicInvariants &inv, double x, double y, double *scale = nullptr);
double conic2_value(const ConicInvariants &inv, double x, double y, double *scale = nullptr);

} // namespace p3p

#endif
