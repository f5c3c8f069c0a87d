#ifndef FOLDATLAS_FOLDING_HPP
#define FOLDATLAS_FOLDING_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <foldatlas/surface.hpp>

namespace foldatlas {

// The folding map F(x,y) = (x, y^2, f(x,y)) as a triple of exact jets.
struct FoldingMap {
    std::array<Jet, 3> components;
    int source_order;
};

FoldingMap build_folding_map(const SurfaceGerm& s);

enum class SingTag { S0, S1, S2, B2, BeyondCodim2 };

std::string to_string(SingTag t);

struct Witness {
    std::string coefficient;
    Rational value;
    std::string relation;
};

struct SingularityClass {
    SingTag tag;
    std::vector<Witness> witnesses;
};

// Codimension <= 2 recognition from the jet coefficients; rows tried in
// the order S0, S1, S2, B2. Requires order >= 5.
SingularityClass classify(const SurfaceGerm& s);

struct GeometricReport {
    SingTag tag;
    bool umbilic;
    // non-umbilic branch
    bool v2_ridge = false;
    bool v2_subparabolic = false;
    // umbilic branch
    bool has_umbilic_report = false;
    UmbilicReport umbilic_report{};
    std::string description;
};

// Restates an S1/S2/B2 class in ridge/subparabolic (or umbilic) terms and
// asserts consistency between the class witnesses and the geometry flags.
GeometricReport geometric_report(const SurfaceGerm& s, const SingularityClass& c);

struct FoldDirection {
    double v1, v2, v3;
};

using SurfaceFn = std::function<double(double, double)>;

inline SurfaceFn surface_fn(const SurfaceGerm& s) {
    return [s](double x, double y) { return s.eval(x, y); };
}

// One point of the rotation unfolding R(x, y; v): fold of the surface in
// the plane through the origin normal to v. Requires v3^2 < 1.
std::array<double, 3> rotation_unfolding_eval(const SurfaceFn& f, double x, double y,
                                              const FoldDirection& v);

// Orthonormal frame (v x nu / |.|, v, (v x nu) x v / |.|) with nu = e3.
std::array<std::array<double, 3>, 3> rotation_frame(const FoldDirection& v);

// R expressed in the v-adapted frame: (s, t^2, r). Differs from the
// ambient value by the (v-dependent) frame rotation; this is the form
// whose parameter derivatives generate V_R.
std::array<double, 3> rotation_unfolding_frame_coords(const SurfaceFn& f, double x, double y,
                                                      const FoldDirection& v);

// The two generators of V_R: d R / d v1 and d R / d v3 at v = e2, i.e.
// (-y, 2xy, 0) and (0, 2 y f, -y).
std::array<std::array<Jet, 3>, 2> vr_generators(const SurfaceGerm& s);

// Max relative deviation between central finite differences of R in the
// (v1, v3) chart of S^2 at e2 and the exact generators.
double vr_finite_difference_check(const SurfaceGerm& s, double h,
                                  const std::vector<std::pair<double, double>>& sample_points);

} // namespace foldatlas

#endif
