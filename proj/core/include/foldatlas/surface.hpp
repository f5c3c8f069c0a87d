#ifndef FOLDATLAS_SURFACE_HPP
#define FOLDATLAS_SURFACE_HPP

#include <optional>
#include <vector>

#include <foldatlas/jet.hpp>

namespace foldatlas {

// Surface germ z = f(x,y) in Monge form, carried as an exact 2-variable jet.
// Coefficients are exposed in the normalization
//   f = (1/2)(k1 x^2 + k2 y^2) + sum (1/(i! j!)) a_ij x^i y^j,
// i.e. a(i,j) = i! j! * (coefficient of x^i y^j), k1 = a(2,0), k2 = a(0,2).
class SurfaceGerm {
public:
    explicit SurfaceGerm(Jet f);

    const Jet& jet() const { return jet_; }
    int order() const { return jet_.order(); }

    Rational a(int i, int j) const;
    Rational k1() const { return a(2, 0); }
    Rational k2() const { return a(0, 2); }
    Rational a11() const { return a(1, 1); }

    // k1 == k2 in the a11 = 0 frame (exact test).
    bool is_umbilic() const { return a11() == 0 && k1() == k2(); }

    // The jet re-declared at a (possibly higher) order; valid because a
    // germ loaded from coefficients is an exact polynomial.
    Jet jet_at(int order) const { return jet_.extended(order); }

    double eval(double x, double y) const { return jet_.evaluate(std::vector<double>{x, y}); }

private:
    Jet jet_;
};

// f composed with the rotation (x,y) -> (c x - sn y, sn x + c y).
// Requires c^2 + sn^2 = 1 exactly.
SurfaceGerm rotate_source(const SurfaceGerm& s, const Rational& c, const Rational& sn);

struct CurvatureData {
    Rational k1, k2, a11;
};
CurvatureData curvature_data(const SurfaceGerm& s);

struct RidgeFlags {
    bool v2_ridge;        // a03 = 0
    bool v2_subparabolic; // a21 = 0
};
// Requires a11 = 0 and k1 != k2 (principal frame aligned with the axes).
RidgeFlags ridge_subparabolic_flags(const SurfaceGerm& s);

// First-order expansion h(u,v) = c0 + cu*u + cv*v.
struct AffineForm {
    Rational c0, cu, cv;
};
struct RidgeFieldExpansion {
    AffineForm v2k2; // directional derivative of kappa_2 along v2
    AffineForm v2k1; // directional derivative of kappa_1 along v2
};
RidgeFieldExpansion ridge_field_expansion(const SurfaceGerm& s);

// ---- numeric principal-direction field (float oracle) -----------------

struct GridSpec {
    double u_min, u_max, v_min, v_max;
    int nu, nv;
    double umbilic_tol = 1e-9; // |k1-k2| below this masks the cell
};

struct PrincipalSample {
    double u, v;
    bool umbilic_masked;
    double kappa1, kappa2;
    double v1x, v1y; // unit principal direction of kappa1 (chart coordinates)
    double v2x, v2y;
};

std::vector<PrincipalSample> numeric_principal_fields(const SurfaceGerm& s, const GridSpec& grid);

// Curvatures/directions at a single point; umbilic_masked set when the
// shape operator is numerically umbilic.
PrincipalSample principal_sample_at(const SurfaceGerm& s, double u, double v, double umbilic_tol = 1e-9);

// Finite-difference directional derivative of kappa_2 along v2 at (u,v),
// normalized by the ambient length of the displacement.
double numeric_v2_kappa2(const SurfaceGerm& s, double u, double v, double h = 1e-6);

// ---- umbilic classification --------------------------------------------

// Cubic part of an umbilic germ in complex form: c(z) = (1/6) Re(alpha z^3
// + 3 beta z^2 conj(z)).
struct UmbilicCubic {
    GaussianRational alpha, beta;
};

// Requires k1 = k2, a11 = 0.
UmbilicCubic umbilic_cubic(const SurfaceGerm& s);

// Cubic coefficients (a30, a21, a12, a03) of the germ determined by
// (alpha, beta); inverse of umbilic_cubic on the cubic part.
std::array<Rational, 4> umbilic_cubic_coefficients(const UmbilicCubic& c);

struct UmbilicReport {
    bool no_orthogonal_roots;       // (i)   3|beta| != |alpha|
    bool d4_type;                   // (ii)  3 beta off the deltoid curve
    bool star_monster_lemon;        // (iii) |beta| != |alpha|
    bool limiting_directions_ok;    // (iv)  beta off the curve as printed
    bool not_ridge_subparabolic;    // (v)   arg(alpha) != arg(beta)
    double d4_margin;               // min distance of 3 beta to the deltoid
    bool degenerate_alpha;          // alpha = 0: curve conditions collapse
};

UmbilicReport umbilic_classify(const UmbilicCubic& c, int theta_samples = 4096, double tol = 1e-9);

// Closed-form bracket B = |a|^4 - 3|b|^4 - 6|a|^2|b|^2 + 4(a conj(b)^3 +
// conj(a) b^3); the full resultant of (a12, a03) is (i/6^6) |a|^2 B.
Rational resultant_bracket(const UmbilicCubic& c);

// Same quantity from the 6x6 Sylvester determinant of the two cubic forms;
// returns |a|^2 B exactly (the determinant itself, which is real).
Rational resultant_oracle(const UmbilicCubic& c);

} // namespace foldatlas

#endif
