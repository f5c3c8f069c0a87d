#ifndef FOLDATLAS_BIFURCATION_HPP
#define FOLDATLAS_BIFURCATION_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <foldatlas/folding.hpp>

namespace foldatlas {

enum class FamilyId { S2std, B2std, Custom };

// Two-parameter unfolding (x, y, s, t) |-> (x, y^2, g(x, y; s, t)).
// The standard families are the versal unfoldings
//   S2std: g = y^3 - x^3 y + s y + t x y
//   B2std: g = y^5 - x^2 y + s y + t y^3
struct UnfoldingFamily {
    FamilyId id;
    Jet g; // 4 variables (x, y, s, t)

    static UnfoldingFamily s2_standard();
    static UnfoldingFamily b2_standard();
    static UnfoldingFamily custom(Jet g4);

    // g with (s,t) substituted, as a polynomial in (x, y)
    Jet at_parameters(const Rational& s, const Rational& t) const;
    double eval(double x, double y, double s, double t) const;
};

struct SingularPoint {
    double x; // singular points of the fold sit on y = 0
    int multiplicity;
};

// Real roots of g_y(x, 0) at fixed (s, t): the singular points of the
// unfolded fold map. Multiplicity by |p'| at the root (float path).
std::vector<SingularPoint> singular_points(const UnfoldingFamily& fam, double s, double t);

// Exact variant: multiplicities via gcd(p, p') over Q.
std::vector<SingularPoint> singular_points(const UnfoldingFamily& fam, const Rational& s,
                                           const Rational& t);

enum class BifBranch { MonoGerm, BiGerm };

struct BifSample {
    double a, s, t;
    std::vector<std::pair<double, double>> source_points;
};

struct BifurcationCurve {
    BifBranch branch;
    std::vector<BifSample> samples;
    bool has_closed_form = false;
    std::string closed_form; // human-readable parametrization
    std::function<std::pair<double, double>(double)> parametrization; // a -> (s, t)
};

struct ARange {
    double a_min, a_max;
};

// Degenerate-singular-point locus: eliminates x from g_y(x,0) = g_xy(x,0) = 0.
BifurcationCurve mono_germ_locus(const UnfoldingFamily& fam, ARange range, int n_samples);

// Self-tangency locus: g = g_x = g_y = 0 with y != 0.
BifurcationCurve bi_germ_locus(const UnfoldingFamily& fam, ARange range, int n_samples);

struct Region {
    double x_min, x_max, y_min, y_max;
    int seeds_x = 21, seeds_y = 21;
};

struct SelfTangencyResult {
    // pairs ((x, y), (x, -y)), y > 0
    std::vector<std::pair<std::pair<double, double>, std::pair<double, double>>> pairs;
    bool mirror_symmetric = false; // f even in y: the equations degenerate
};

// Numeric search for self-tangency points of the folding map of f: zeros
// of (d f_o/dx, d f_o/dy) by Newton iteration from a seed grid, accepted
// only when |f_o| < tol as well.
SelfTangencyResult self_tangency_search(const SurfaceFn& f, const Region& region,
                                        double tol = 1e-9);

// Writes <prefix>.csv (branch,a,s,t,x0,y0) and <prefix>.svg (mono-germ
// solid, bi-germ dashed).
void trace_and_render(const UnfoldingFamily& fam, ARange range, int n_samples,
                      const std::string& out_prefix);

std::string render_bifurcation_svg(const std::vector<BifurcationCurve>& curves);

// Real roots of a univariate polynomial (coefficients low-to-high degree),
// by recursive isolation on monotone intervals.
std::vector<double> real_roots(const std::vector<double>& coeffs, double lo, double hi,
                               double tol = 1e-12);

} // namespace foldatlas

#endif
