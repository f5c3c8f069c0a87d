#include <foldatlas/folding.hpp>

#include <cmath>

namespace foldatlas {

FoldingMap build_folding_map(const SurfaceGerm& s) {
    int ord = s.order();
    Jet x = Jet::variable(2, ord, 0);
    Jet y = Jet::variable(2, ord, 1);
    return {{x, y * y, s.jet()}, ord};
}

std::string to_string(SingTag t) {
    switch (t) {
        case SingTag::S0: return "S0";
        case SingTag::S1: return "S1";
        case SingTag::S2: return "S2";
        case SingTag::B2: return "B2";
        case SingTag::BeyondCodim2: return "BeyondCodim2";
    }
    return "?";
}

SingularityClass classify(const SurfaceGerm& s) {
    if (s.order() < 5)
        throw insufficient_jet_error("classify: jet order must be >= 5");
    Rational a11 = s.a(1, 1), a21 = s.a(2, 1), a03 = s.a(0, 3);
    Rational a31 = s.a(3, 1), a13 = s.a(1, 3), a05 = s.a(0, 5);

    if (a11 != 0)
        return {SingTag::S0, {{"a11", a11, "!= 0"}}};
    if (a21 != 0 && a03 != 0)
        return {SingTag::S1,
                {{"a11", a11, "= 0"}, {"a21", a21, "!= 0"}, {"a03", a03, "!= 0"}}};
    if (a21 == 0 && a03 != 0 && a31 != 0)
        return {SingTag::S2,
                {{"a11", a11, "= 0"},
                 {"a21", a21, "= 0"},
                 {"a03", a03, "!= 0"},
                 {"a31", a31, "!= 0"}}};
    Rational b2_disc = 3 * a21 * a05 - 5 * a13 * a13;
    if (a21 != 0 && a03 == 0 && b2_disc != 0)
        return {SingTag::B2,
                {{"a11", a11, "= 0"},
                 {"a21", a21, "!= 0"},
                 {"a03", a03, "= 0"},
                 {"3*a21*a05 - 5*a13^2", b2_disc, "!= 0"}}};

    SingularityClass c{SingTag::BeyondCodim2, {}};
    c.witnesses.push_back({"a11", a11, "= 0"});
    c.witnesses.push_back({"a21", a21, a21 == 0 ? "= 0" : "!= 0"});
    c.witnesses.push_back({"a03", a03, a03 == 0 ? "= 0" : "!= 0"});
    c.witnesses.push_back({"a31", a31, a31 == 0 ? "= 0" : "!= 0"});
    c.witnesses.push_back({"3*a21*a05 - 5*a13^2", b2_disc, b2_disc == 0 ? "= 0" : "!= 0"});
    return c;
}

GeometricReport geometric_report(const SurfaceGerm& s, const SingularityClass& c) {
    if (c.tag != SingTag::S1 && c.tag != SingTag::S2 && c.tag != SingTag::B2)
        throw unsupported_class_error("geometric_report: class must be S1, S2 or B2");

    GeometricReport r{};
    r.tag = c.tag;
    r.umbilic = s.is_umbilic();

    if (!r.umbilic) {
        RidgeFlags flags = ridge_subparabolic_flags(s);
        r.v2_ridge = flags.v2_ridge;
        r.v2_subparabolic = flags.v2_subparabolic;
        bool consistent = false;
        switch (c.tag) {
            case SingTag::S1:
                consistent = !flags.v2_ridge && !flags.v2_subparabolic;
                r.description = "y is a principal direction; origin is not v2-ridge "
                                "and not v2-subparabolic";
                break;
            case SingTag::S2:
                consistent = !flags.v2_ridge && flags.v2_subparabolic;
                r.description = "y is a principal direction; origin is v2-subparabolic "
                                "and not v2-ridge";
                break;
            case SingTag::B2:
                consistent = flags.v2_ridge && !flags.v2_subparabolic;
                r.description = "y is a principal direction; origin is v2-ridge "
                                "and not v2-subparabolic";
                break;
            default: break;
        }
        if (!consistent)
            throw internal_invariant_error(
                "geometric_report: class witnesses disagree with ridge flags");
    } else {
        r.has_umbilic_report = true;
        r.umbilic_report = umbilic_classify(umbilic_cubic(s));
        switch (c.tag) {
            case SingTag::S1:
                r.description = "umbilic; no v-ridge or v-subparabolic line reaches the origin";
                break;
            case SingTag::S2:
                r.description = "umbilic; a v-subparabolic line reaches the origin, "
                                "no v-ridge line does";
                break;
            case SingTag::B2:
                r.description = "umbilic; a v-ridge line reaches the origin, "
                                "no v-subparabolic line does";
                break;
            default: break;
        }
    }
    return r;
}

std::array<std::array<double, 3>, 3> rotation_frame(const FoldDirection& v) {
    double q = 1 - v.v3 * v.v3;
    if (q <= 0)
        throw degenerate_direction_error("rotation frame undefined at v3^2 >= 1");
    double w = std::sqrt(q);
    return {{{v.v2 / w, -v.v1 / w, 0.0},
             {v.v1, v.v2, v.v3},
             {-v.v1 * v.v3 / w, -v.v2 * v.v3 / w, w}}};
}

std::array<double, 3> rotation_unfolding_frame_coords(const SurfaceFn& f, double x, double y,
                                                      const FoldDirection& v) {
    double q = 1 - v.v3 * v.v3;
    if (q <= 0)
        throw degenerate_direction_error("rotation_unfolding_frame_coords: v3^2 >= 1");
    double w = std::sqrt(q);
    double fxy = f(x, y);
    double s = (v.v2 * x - v.v1 * y) / w;
    double t = v.v1 * x + v.v2 * y + v.v3 * fxy;
    double r = (-v.v1 * v.v3 * x - v.v2 * v.v3 * y + q * fxy) / w;
    return {s, t * t, r};
}

std::array<double, 3> rotation_unfolding_eval(const SurfaceFn& f, double x, double y,
                                              const FoldDirection& v) {
    double q = 1 - v.v3 * v.v3;
    if (q <= 0)
        throw degenerate_direction_error("rotation_unfolding_eval: v3^2 >= 1");
    double w = std::sqrt(q);
    double fxy = f(x, y);
    double s = (v.v2 * x - v.v1 * y) / w;
    double t = v.v1 * x + v.v2 * y + v.v3 * fxy;
    double r = (-v.v1 * v.v3 * x - v.v2 * v.v3 * y + q * fxy) / w;
    auto frame = rotation_frame(v);
    std::array<double, 3> out{};
    for (int k = 0; k < 3; ++k)
        out[k] = s * frame[0][k] + t * t * frame[1][k] + r * frame[2][k];
    return out;
}

std::array<std::array<Jet, 3>, 2> vr_generators(const SurfaceGerm& s) {
    int ord = s.order();
    Jet x = Jet::variable(2, ord, 0);
    Jet y = Jet::variable(2, ord, 1);
    Jet zero = Jet::zero(2, ord);
    std::array<Jet, 3> g1{-y, (x * y).scaled(2), zero};
    std::array<Jet, 3> g2{zero, (y * s.jet()).scaled(2), -y};
    return {g1, g2};
}

double vr_finite_difference_check(const SurfaceGerm& s, double h,
                                  const std::vector<std::pair<double, double>>& sample_points) {
    SurfaceFn f = surface_fn(s);
    auto gens = vr_generators(s);

    // chart (v1, v3) |-> (v1, sqrt(1 - v1^2 - v3^2), v3) around e2; the
    // generators are derivatives of the frame-coordinate form (s, t^2, r)
    auto eval_chart = [&](double v1, double v3, double x, double y) {
        FoldDirection v{v1, std::sqrt(1 - v1 * v1 - v3 * v3), v3};
        return rotation_unfolding_frame_coords(f, x, y, v);
    };

    double max_rel = 0.0;
    for (auto [x, y] : sample_points) {
        std::vector<double> p{x, y};
        for (int param = 0; param < 2; ++param) {
            std::array<double, 3> plus =
                param == 0 ? eval_chart(h, 0, x, y) : eval_chart(0, h, x, y);
            std::array<double, 3> minus =
                param == 0 ? eval_chart(-h, 0, x, y) : eval_chart(0, -h, x, y);
            double num = 0, den = 0;
            for (int k = 0; k < 3; ++k) {
                double fd = (plus[k] - minus[k]) / (2 * h);
                double exact = gens[param][k].evaluate(p);
                num = std::max(num, std::abs(fd - exact));
                den = std::max(den, std::abs(exact));
            }
            double rel = num / std::max(den, 1.0);
            max_rel = std::max(max_rel, rel);
        }
    }
    return max_rel;
}

} // namespace foldatlas
