#include <foldatlas/bifurcation.hpp>
#include <foldatlas/io.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace foldatlas {

namespace {

constexpr int kFamilyOrder = 6;

Jet term4(int ex, int ey, int es, int et, const Rational& c) {
    return Jet::monomial(4, kFamilyOrder, Exponent{ex, ey, es, et}, c);
}

} // namespace

UnfoldingFamily UnfoldingFamily::s2_standard() {
    // g = y^3 - x^3 y + s y + t x y
    Jet g = term4(0, 3, 0, 0, 1) + term4(3, 1, 0, 0, -1) + term4(0, 1, 1, 0, 1) +
            term4(1, 1, 0, 1, 1);
    return {FamilyId::S2std, g};
}

UnfoldingFamily UnfoldingFamily::b2_standard() {
    // g = y^5 - x^2 y + s y + t y^3
    Jet g = term4(0, 5, 0, 0, 1) + term4(2, 1, 0, 0, -1) + term4(0, 1, 1, 0, 1) +
            term4(0, 3, 0, 1, 1);
    return {FamilyId::B2std, g};
}

UnfoldingFamily UnfoldingFamily::custom(Jet g4) {
    if (g4.num_vars() != 4)
        throw dimension_error("UnfoldingFamily::custom: g must have 4 variables (x,y,s,t)");
    return {FamilyId::Custom, std::move(g4)};
}

Jet UnfoldingFamily::at_parameters(const Rational& s, const Rational& t) const {
    Jet out(2, g.order());
    for (const auto& [e, c] : g.terms()) {
        Rational coef = c;
        for (int k = 0; k < e[2]; ++k) coef *= s;
        for (int k = 0; k < e[3]; ++k) coef *= t;
        Exponent e2{e[0], e[1], 0, 0};
        out.set_coefficient(e2, out.coefficient(e2) + coef);
    }
    return out;
}

double UnfoldingFamily::eval(double x, double y, double s, double t) const {
    return g.evaluate(std::vector<double>{x, y, s, t});
}

// ---- univariate real roots ----------------------------------------------

namespace {

double poly_eval(const std::vector<double>& c, double x) {
    double acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
    return d;
}

double bisect_root(const std::vector<double>& c, double lo, double hi) {
    double flo = poly_eval(c, lo);
    for (int it = 0; it < 200 && hi - lo > 1e-16 * (1 + std::abs(lo) + std::abs(hi)); ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = poly_eval(c, mid);
        if ((flo <= 0) == (fm <= 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<double> real_roots(const std::vector<double>& coeffs, double lo, double hi,
                               double tol) {
    std::vector<double> c = coeffs;
    double scale = 0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    while (!c.empty() && std::abs(c.back()) <= tol * std::max(scale, 1.0)) c.pop_back();
    if (c.size() <= 1) return {}; // constant (the identically-zero case included)
    if (c.size() == 2) {
        double r = -c[0] / c[1];
        if (r >= lo && r <= hi) return {r};
        return {};
    }

    std::vector<double> crit = real_roots(poly_derivative(c), lo, hi, tol);
    std::vector<double> knots{lo};
    for (double r : crit)
        if (r > knots.back() + 1e-14) knots.push_back(r);
    if (hi > knots.back()) knots.push_back(hi);

    std::vector<double> roots;
    double res_tol = tol * std::max(scale, 1.0);
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        double a = knots[i], b = knots[i + 1];
        double fa = poly_eval(c, a), fb = poly_eval(c, b);
        if ((fa <= 0) != (fb <= 0)) {
            roots.push_back(bisect_root(c, a, b));
        }
    }
    // tangential roots at critical points (even multiplicity)
    for (double r : crit)
        if (std::abs(poly_eval(c, r)) <= res_tol) roots.push_back(r);
    if (std::abs(poly_eval(c, lo)) <= res_tol) roots.push_back(lo);
    if (std::abs(poly_eval(c, hi)) <= res_tol) roots.push_back(hi);

    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots)
        if (out.empty() || r - out.back() > 1e-9) out.push_back(r);
    return out;
}

// ---- singular points -----------------------------------------------------

namespace {

// coefficients (low to high in x) of g_y(x, 0) at fixed (s, t)
std::vector<double> gy_on_axis(const UnfoldingFamily& fam, double s, double t) {
    Jet gy = fam.g.partial_derivative(1);
    std::vector<double> coeffs;
    for (const auto& [e, c] : gy.terms()) {
        if (e[1] != 0) continue;
        double v = rational_to_double(c) * std::pow(s, e[2]) * std::pow(t, e[3]);
        if (static_cast<size_t>(e[0]) >= coeffs.size()) coeffs.resize(e[0] + 1, 0.0);
        coeffs[e[0]] += v;
    }
    return coeffs;
}

std::vector<Rational> gy_on_axis_exact(const UnfoldingFamily& fam, const Rational& s,
                                       const Rational& t) {
    Jet gy = fam.g.partial_derivative(1);
    std::vector<Rational> coeffs;
    for (const auto& [e, c] : gy.terms()) {
        if (e[1] != 0) continue;
        Rational v = c;
        for (int k = 0; k < e[2]; ++k) v *= s;
        for (int k = 0; k < e[3]; ++k) v *= t;
        if (static_cast<size_t>(e[0]) >= coeffs.size()) coeffs.resize(e[0] + 1, Rational(0));
        coeffs[e[0]] += v;
    }
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return coeffs;
}

std::vector<Rational> poly_derivative_exact(const std::vector<Rational>& c) {
    std::vector<Rational> d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<long>(i));
    return d;
}

// monic gcd over Q by the Euclidean algorithm
std::vector<Rational> poly_gcd_exact(std::vector<Rational> a, std::vector<Rational> b) {
    auto trim = [](std::vector<Rational>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        while (a.size() >= b.size() && !a.empty()) {
            Rational q = a.back() / b.back();
            size_t shift = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
            trim(a);
            if (a.size() < b.size()) break;
        }
        std::swap(a, b);
        trim(b);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (Rational& c : a) c /= lead;
    }
    return a;
}

double cauchy_bound(const std::vector<double>& c) {
    double lead = std::abs(c.back());
    double m = 0;
    for (size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, std::abs(c[i]));
    return 1.0 + (lead > 0 ? m / lead : 0.0);
}

} // namespace

std::vector<SingularPoint> singular_points(const UnfoldingFamily& fam, double s, double t) {
    std::vector<double> p = gy_on_axis(fam, s, t);
    double scale = 0;
    for (double v : p) scale = std::max(scale, std::abs(v));
    while (!p.empty() && std::abs(p.back()) <= 1e-12 * std::max(scale, 1.0)) p.pop_back();
    if (p.size() <= 1) return {};

    double R = cauchy_bound(p);
    std::vector<double> roots = real_roots(p, -R, R);
    std::vector<SingularPoint> out;
    for (double r : roots) {
        int mult = 1;
        std::vector<double> d = p;
        while (mult < static_cast<int>(p.size()) - 1) {
            d = poly_derivative(d);
            if (std::abs(poly_eval(d, r)) > 1e-6 * std::max(scale, 1.0)) break;
            ++mult;
        }
        out.push_back({r, mult});
    }
    return out;
}

std::vector<SingularPoint> singular_points(const UnfoldingFamily& fam, const Rational& s,
                                           const Rational& t) {
    std::vector<Rational> p = gy_on_axis_exact(fam, s, t);
    if (p.size() <= 1) return {};

    std::vector<double> pd;
    for (const Rational& c : p) pd.push_back(rational_to_double(c));
    double R = cauchy_bound(pd);
    std::vector<double> roots = real_roots(pd, -R, R);

    // exact multiplicity ladder: root of gcd(p, p') has multiplicity >= 2, etc.
    std::vector<std::vector<Rational>> ladder{p};
    while (ladder.back().size() > 1) {
        std::vector<Rational> g = poly_gcd_exact(ladder.back(), poly_derivative_exact(ladder.back()));
        if (g.size() <= 1) break;
        ladder.push_back(g);
    }

    std::vector<SingularPoint> out;
    for (double r : roots) {
        int mult = 1;
        for (size_t level = 1; level < ladder.size(); ++level) {
            std::vector<double> gd;
            for (const Rational& c : ladder[level]) gd.push_back(rational_to_double(c));
            if (std::abs(poly_eval(gd, r)) <= 1e-9) mult = static_cast<int>(level) + 1;
        }
        out.push_back({r, mult});
    }
    return out;
}

// ---- bifurcation loci -----------------------------------------------------

BifurcationCurve mono_germ_locus(const UnfoldingFamily& fam, ARange range, int n_samples) {
    BifurcationCurve curve{BifBranch::MonoGerm, {}, false, "", nullptr};
    switch (fam.id) {
        case FamilyId::S2std:
            // g_y(x,0) = -x^3 + t x + s, g_xy(x,0) = -3x^2 + t
            //  => t = 3a^2, s = -2a^3 at (a, 0)
            curve.has_closed_form = true;
            curve.closed_form = "(s,t) = (-2a^3, 3a^2) at (a,0)";
            curve.parametrization = [](double a) {
                return std::make_pair(-2 * a * a * a, 3 * a * a);
            };
            break;
        case FamilyId::B2std:
            // g_y(x,0) = s - x^2, g_xy(x,0) = -2x  =>  x = 0, s = 0, t free
            curve.has_closed_form = true;
            curve.closed_form = "(s,t) = (0, a) at (0,0)";
            curve.parametrization = [](double a) { return std::make_pair(0.0, a); };
            break;
        case FamilyId::Custom: {
            // numeric fallback: scan (s,t), bisect sign changes of the
            // discriminant disc(g_y(x,0)) in s
            auto disc = [&](double s, double t) {
                std::vector<double> p = gy_on_axis(fam, s, t);
                while (!p.empty() && std::abs(p.back()) < 1e-13) p.pop_back();
                if (p.size() <= 2) return 1.0;
                // resultant(p, p') via product over roots of p'
                std::vector<double> dp = poly_derivative(p);
                double R = cauchy_bound(p) + 1;
                double prod = 1;
                for (double r : real_roots(dp, -R, R)) prod *= poly_eval(p, r);
                return prod;
            };
            for (int i = 0; i < n_samples; ++i) {
                double t = range.a_min + (range.a_max - range.a_min) *
                                             (n_samples == 1 ? 0.5 : double(i) / (n_samples - 1));
                double prev_s = range.a_min, prev_d = disc(prev_s, t);
                int sub = 64;
                for (int jj = 1; jj <= sub; ++jj) {
                    double s = range.a_min + (range.a_max - range.a_min) * jj / sub;
                    double d = disc(s, t);
                    if ((prev_d <= 0) != (d <= 0)) {
                        double lo = prev_s, hi = s;
                        for (int it = 0; it < 80; ++it) {
                            double mid = 0.5 * (lo + hi);
                            if ((disc(lo, t) <= 0) == (disc(mid, t) <= 0))
                                lo = mid;
                            else
                                hi = mid;
                        }
                        double s_star = 0.5 * (lo + hi);
                        BifSample bs{t, s_star, t, {}};
                        for (const SingularPoint& sp : singular_points(fam, s_star, t))
                            if (sp.multiplicity >= 2) bs.source_points.push_back({sp.x, 0.0});
                        curve.samples.push_back(bs);
                    }
                    prev_s = s;
                    prev_d = d;
                }
            }
            return curve;
        }
    }

    for (int i = 0; i < n_samples; ++i) {
        double a = range.a_min + (range.a_max - range.a_min) *
                                     (n_samples == 1 ? 0.5 : double(i) / (n_samples - 1));
        auto [s, t] = curve.parametrization(a);
        BifSample bs{a, s, t, {}};
        if (fam.id == FamilyId::S2std)
            bs.source_points.push_back({a, 0.0});
        else
            bs.source_points.push_back({0.0, 0.0});
        curve.samples.push_back(bs);
    }
    return curve;
}

BifurcationCurve bi_germ_locus(const UnfoldingFamily& fam, ARange range, int n_samples) {
    BifurcationCurve curve{BifBranch::BiGerm, {}, false, "", nullptr};
    switch (fam.id) {
        case FamilyId::S2std:
            // g = y (y^2 - x^3 + s + t x); off y = 0 the system
            // g = g_x = g_y = 0 forces 2 y^2 = 0: no bi-germ locus
            curve.has_closed_form = true;
            curve.closed_form = "empty";
            return curve;
        case FamilyId::B2std:
            // x = 0, t = -2 a^2, s = a^4 at (0, +-a)
            curve.has_closed_form = true;
            curve.closed_form = "(s,t) = (a^4, -2a^2) at (0,a),(0,-a)";
            curve.parametrization = [](double a) {
                return std::make_pair(a * a * a * a, -2 * a * a);
            };
            break;
        case FamilyId::Custom:
            throw input_error("bi_germ_locus: closed-form locus only for standard families");
    }

    for (int i = 0; i < n_samples; ++i) {
        double a = range.a_min + (range.a_max - range.a_min) *
                                     (n_samples == 1 ? 0.5 : double(i) / (n_samples - 1));
        auto [s, t] = curve.parametrization(a);
        BifSample bs{a, s, t, {{0.0, a}, {0.0, -a}}};
        curve.samples.push_back(bs);
    }
    return curve;
}

// ---- self-tangency search -------------------------------------------------

SelfTangencyResult self_tangency_search(const SurfaceFn& f, const Region& region, double tol) {
    auto fo = [&](double x, double y) { return 0.5 * (f(x, y) - f(x, -y)); };
    const double h = 1e-6;
    auto fo_x = [&](double x, double y) { return (fo(x + h, y) - fo(x - h, y)) / (2 * h); };
    auto fo_y = [&](double x, double y) { return (fo(x, y + h) - fo(x, y - h)) / (2 * h); };

    SelfTangencyResult result;

    // f even in y makes f_o identically zero: every point trivially solves
    // the system, so report the degeneracy instead of a point list
    double max_fo = 0;
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j) {
            double x = region.x_min + (region.x_max - region.x_min) * i / 8.0;
            double y = region.y_min + (region.y_max - region.y_min) * j / 8.0;
            max_fo = std::max(max_fo, std::abs(fo(x, y)));
        }
    if (max_fo < tol) {
        result.mirror_symmetric = true;
        return result;
    }

    double y_floor = 10 * tol;
    std::vector<std::pair<double, double>> found;
    for (int i = 0; i < region.seeds_x; ++i) {
        for (int j = 0; j < region.seeds_y; ++j) {
            double x = region.x_min +
                       (region.x_max - region.x_min) * (i + 0.5) / region.seeds_x;
            double y = region.y_min +
                       (region.y_max - region.y_min) * (j + 0.5) / region.seeds_y;
            if (std::abs(y) <= y_floor) continue;

            bool converged = false;
            for (int it = 0; it < 60; ++it) {
                double gx = fo_x(x, y), gy = fo_y(x, y);
                // Jacobian of (fo_x, fo_y) by central differences
                double j11 = (fo_x(x + h, y) - fo_x(x - h, y)) / (2 * h);
                double j12 = (fo_x(x, y + h) - fo_x(x, y - h)) / (2 * h);
                double j21 = j12;
                double j22 = (fo_y(x, y + h) - fo_y(x, y - h)) / (2 * h);
                double det = j11 * j22 - j12 * j21;
                if (std::abs(det) < 1e-14) break;
                double dx = (-gx * j22 + gy * j12) / det;
                double dy = (gx * j21 - gy * j11) / det;
                x += dx;
                y += dy;
                if (!std::isfinite(x) || !std::isfinite(y)) break;
                if (std::abs(dx) + std::abs(dy) < 1e-15) {
                    converged = true;
                    break;
                }
            }
            if (!converged) continue;
            if (std::abs(y) <= y_floor) continue;
            // overdetermined system: the third equation is the acceptance filter
            if (std::abs(fo(x, y)) >= tol) continue;
            if (std::abs(fo_x(x, y)) >= 1e-6 || std::abs(fo_y(x, y)) >= 1e-6) continue;
            if (x < region.x_min - 1e-9 || x > region.x_max + 1e-9) continue;
            if (std::abs(y) > std::max(std::abs(region.y_min), std::abs(region.y_max)) + 1e-9)
                continue;
            found.push_back({x, std::abs(y)});
        }
    }
    std::sort(found.begin(), found.end());
    for (auto [x, y] : found) {
        bool dup = false;
        for (const auto& p : result.pairs)
            if (std::abs(p.first.first - x) < 1e-7 && std::abs(p.first.second - y) < 1e-7)
                dup = true;
        if (!dup) result.pairs.push_back({{x, y}, {x, -y}});
    }
    return result;
}

// ---- rendering --------------------------------------------------------------

std::string render_bifurcation_svg(const std::vector<BifurcationCurve>& curves) {
    const int canvas = 640, margin = 60;
    double s_min = -1, s_max = 1, t_min = -1, t_max = 1;
    bool first = true;
    for (const auto& c : curves)
        for (const auto& p : c.samples) {
            if (first) {
                s_min = s_max = p.s;
                t_min = t_max = p.t;
                first = false;
            }
            s_min = std::min(s_min, p.s);
            s_max = std::max(s_max, p.s);
            t_min = std::min(t_min, p.t);
            t_max = std::max(t_max, p.t);
        }
    double pad_s = 0.05 * std::max(s_max - s_min, 1e-9);
    double pad_t = 0.05 * std::max(t_max - t_min, 1e-9);
    s_min -= pad_s;
    s_max += pad_s;
    t_min -= pad_t;
    t_max += pad_t;

    auto sx = [&](double s) {
        return margin + (s - s_min) / (s_max - s_min) * (canvas - 2 * margin);
    };
    auto ty = [&](double t) {
        return canvas - margin - (t - t_min) / (t_max - t_min) * (canvas - 2 * margin);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas << "\" height=\""
        << canvas << "\" viewBox=\"0 0 " << canvas << " " << canvas << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes through (0,0) when visible, else along the frame
    double ax = (s_min < 0 && s_max > 0) ? sx(0) : margin;
    double ay = (t_min < 0 && t_max > 0) ? ty(0) : canvas - margin;
    svg << "<line x1=\"" << margin << "\" y1=\"" << ay << "\" x2=\"" << canvas - margin
        << "\" y2=\"" << ay << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << ax << "\" y1=\"" << margin << "\" x2=\"" << ax << "\" y2=\""
        << canvas - margin << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << canvas - margin + 8 << "\" y=\"" << ay + 4 << "\" font-size=\"14\">s</text>\n";
    svg << "<text x=\"" << ax - 4 << "\" y=\"" << margin - 8 << "\" font-size=\"14\">t</text>\n";

    for (const auto& c : curves) {
        if (c.samples.empty()) continue;
        svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\"";
        if (c.branch == BifBranch::BiGerm) svg << " stroke-dasharray=\"8 5\"";
        svg << " points=\"";
        for (const auto& p : c.samples) svg << sx(p.s) << "," << ty(p.t) << " ";
        svg << "\"/>\n";
    }

    // legend
    svg << "<line x1=\"" << margin << "\" y1=\"20\" x2=\"" << margin + 40
        << "\" y2=\"20\" stroke=\"black\" stroke-width=\"2\"/>"
        << "<text x=\"" << margin + 48 << "\" y=\"24\" font-size=\"13\">mono-germ</text>\n";
    svg << "<line x1=\"" << margin + 160 << "\" y1=\"20\" x2=\"" << margin + 200
        << "\" y2=\"20\" stroke=\"black\" stroke-width=\"2\" stroke-dasharray=\"8 5\"/>"
        << "<text x=\"" << margin + 208 << "\" y=\"24\" font-size=\"13\">bi-germ</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

void trace_and_render(const UnfoldingFamily& fam, ARange range, int n_samples,
                      const std::string& out_prefix) {
    std::vector<BifurcationCurve> curves;
    curves.push_back(mono_germ_locus(fam, range, n_samples));
    if (fam.id != FamilyId::Custom) curves.push_back(bi_germ_locus(fam, range, n_samples));

    std::ostringstream csv;
    csv << "branch,a,s,t,x0,y0\n";
    csv.precision(17);
    for (const auto& c : curves) {
        const char* name = c.branch == BifBranch::MonoGerm ? "mono_germ" : "bi_germ";
        for (const auto& p : c.samples) {
            if (p.source_points.empty()) {
                csv << name << "," << p.a << "," << p.s << "," << p.t << ",,\n";
            } else {
                for (const auto& [x0, y0] : p.source_points)
                    csv << name << "," << p.a << "," << p.s << "," << p.t << "," << x0 << ","
                        << y0 << "\n";
            }
        }
    }
    write_text_atomic(out_prefix + ".csv", csv.str());
    write_text_atomic(out_prefix + ".svg", render_bifurcation_svg(curves));
}

} // namespace foldatlas
