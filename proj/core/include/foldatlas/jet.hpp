#ifndef FOLDATLAS_JET_HPP
#define FOLDATLAS_JET_HPP

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <foldatlas/rational.hpp>

namespace foldatlas {

constexpr int kMaxVars = 4;

// Exponent multi-index; entries beyond num_vars stay zero.
using Exponent = std::array<int, kMaxVars>;

inline int total_degree(const Exponent& e) {
    return e[0] + e[1] + e[2] + e[3];
}

// Graded-lexicographic term order: lower total degree first, then lex.
// Fixes the iteration order of every term map, hence every downstream
// matrix layout.
struct GradedLexLess {
    bool operator()(const Exponent& a, const Exponent& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

// Exact truncated multivariate polynomial: a jet of order `order` with
// arbitrary-precision rational coefficients. Terms of total degree > order
// do not exist; zero coefficients are never stored. `reliable_degree`
// tracks how far the jet is trustworthy: a derivative of an order-k jet
// carries exact terms only up to degree k-1 even though it is stored at
// order k.
class Jet {
public:
    using TermMap = std::map<Exponent, Rational, GradedLexLess>;

    Jet(int num_vars, int order);

    static Jet zero(int num_vars, int order) { return Jet(num_vars, order); }
    static Jet constant(int num_vars, int order, const Rational& c);
    static Jet variable(int num_vars, int order, int var_index);
    static Jet monomial(int num_vars, int order, const Exponent& e, const Rational& c);

    int num_vars() const { return num_vars_; }
    int order() const { return order_; }
    int reliable_degree() const { return reliable_degree_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Exponent& e) const;
    void set_coefficient(const Exponent& e, const Rational& c);

    Jet operator+(const Jet& o) const;
    Jet operator-(const Jet& o) const;
    Jet operator-() const;
    Jet operator*(const Jet& o) const;
    Jet scaled(const Rational& s) const;
    bool operator==(const Jet& o) const;

    Jet pow(int n) const;

    // Formal partial derivative; stored at the same order, reliable one
    // degree lower.
    Jet partial_derivative(int var_index) const;

    // Substitution outer(inner[0], ..., inner[m-1]); every inner jet must
    // vanish at the origin.
    Jet compose(const std::vector<Jet>& inner) const;

    Rational evaluate(const std::vector<Rational>& point) const;
    double evaluate(const std::vector<double>& point) const;

    // (p - p o sigma)/2 where sigma negates the chosen variable: keeps
    // exactly the terms odd in that variable.
    Jet odd_part(int var_index) const;

    Jet truncated(int new_order) const;
    // Re-declares the jet at a higher order. Only valid when the stored
    // terms are an exact polynomial (no hidden tail), which holds for
    // every jet built from a coefficient file.
    Jet extended(int new_order) const;

    std::string to_string(const std::vector<std::string>& var_names = {}) const;

private:
    int num_vars_;
    int order_;
    int reliable_degree_;
    TermMap terms_;

    void insert_term(const Exponent& e, const Rational& c);
    void check_same_space(const Jet& o) const;
};

} // namespace foldatlas

#endif
