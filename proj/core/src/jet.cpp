#include <foldatlas/jet.hpp>

#include <cctype>
#include <sstream>

namespace foldatlas {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw input_error("empty rational string");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw input_error("bad rational string: " + s);
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw input_error("bad rational string: " + s);
    if (q.get_den() == 0) throw input_error("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return c.get_str();
}

long rational_to_long(const Rational& r) {
    if (r.get_den() != 1 || !r.get_num().fits_slong_p())
        throw input_error("rational is not a small integer: " + r.get_str());
    return r.get_num().get_si();
}

double rational_to_double(const Rational& r) {
    return r.get_d();
}

Jet::Jet(int num_vars, int order) : num_vars_(num_vars), order_(order), reliable_degree_(order) {
    if (num_vars < 1 || num_vars > kMaxVars)
        throw dimension_error("Jet: num_vars out of range");
    if (order < 0) throw input_error("Jet: negative order");
}

Jet Jet::constant(int num_vars, int order, const Rational& c) {
    Jet j(num_vars, order);
    j.insert_term(Exponent{0, 0, 0, 0}, c);
    return j;
}

Jet Jet::variable(int num_vars, int order, int var_index) {
    if (var_index < 0 || var_index >= num_vars)
        throw dimension_error("Jet::variable: bad index");
    Exponent e{0, 0, 0, 0};
    e[var_index] = 1;
    return monomial(num_vars, order, e, 1);
}

Jet Jet::monomial(int num_vars, int order, const Exponent& e, const Rational& c) {
    Jet j(num_vars, order);
    j.insert_term(e, c);
    return j;
}

void Jet::insert_term(const Exponent& e, const Rational& c) {
    for (int i = num_vars_; i < kMaxVars; ++i)
        if (e[i] != 0) throw dimension_error("Jet: exponent uses unused variable");
    for (int i = 0; i < kMaxVars; ++i)
        if (e[i] < 0) throw input_error("Jet: negative exponent");
    if (total_degree(e) > order_) return; // truncate
    if (c == 0) return;
    Rational v = c;
    v.canonicalize();
    auto [it, fresh] = terms_.try_emplace(e, v);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational Jet::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Jet::set_coefficient(const Exponent& e, const Rational& c) {
    for (int i = num_vars_; i < kMaxVars; ++i)
        if (e[i] != 0) throw dimension_error("Jet: exponent uses unused variable");
    if (total_degree(e) > order_)
        throw input_error("Jet::set_coefficient: degree exceeds order");
    // callers may hand in non-canonical fractions like 9/3; GMP comparisons
    // assume canonical form
    Rational v = c;
    v.canonicalize();
    if (v == 0)
        terms_.erase(e);
    else
        terms_[e] = v;
}

void Jet::check_same_space(const Jet& o) const {
    if (num_vars_ != o.num_vars_)
        throw dimension_error("Jet: mismatched num_vars");
}

Jet Jet::operator+(const Jet& o) const {
    check_same_space(o);
    Jet r(num_vars_, std::min(order_, o.order_));
    r.reliable_degree_ = std::min(reliable_degree_, o.reliable_degree_);
    for (const auto& [e, c] : terms_) r.insert_term(e, c);
    for (const auto& [e, c] : o.terms_) r.insert_term(e, c);
    return r;
}

Jet Jet::operator-(const Jet& o) const {
    return *this + (-o);
}

Jet Jet::operator-() const {
    Jet r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Jet Jet::operator*(const Jet& o) const {
    check_same_space(o);
    Jet r(num_vars_, std::min(order_, o.order_));
    r.reliable_degree_ = std::min(reliable_degree_, o.reliable_degree_);
    for (const auto& [ea, ca] : terms_) {
        if (total_degree(ea) > r.order_) continue;
        for (const auto& [eb, cb] : o.terms_) {
            Exponent e;
            for (int i = 0; i < kMaxVars; ++i) e[i] = ea[i] + eb[i];
            if (total_degree(e) > r.order_) continue;
            r.insert_term(e, ca * cb);
        }
    }
    return r;
}

Jet Jet::scaled(const Rational& s) const {
    Jet r(num_vars_, order_);
    r.reliable_degree_ = reliable_degree_;
    if (s == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
    return r;
}

bool Jet::operator==(const Jet& o) const {
    return num_vars_ == o.num_vars_ && terms_ == o.terms_;
}

Jet Jet::pow(int n) const {
    if (n < 0) throw input_error("Jet::pow: negative exponent");
    Jet r = constant(num_vars_, order_, 1);
    r.reliable_degree_ = reliable_degree_;
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

Jet Jet::partial_derivative(int var_index) const {
    if (var_index < 0 || var_index >= num_vars_)
        throw dimension_error("Jet::partial_derivative: bad index");
    Jet r(num_vars_, order_);
    r.reliable_degree_ = reliable_degree_ - 1;
    for (const auto& [e, c] : terms_) {
        if (e[var_index] == 0) continue;
        Exponent d = e;
        d[var_index] -= 1;
        r.insert_term(d, c * e[var_index]);
    }
    return r;
}

Jet Jet::compose(const std::vector<Jet>& inner) const {
    if (static_cast<int>(inner.size()) != num_vars_)
        throw dimension_error("Jet::compose: wrong number of inner jets");
    int tvars = inner.front().num_vars();
    int torder = inner.front().order();
    int treliable = inner.front().reliable_degree();
    for (const Jet& g : inner) {
        if (g.num_vars() != tvars) throw dimension_error("Jet::compose: inner jets disagree");
        torder = std::min(torder, g.order());
        treliable = std::min(treliable, g.reliable_degree());
        if (g.coefficient(Exponent{0, 0, 0, 0}) != 0)
            throw composition_domain_error("Jet::compose: inner jet has nonzero constant term");
    }

    // Powers of the inner jets, computed once each.
    std::vector<std::vector<Jet>> powers(num_vars_);
    for (int v = 0; v < num_vars_; ++v) {
        powers[v].push_back(Jet::constant(tvars, torder, 1));
        for (int d = 1; d <= order_; ++d)
            powers[v].push_back(powers[v].back() * inner[v]);
    }

    Jet r(tvars, torder);
    for (const auto& [e, c] : terms_) {
        Jet term = Jet::constant(tvars, torder, c);
        for (int v = 0; v < num_vars_; ++v)
            if (e[v] > 0) term = term * powers[v][e[v]];
        r = r + term;
    }
    r.reliable_degree_ = std::min(r.reliable_degree_, treliable);
    return r;
}

Rational Jet::evaluate(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != num_vars_)
        throw dimension_error("Jet::evaluate: wrong point dimension");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int v = 0; v < num_vars_; ++v)
            for (int k = 0; k < e[v]; ++k) t *= point[v];
        acc += t;
    }
    return acc;
}

double Jet::evaluate(const std::vector<double>& point) const {
    if (static_cast<int>(point.size()) != num_vars_)
        throw dimension_error("Jet::evaluate: wrong point dimension");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = rational_to_double(c);
        for (int v = 0; v < num_vars_; ++v)
            for (int k = 0; k < e[v]; ++k) t *= point[v];
        acc += t;
    }
    return acc;
}

Jet Jet::odd_part(int var_index) const {
    if (var_index < 0 || var_index >= num_vars_)
        throw dimension_error("Jet::odd_part: bad index");
    Jet r(num_vars_, order_);
    r.reliable_degree_ = reliable_degree_;
    for (const auto& [e, c] : terms_)
        if (e[var_index] % 2 == 1) r.terms_[e] = c;
    return r;
}

Jet Jet::truncated(int new_order) const {
    Jet r(num_vars_, new_order);
    r.reliable_degree_ = std::min(reliable_degree_, new_order);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) <= new_order) r.terms_[e] = c;
    return r;
}

Jet Jet::extended(int new_order) const {
    if (new_order < order_) return truncated(new_order);
    Jet r(num_vars_, new_order);
    r.terms_ = terms_;
    return r;
}

std::string Jet::to_string(const std::vector<std::string>& var_names) const {
    static const std::vector<std::string> defaults{"x", "y", "z", "w"};
    const auto& names = var_names.empty() ? defaults : var_names;
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (int v = 0; v < num_vars_; ++v) {
            if (e[v] == 0) continue;
            os << "*" << names[v];
            if (e[v] > 1) os << "^" << e[v];
        }
    }
    return os.str();
}

} // namespace foldatlas
