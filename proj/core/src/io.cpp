#include <foldatlas/io.hpp>

#include <cstdio>
#include <fstream>
#include <set>

namespace foldatlas {

json jet_to_json(const Jet& j) {
    json terms = json::array();
    for (const auto& [e, c] : j.terms()) {
        json exp = json::array();
        for (int v = 0; v < j.num_vars(); ++v) exp.push_back(e[v]);
        terms.push_back({{"exp", exp}, {"coef", rational_to_string(c)}});
    }
    return {{"vars", j.num_vars()}, {"order", j.order()}, {"terms", terms}};
}

Jet jet_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("vars") || !doc.contains("order") ||
        !doc.contains("terms"))
        throw input_error("jet JSON must have vars, order, terms");
    int vars = doc.at("vars").get<int>();
    int order = doc.at("order").get<int>();
    Jet j(vars, order);
    for (const auto& t : doc.at("terms")) {
        const auto& exp = t.at("exp");
        if (static_cast<int>(exp.size()) != vars)
            throw input_error("jet JSON: exponent length != vars");
        Exponent e{0, 0, 0, 0};
        for (int v = 0; v < vars; ++v) e[v] = exp.at(v).get<int>();
        Rational c = parse_rational(t.at("coef").get<std::string>());
        j.set_coefficient(e, j.coefficient(e) + c);
    }
    return j;
}

SurfaceGerm surface_from_spec_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("order") || !doc.contains("coefficients"))
        throw input_error("surface spec must have order and coefficients");
    int order = doc.at("order").get<int>();
    Jet f(2, order);
    Rational fact[32];
    fact[0] = 1;
    for (int n = 1; n < 32; ++n) fact[n] = fact[n - 1] * n;

    std::set<std::pair<int, int>> seen;
    for (const auto& entry : doc.at("coefficients")) {
        int i = entry.at("i").get<int>();
        int j = entry.at("j").get<int>();
        if (i < 0 || j < 0 || i + j > order)
            throw input_error("surface spec: coefficient (i,j) out of range");
        if (!seen.insert({i, j}).second)
            throw input_error("surface spec: duplicate coefficient (i,j)");
        Rational a = parse_rational(entry.at("a").get<std::string>());
        f.set_coefficient(Exponent{i, j, 0, 0}, a / (fact[i] * fact[j]));
    }
    return SurfaceGerm(f); // enforces Monge form
}

json surface_to_spec_json(const SurfaceGerm& s) {
    json coeffs = json::array();
    for (const auto& [e, c] : s.jet().terms()) {
        coeffs.push_back(
            {{"i", e[0]}, {"j", e[1]}, {"a", rational_to_string(s.a(e[0], e[1]))}});
    }
    return {{"order", s.order()}, {"coefficients", coeffs}};
}

SurfaceGerm load_surface_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open surface spec: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
    return surface_from_spec_json(doc);
}

json witness_to_json(const Witness& w) {
    return {{"coefficient", w.coefficient},
            {"value", rational_to_string(w.value)},
            {"relation", w.relation}};
}

json class_to_json(const SingularityClass& c) {
    json ws = json::array();
    for (const Witness& w : c.witnesses) ws.push_back(witness_to_json(w));
    return {{"class", to_string(c.tag)}, {"witnesses", ws}};
}

json versality_report_to_json(const VersalityReport& r) {
    return {{"class", class_to_json(r.sing_class)},
            {"k_used", r.k_used},
            {"basis_size", r.basis_size},
            {"rank_without_vr", r.rank_without_vr},
            {"rank_with_vr", r.rank_with_vr},
            {"codimension", r.codim},
            {"versal_by_rank", r.versal_by_rank},
            {"versal_by_formula", r.versal_by_formula},
            {"formula", r.formula},
            {"agreement", r.agreement}};
}

json main_theorem_report_to_json(const MainTheoremReport& r) {
    return {{"class", to_string(r.sing_class.tag)},
            {"umbilic", r.umbilic},
            {"geometric_versal", r.geometric_versal},
            {"algebraic_versal", r.algebraic_versal},
            {"geometric_criterion", r.geometric_criterion},
            {"agreement", r.agreement}};
}

json umbilic_report_to_json(const UmbilicReport& r) {
    return {{"no_orthogonal_roots", r.no_orthogonal_roots},
            {"d4_type", r.d4_type},
            {"star_monster_lemon", r.star_monster_lemon},
            {"limiting_directions_ok", r.limiting_directions_ok},
            {"not_ridge_subparabolic", r.not_ridge_subparabolic},
            {"d4_margin", r.d4_margin},
            {"degenerate_alpha", r.degenerate_alpha}};
}

json geometric_report_to_json(const GeometricReport& r) {
    json doc = {{"class", to_string(r.tag)},
                {"umbilic", r.umbilic},
                {"description", r.description}};
    if (r.umbilic) {
        doc["umbilic_report"] = umbilic_report_to_json(r.umbilic_report);
    } else {
        doc["v2_ridge"] = r.v2_ridge;
        doc["v2_subparabolic"] = r.v2_subparabolic;
    }
    return doc;
}

json tangent_matrix_to_json(const TangentSpaceMatrix& m) {
    json cols = json::array();
    for (const LabeledColumn& c : m.columns) {
        json entries = json::array();
        for (const Rational& q : c.entries) entries.push_back(rational_to_string(q));
        cols.push_back({{"label", c.label}, {"entries", entries}});
    }
    return {{"k", m.basis.k}, {"rows", m.rows()}, {"columns", cols}};
}

void write_text_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw input_error("cannot write: " + tmp);
        out << content;
        if (!out) throw input_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw input_error("rename failed: " + path);
}

} // namespace foldatlas
