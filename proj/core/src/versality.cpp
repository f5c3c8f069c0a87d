#include <foldatlas/versality.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace foldatlas {

JetBasis::JetBasis(int k_) : k(k_) {
    for (int d = 0; d <= k; ++d)
        for (int i = d; i >= 0; --i) { // graded-lex: x^d, x^{d-1}y, ..., y^d
            Exponent e{i, d - i, 0, 0};
            for (int s = 0; s < 3; ++s) entries.emplace_back(e, s);
        }
}

int JetBasis::index_of(const Exponent& e, int component) const {
    int d = total_degree(e);
    if (d > k) return -1;
    // monomials of degree < d, then position within degree d
    int before = d * (d + 1) / 2;
    int pos = before + (d - e[0]);
    return 3 * pos + component;
}

int determinacy_degree(SingTag c) {
    switch (c) {
        case SingTag::S0: return 2;
        case SingTag::S1: return 3;
        case SingTag::S2: return 4;
        case SingTag::B2: return 5;
        default:
            throw unsupported_class_error("determinacy_degree: class beyond codimension 2");
    }
}

namespace {

LabeledColumn column_from_field(const JetBasis& basis, std::string label,
                                const std::array<Jet, 3>& field) {
    LabeledColumn col{std::move(label), std::vector<Rational>(basis.size(), Rational(0))};
    for (int s = 0; s < 3; ++s) {
        for (const auto& [e, c] : field[s].terms()) {
            int idx = basis.index_of(e, s);
            if (idx >= 0) col.entries[idx] = c;
        }
    }
    return col;
}

std::string monomial_name(const Exponent& e) {
    std::ostringstream os;
    if (total_degree(e) == 0) return "1";
    if (e[0] > 0) {
        os << "x";
        if (e[0] > 1) os << "^" << e[0];
    }
    if (e[1] > 0) {
        os << "y";
        if (e[1] > 1) os << "^" << e[1];
    }
    return os.str();
}

} // namespace

TangentSpaceMatrix assemble_tangent_matrix(const FoldingMap& F, int k, bool include_vr) {
    if (F.source_order < k + 1)
        throw insufficient_jet_error(
            "assemble_tangent_matrix: source order must be >= k+1 for reliable f_x, f_y");

    const Jet& f = F.components[2];
    Jet fx = F.components[2].partial_derivative(0);
    Jet fy = F.components[2].partial_derivative(1);
    if (fx.reliable_degree() < k)
        throw insufficient_jet_error("assemble_tangent_matrix: derivative unreliable at degree k");

    TangentSpaceMatrix m{JetBasis(k), {}};
    const JetBasis& basis = m.basis;

    Jet one = Jet::constant(2, k, 1);
    Jet two_y = Jet::variable(2, k, 1).scaled(2);
    Jet zero = Jet::zero(2, k);
    Jet fx_k = fx.truncated(k), fy_k = fy.truncated(k), f_k = f.truncated(k);

    // tF columns: m * (1, 0, f_x), then m * (0, 2y, f_y)
    for (int branch = 0; branch < 2; ++branch) {
        for (int d = 0; d <= k; ++d)
            for (int i = d; i >= 0; --i) {
                Exponent e{i, d - i, 0, 0};
                Jet mono = Jet::monomial(2, k, e, 1);
                std::array<Jet, 3> field =
                    branch == 0 ? std::array<Jet, 3>{mono, zero, mono * fx_k}
                                : std::array<Jet, 3>{zero, mono * two_y, mono * fy_k};
                m.columns.push_back(column_from_field(
                    basis, std::string(branch == 0 ? "tF:Fx:" : "tF:Fy:") + monomial_name(e),
                    field));
            }
    }

    // wF columns: x^a y^{2b} f^c e_s for a + 2b + 2c <= k
    // (Y o F = y^2 and Z o F = f both have order >= 2).
    for (int deg = 0; deg <= k; ++deg)
        for (int a = deg; a >= 0; --a)
            for (int b = (deg - a) / 2; b >= 0; --b) {
                if ((deg - a) % 2 != 0) continue;
                int cexp = (deg - a) / 2 - b;
                Jet val = Jet::monomial(2, k, Exponent{a, 2 * b, 0, 0}, 1) * f_k.pow(cexp);
                for (int s = 0; s < 3; ++s) {
                    std::array<Jet, 3> field{zero, zero, zero};
                    field[s] = val;
                    std::ostringstream label;
                    label << "wF:X^" << a << "Y^" << b << "Z^" << cexp << ":e" << (s + 1);
                    m.columns.push_back(column_from_field(basis, label.str(), field));
                }
            }

    if (include_vr) {
        Jet x = Jet::variable(2, k, 0);
        Jet y = Jet::variable(2, k, 1);
        m.columns.push_back(
            column_from_field(basis, "VR:1", {-y, (x * y).scaled(2), zero}));
        m.columns.push_back(
            column_from_field(basis, "VR:2", {zero, (y * f_k).scaled(2), -y}));
    }
    return m;
}

int rank_exact(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return 0;
    size_t nr = rows.size(), nc = rows.front().size();

    // clear denominators row by row; rank is scaling-invariant
    std::vector<std::vector<Integer>> a(nr, std::vector<Integer>(nc));
    for (size_t i = 0; i < nr; ++i) {
        Integer l(1);
        for (const Rational& q : rows[i])l = lcm(l, q.get_den());
        for (size_t j = 0; j < nc; ++j) {
            Rational scaled = rows[i][j] * Rational(l);
            a[i][j] = scaled.get_num();
        }
    }

    // Bareiss fraction-free elimination with full pivoting; the pivot with
    // smallest absolute value keeps intermediate growth down
    int rank = 0;
    Integer prev(1);
    size_t limit = std::min(nr, nc);
    while (rank < static_cast<int>(limit)) {
        size_t pr = nr, pc = nc;
        for (size_t i = rank; i < nr; ++i)
            for (size_t j = rank; j < nc; ++j) {
                if (a[i][j] == 0) continue;
                if (pr == nr || mpz_cmpabs(a[i][j].get_mpz_t(), a[pr][pc].get_mpz_t()) < 0) {
                    pr = i;
                    pc = j;
                }
            }
        if (pr == nr) break;
        if (pr != static_cast<size_t>(rank)) std::swap(a[pr], a[rank]);
        if (pc != static_cast<size_t>(rank))
            for (size_t i = 0; i < nr; ++i) std::swap(a[i][pc], a[i][rank]);

        const Integer& piv = a[rank][rank];
        for (size_t i = rank + 1; i < nr; ++i) {
            for (size_t j = rank + 1; j < nc; ++j) {
                Integer t = piv * a[i][j] - a[i][rank] * a[rank][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][rank] = 0;
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

int rank_exact(const TangentSpaceMatrix& m) {
    // transpose: eliminate over the columns as rows
    std::vector<std::vector<Rational>> rows;
    rows.reserve(m.cols());
    for (const LabeledColumn& c : m.columns) rows.push_back(c.entries);
    return rank_exact(rows);
}

int codimension(const FoldingMap& F, const SingularityClass& c) {
    int k = determinacy_degree(c.tag);
    TangentSpaceMatrix m = assemble_tangent_matrix(F, k, /*include_vr=*/false);
    return m.rows() - rank_exact(m);
}

VersalityReport is_versal_rotation(const SurfaceGerm& s) {
    SingularityClass c = classify(s);
    int k = determinacy_degree(c.tag); // throws on BeyondCodim2
    FoldingMap F = build_folding_map(SurfaceGerm(s.jet_at(std::max(s.order(), k + 1))));

    TangentSpaceMatrix without = assemble_tangent_matrix(F, k, false);
    TangentSpaceMatrix with = assemble_tangent_matrix(F, k, true);

    VersalityReport r{};
    r.sing_class = c;
    r.k_used = k;
    r.basis_size = without.rows();
    r.rank_without_vr = rank_exact(without);
    r.rank_with_vr = rank_exact(with);
    r.codim = r.basis_size - r.rank_without_vr;
    r.versal_by_rank = (r.rank_with_vr == r.basis_size);

    switch (c.tag) {
        case SingTag::S0:
        case SingTag::S1:
            r.versal_by_formula = true;
            r.formula = "always versal";
            break;
        case SingTag::S2:
            r.versal_by_formula = (s.k1() != s.k2());
            r.formula = "k1 - k2 != 0";
            break;
        case SingTag::B2:
            r.versal_by_formula =
                (s.a(1, 3) * (s.k1() - s.k2()) - 3 * s.a(2, 1) * s.a(1, 2) != 0);
            r.formula = "a13 (k1 - k2) - 3 a21 a12 != 0";
            break;
        default: break;
    }
    r.agreement = (r.versal_by_rank == r.versal_by_formula);
    if (!r.agreement) {
        std::ostringstream os;
        os << "is_versal_rotation: rank verdict (" << r.versal_by_rank
           << ", rank_with_vr=" << r.rank_with_vr << "/" << r.basis_size
           << ") disagrees with closed form (" << r.versal_by_formula << ", " << r.formula
           << ") for class " << to_string(c.tag);
        throw internal_invariant_error(os.str());
    }
    return r;
}

MainTheoremReport main_theorem_check(const SurfaceGerm& s) {
    VersalityReport vr = is_versal_rotation(s);
    SingTag tag = vr.sing_class.tag;
    if (tag != SingTag::S1 && tag != SingTag::S2 && tag != SingTag::B2)
        throw unsupported_class_error("main_theorem_check: class must be S1, S2 or B2");

    MainTheoremReport r{};
    r.sing_class = vr.sing_class;
    r.umbilic = s.is_umbilic();
    r.algebraic_versal = vr.versal_by_rank;

    switch (tag) {
        case SingTag::S1:
            r.geometric_versal = true;
            r.geometric_criterion = "S1: always versal";
            break;
        case SingTag::S2:
            r.geometric_versal = !r.umbilic;
            r.geometric_criterion = "S2: origin not umbilic";
            break;
        case SingTag::B2:
            if (!r.umbilic) {
                // transversality of the ridge line to the reflection plane:
                // the u-coefficient of the v2 kappa2 expansion is nonzero
                RidgeFieldExpansion exp = ridge_field_expansion(s);
                r.geometric_versal = (exp.v2k2.cu != 0);
                r.geometric_criterion = "B2 non-umbilic: ridge line transverse to Pi "
                                        "(u-coefficient of v2 kappa2 != 0)";
            } else {
                UmbilicCubic c = umbilic_cubic(s);
                Rational res = c.alpha.norm() * resultant_bracket(c);
                r.geometric_versal = (res != 0);
                r.geometric_criterion = "B2 umbilic: |alpha|^2 * resultant bracket != 0 "
                                        "(D4-type umbilic)";
            }
            break;
        default: break;
    }
    r.agreement = (r.geometric_versal == r.algebraic_versal);
    if (!r.agreement)
        throw internal_invariant_error(
            "main_theorem_check: geometric verdict disagrees with versality rank");
    return r;
}

} // namespace foldatlas
