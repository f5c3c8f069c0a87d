#ifndef FOLDATLAS_VERSALITY_HPP
#define FOLDATLAS_VERSALITY_HPP

#include <string>
#include <vector>

#include <foldatlas/folding.hpp>

namespace foldatlas {

// Ordered basis of the k-jet quotient of vector fields along F: pairs
// (source monomial x^i y^j with i+j <= k, component e_s), graded-lex by
// monomial then by component. Size 3 (k+1)(k+2)/2.
struct JetBasis {
    int k;
    std::vector<std::pair<Exponent, int>> entries;

    explicit JetBasis(int k);
    int size() const { return static_cast<int>(entries.size()); }
    int index_of(const Exponent& e, int component) const;
};

struct LabeledColumn {
    std::string label;
    std::vector<Rational> entries; // coefficients over the basis
};

struct TangentSpaceMatrix {
    JetBasis basis;
    std::vector<LabeledColumn> columns;

    int rows() const { return basis.size(); }
    int cols() const { return static_cast<int>(columns.size()); }
};

// Mond's determinacy degrees: S0 -> 2, S1 -> 3, S2 -> 4, B2 -> 5.
int determinacy_degree(SingTag c);

// Columns spanning T A_e F (+ V_R when requested) in the k-jet quotient:
//   tF:  m * (1, 0, f_x) and m * (0, 2y, f_y) for every source monomial m
//   wF:  x^a y^{2b} f^c e_s for every a + 2b + 2c <= k and component s
//   V_R: the two rotation generators
// Requires source_order >= k + 1 so f_x, f_y are reliable at degree k.
TangentSpaceMatrix assemble_tangent_matrix(const FoldingMap& F, int k, bool include_vr);

// Exact rank over Q via fraction-free (Bareiss) elimination.
int rank_exact(const TangentSpaceMatrix& m);
int rank_exact(const std::vector<std::vector<Rational>>& rows);

// dim theta(F) / T A_e F in the determinacy-degree quotient.
int codimension(const FoldingMap& F, const SingularityClass& c);

struct VersalityReport {
    SingularityClass sing_class;
    int k_used;
    int basis_size;
    int rank_without_vr;
    int rank_with_vr;
    int codim;
    bool versal_by_rank;
    bool versal_by_formula;
    bool agreement;
    std::string formula; // the closed-form criterion that was evaluated
};

// Both verdicts of the rotation-unfolding versality: exact matrix rank
// and the closed-form coefficient criterion. Disagreement throws
// internal_invariant_error.
VersalityReport is_versal_rotation(const SurfaceGerm& s);

struct MainTheoremReport {
    SingularityClass sing_class;
    bool umbilic;
    bool geometric_versal;
    bool algebraic_versal;
    bool agreement;
    std::string geometric_criterion;
};

// Geometric side of the main versality theorem (ridge transversality in
// the non-umbilic case, the resultant zero-test at umbilics), cross-checked
// against is_versal_rotation.
MainTheoremReport main_theorem_check(const SurfaceGerm& s);

} // namespace foldatlas

#endif
