#ifndef NILCOHOM_HODGE_HPP
#define NILCOHOM_HODGE_HPP

#include "nilcohom/form.hpp"
#include "nilcohom/matrix.hpp"

#include <string>
#include <vector>

namespace nilcohom {

enum class Op { d, del, delbar, deldelbar };
enum class Laplacian { delbar, del, bc, aeppli };

// Matrix in the canonical monomial bases. For Op::d the target is the total-degree basis (target_q = -1).
struct OperatorMatrix {
    int source_p = 0, source_q = 0;
    int target_p = 0, target_q = 0;
    QMatrix matrix;
};

// Raw memoized matrices; out-of-range bidegrees give matrices with zero rows or columns.
const QMatrix& op_matrix(const ComplexModel& m, Op which, int p, int q);
// d : A^k -> A^{k+1} on total-degree bases.
const QMatrix& d_total(const ComplexModel& m, int k);

OperatorMatrix operator_matrix(const ComplexModel& m, Op which, int p, int q);
OperatorMatrix laplacian(const ComplexModel& m, Laplacian kind, int p, int q);
const QMatrix& laplacian_matrix(const ComplexModel& m, Laplacian kind, int p, int q);
const QMatrix& de_rham_laplacian(const ComplexModel& m, int k);

struct HarmonicGreen {
    QMatrix kernel;     // columns: basis of harmonic space
    QMatrix harmonic;   // orthogonal projector
    QMatrix green;
};

HarmonicGreen harmonic_and_green(const ComplexModel& m, Laplacian kind, int p, int q);
HarmonicGreen harmonic_and_green_total(const ComplexModel& m, int k);

struct CohomologyTable {
    std::string model;
    int n = 0;
    // indexed [p][q]
    std::vector<std::vector<int>> h_dbar, h_del, h_bc, h_a;
    std::vector<int> b;  // b[k], k = 0..2n

    // Empty when the dualities h_BC^{p,q} = h_BC^{q,p} = h_A^{n-q,n-p}, h_dbar^{p,q} = h_del^{q,p}
    // and the Serre-type symmetry hold; otherwise a description of the first failure.
    std::string duality_violation() const;
    std::string tsv(bool pretty = false) const;
    friend bool operator==(const CohomologyTable&, const CohomologyTable&) = default;
};

// Exact rank-nullity.
CohomologyTable cohomology(const ComplexModel& m);
// Kernel dimensions of the Laplacians.
CohomologyTable cohomology_laplacian(const ComplexModel& m);

enum class DiagramMap { bc_del, bc_delbar, bc_dr, delbar_a, del_a, dr_a };

struct MapInfo {
    QMatrix matrix;  // columns: source harmonic basis; rows: target harmonic basis coordinates
    std::size_t rank = 0;
    bool injective = false;
    bool surjective = false;
};

MapInfo diagram_map(const ComplexModel& m, DiagramMap which, int p, int q);
// The three composites H_BC -> H_A agree.
bool diagram_commutes(const ComplexModel& m, int p, int q);

struct LemmaReport {
    std::string model;
    int n = 0;
    // indexed [p][q], 0 <= p, q <= n; conditions out of range are vacuous (true)
    std::vector<std::vector<bool>> B, S, calB, calS;
    // direct solvability tests of the defining equation delbar x = del g
    std::vector<std::vector<bool>> B_direct, S_direct, calB_direct;
    bool ddbar_lemma = false;
    std::vector<int> at_defect;  // k = 0..2n
    std::vector<std::string> diagnostics;

    bool B_at(int p, int q) const { return in_range(p, q) ? B[p][q] : true; }
    bool S_at(int p, int q) const { return in_range(p, q) ? S[p][q] : true; }
    bool calB_at(int p, int q) const { return in_range(p, q) ? calB[p][q] : true; }
    bool calS_at(int p, int q) const { return in_range(p, q) ? calS[p][q] : true; }
    bool in_range(int p, int q) const { return p >= 0 && q >= 0 && p <= n && q <= n; }
    // Empty when B => S, B => calB, S => calS, calB => calS hold everywhere.
    std::string lattice_violation() const;
    std::string tsv(bool pretty = false) const;
};

LemmaReport lemma_variants(const ComplexModel& m);

// Conversions between forms and coordinate vectors in the canonical (p,q) basis.
QVector to_vector(const Form& a, int p, int q);
Form from_vector(const ModelPtr& model, const QVector& v, int p, int q);
// Applies a constant matrix to a form with series coefficients; the form must live on src.
Form apply(const QMatrix& mat, const std::vector<Mask>& src, const std::vector<Mask>& tgt, const Form& a);
// Every series slice of a (pure (p,q)) lies in the column space of mat.
bool in_image(const QMatrix& mat, const Form& a, int p, int q);

// Single bidegree of a nonzero pure form; throws MathError if mixed.
std::pair<int, int> pure_bidegree(const Form& a);

// (del delbar)^* G_BC alpha after checking solvability; verifies del delbar x = alpha.
Form solve_ddbar(const Form& alpha);
// H(sigma) + delbar beta with beta = -(del delbar)^* G_BC del H(sigma).
Form canonical_representative(const Form& sigma);
// x with del x = delbar zeta and delbar x = del conj(xi).
Form solve_system(const Form& zeta, const Form& xi);

} // namespace nilcohom

#endif
