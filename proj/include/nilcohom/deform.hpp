#ifndef NILCOHOM_DEFORM_HPP
#define NILCOHOM_DEFORM_HPP

#include "nilcohom/algebra.hpp"
#include "nilcohom/hodge.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilcohom {

// T^{1,0}-valued (0,q)-forms in coordinates: index k * |basis(n,0,q)| + j for Z_{k+1} (x) basis[j].
QVector to_vvector(const VectorForm& v, int q);
VectorForm from_vvector(const ModelPtr& model, const QVector& v, int q);
// Constant matrix applied slice-wise to a vector form with series coefficients.
VectorForm apply_vector(const QMatrix& mat, int q_src, int q_tgt, const VectorForm& v);

// delbar : A^{0,q}(T^{1,0}) -> A^{0,q+1}(T^{1,0}).
const QMatrix& vector_delbar_matrix(const ModelPtr& model, int q);
const QMatrix& vector_laplacian(const ModelPtr& model, int q);
HarmonicGreen vector_harmonic_and_green(const ModelPtr& model, int q);

std::vector<Beltrami> harmonic_beltrami_basis(const ModelPtr& model);

struct KuranishiFamily {
    ModelPtr model;
    int m = 0;
    int N = 0;
    std::vector<Beltrami> basis;
    Beltrami phi;
    std::vector<Beltrami> orders;  // orders[k] = homogeneous degree-k part, k = 0..N
    int top_order = 0;             // largest k with orders[k] != 0
    bool terminated = false;       // phi is a polynomial satisfying Maurer-Cartan exactly
    Beltrami obstruction;          // harmonic part of the brackets, (0,2)-valued

    bool obstructed() const { return !obstruction.is_zero(); }
    std::string summary() const;
};

KuranishiFamily kuranishi_series(const ModelPtr& model, int N);
// Recursion started from sum_nu t_nu directions[nu].
KuranishiFamily kuranishi_series(const ModelPtr& model, int N, const std::vector<Beltrami>& directions);

// delbar phi - 1/2 [phi, phi] truncated at N.
Beltrami check_maurer_cartan(const Beltrami& phi, int N);

enum class Deformed { delbar_t, del_t };

// Matrix over series of the pulled-back operator from (p,q); refuses non-integrable phi.
SeriesMatrix deformed_operator(const Beltrami& phi, Deformed which, int p, int q);
QMatrix evaluate(const SeriesMatrix& a, const std::vector<GaussRational>& t);

// Exact pulled-back del_t and delbar_t of a constant integrable phi_t on every bidegree.
struct SampleOperators {
    ModelPtr model;
    std::vector<std::vector<QMatrix>> del, delbar;  // [p][q], from (p,q)

    // zero maps with the right shape outside the range
    QMatrix D(int p, int q) const;
    QMatrix Db(int p, int q) const;
    QMatrix DDb(int p, int q) const;  // del delbar from (p,q)
    QMatrix bc_laplacian(int p, int q) const;
};

SampleOperators sample_operators(const Beltrami& phi_t, bool delbar_only = false);

struct DeformedTable {
    std::vector<std::vector<int>> h_dbar, h_bc;  // [p][q]; h_bc empty unless requested
};

// Exact numbers of X_t computed on the fixed basis of X_0.
DeformedTable hodge_numbers_at(const KuranishiFamily& fam, const std::vector<GaussRational>& t, bool bott_chern = true);

struct ScanReport {
    std::string model;
    int n = 0;
    std::vector<std::vector<GaussRational>> samples;
    DeformedTable at_zero;
    std::vector<DeformedTable> at;
    bool bott_chern = false;
    // [p][q]
    std::vector<std::vector<bool>> jumped, jumped_bc;
    // invariance hypotheses at (p,q): injectivity of iota_{BC,del}^{p,q+1}, surjectivity of
    // iota_{BC,delbar}^{p,q}, invariance of h^{p,q-1} on the scanned data
    std::vector<std::vector<bool>> hyp_B, hyp_calB, hyp_prev;
    bool semicontinuous = true;
    std::vector<std::string> counterexamples;  // soundness failures; must stay empty
    std::vector<std::string> notes;

    std::vector<std::pair<int, int>> jumps() const;
    // names of the failing hypotheses at (p,q)
    std::vector<std::string> failed_hypotheses(int p, int q) const;
    std::string tsv() const;
};

std::vector<std::vector<GaussRational>> default_samples(int m, int count, std::uint64_t seed);
ScanReport invariance_scan(const KuranishiFamily& fam, const std::vector<std::vector<GaussRational>>& samples,
                           bool bott_chern = true);

std::string point_str(const std::vector<GaussRational>& t);

} // namespace nilcohom

#endif
