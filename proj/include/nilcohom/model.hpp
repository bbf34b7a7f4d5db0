#ifndef NILCOHOM_MODEL_HPP
#define NILCOHOM_MODEL_HPP

#include "nilcohom/gauss_rational.hpp"
#include "nilcohom/matrix.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace nilcohom {

// Bit g of a mask is generator g: phi^{g+1} for g < n, conj(phi)^{g-n+1} for g >= n.
using Mask = std::uint32_t;

constexpr int kMaxDim = 6;

struct Factor {
    int index = 0;  // 0-based
    bool conjugated = false;
    friend bool operator==(const Factor&, const Factor&) = default;
};

struct StructureTerm {
    GaussRational coefficient;
    std::vector<Factor> factors;
    friend bool operator==(const StructureTerm&, const StructureTerm&) = default;
};

using SparseForm = std::vector<std::pair<Mask, GaussRational>>;

// Raw model description, not yet validated.
struct ModelData {
    std::string name;
    int n = 0;
    std::map<int, std::vector<StructureTerm>> d;  // 0-based generator -> dphi^{k+1}
};

namespace monomial {

inline int generator_bit(int index, bool conjugated, int n) { return conjugated ? n + index : index; }
inline Mask holo_part(Mask m, int n) { return m & ((Mask(1) << n) - 1); }
inline Mask antiholo_part(Mask m, int n) { return m >> n; }
inline int p_degree(Mask m, int n) { return __builtin_popcount(holo_part(m, n)); }
inline int q_degree(Mask m, int n) { return __builtin_popcount(antiholo_part(m, n)); }
inline int degree(Mask m) { return __builtin_popcount(m); }
inline Mask make(Mask holo, Mask antiholo, int n) { return holo | (antiholo << n); }

// Sign of e_a ^ e_b relative to e_{a|b}; 0 if they share a factor.
int wedge_sign(Mask a, Mask b);
// Sign s with conj(e_m) = s * e_{conj_mask(m)}.
int conj_sign(Mask m, int n);
inline Mask conj_mask(Mask m, int n) { return make(antiholo_part(m, n), holo_part(m, n), n); }
// Sign of the interior product of the dual vector of generator g with e_m (g must be in m).
inline int interior_sign(Mask m, int g) { return (__builtin_popcount(m & ((Mask(1) << g) - 1)) & 1) ? -1 : 1; }

// Canonically ordered basis of Lambda^{p,q}: index sets I then J lexicographic.
std::vector<Mask> basis(int n, int p, int q);
// Basis of total degree k, grouped by decreasing p.
std::vector<Mask> basis_total(int n, int k);
std::string str(Mask m, int n);

} // namespace monomial

struct GeneratorReport {
    int k = 0;
    SparseForm part20, part11, part02;
    SparseForm d2_residual;  // d(dphi^k) expanded
};

struct IntegrabilityReport {
    std::vector<GeneratorReport> generators;
    bool passed = true;
    std::string str(int n) const;
};

IntegrabilityReport check_integrability(const ModelData& data);

class ComplexModel;
using ModelPtr = std::shared_ptr<const ComplexModel>;

// Immutable invariant-form model; d on every basis monomial is precomputed.
class ComplexModel {
public:
    // Validates; throws ModelError on integrability or d^2 failures.
    explicit ComplexModel(ModelData data);

    const std::string& name() const { return data_.name; }
    int n() const { return data_.n; }
    int generators() const { return 2 * data_.n; }
    const std::map<int, std::vector<StructureTerm>>& d_on_generators() const { return data_.d; }
    const ModelData& data() const { return data_; }

    // d of generator g (0 <= g < 2n) as a sparse 2-form.
    const SparseForm& d_generator(int g) const { return gen_d_[g]; }
    const SparseForm& d_monomial(Mask m) const { return mono_d_[m]; }

    using MemoKey = std::tuple<int, int, int, int>;
    const QMatrix& memo(const MemoKey& key, const std::function<QMatrix()>& compute) const;

private:
    ModelData data_;
    std::vector<SparseForm> gen_d_;
    std::vector<SparseForm> mono_d_;
    mutable std::mutex memo_mutex_;
    mutable std::map<MemoKey, std::unique_ptr<QMatrix>> memo_;
};

ModelPtr make_model(ModelData data);

// Expands a structure-term list into a sparse canonical 2-form; throws ModelError on repeated factors.
SparseForm expand_terms(const std::vector<StructureTerm>& terms, int n);

ModelData parse_model_data(const std::string& text);
ModelPtr parse_model(const std::string& text);
std::string serialize_model(const ModelData& data);
std::string serialize_model(const ComplexModel& m);

const std::vector<std::string>& catalog_names();
// Built-in model, then $NILCOHOM_CATALOG_DIR/<name>.model.
ModelPtr catalog(const std::string& name);
// Catalog name or path to a model file.
ModelPtr load_model(const std::string& source);

// A frame bracket [E_a, E_b] = sum coefficient * E_c with E_g dual to generator g.
struct BracketEntry {
    int a = 0, b = 0;
    std::vector<std::pair<int, GaussRational>> value;
};

// Nonzero brackets of the dual frame, a < b, from dtheta(X, Y) = -theta([X, Y]).
std::vector<BracketEntry> frame_structure(const ComplexModel& m);
std::string frame_label(int g, int n);

} // namespace nilcohom

#endif
