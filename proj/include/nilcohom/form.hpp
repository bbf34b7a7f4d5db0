#ifndef NILCOHOM_FORM_HPP
#define NILCOHOM_FORM_HPP

#include "nilcohom/model.hpp"
#include "nilcohom/series.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace nilcohom {

// Invariant form sum_m c_m e_m with Series coefficients.
class Form {
public:
    Form() = default;
    explicit Form(ModelPtr model) : model_(std::move(model)) {}

    static Form monomial(ModelPtr model, Mask m, const Series& c = Series(1));
    static Form generator(ModelPtr model, int g);
    static Form scalar(ModelPtr model, const Series& c);
    // p<i> (conjugated=false) or q<i>, 1-based index as in model files.
    static Form phi(ModelPtr model, int i, bool conjugated = false);

    const ModelPtr& model() const { return model_; }
    int n() const { return model_->n(); }
    const std::map<Mask, Series>& terms() const { return terms_; }
    Series coefficient(Mask m) const;
    bool is_zero() const { return terms_.empty(); }

    void add(Mask m, const Series& c);

    Form component(int p, int q) const;
    Form degree_part(int k) const;
    std::set<std::pair<int, int>> bidegrees() const;
    bool is_pure(int p, int q) const;

    // Lowest series degree among coefficients; Series::kExactOrder + 1 for zero.
    int valuation() const;
    // Smallest truncation order among coefficients.
    int order() const;
    Form truncated(int order) const;
    Form homogeneous(int k) const;
    Form conj() const;
    Form evaluate(const std::vector<GaussRational>& t) const;

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(const Series& c);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator-(Form a) {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend Form operator*(Form a, const Series& c) { return a *= c; }
    friend Form operator*(const Series& c, Form a) { return a *= c; }
    friend Form operator*(Form a, const GaussRational& c) { return a *= Series(c); }
    friend Form operator*(const GaussRational& c, Form a) { return a *= Series(c); }

    friend bool operator==(const Form& a, const Form& b) { return a.terms_ == b.terms_; }

    std::string str() const;

private:
    ModelPtr model_;
    std::map<Mask, Series> terms_;
};

Form wedge(const Form& a, const Form& b);

enum class Diff { d, del, delbar };

Form differential(Diff kind, const Form& a);
inline Form d(const Form& a) { return differential(Diff::d, a); }
inline Form del(const Form& a) { return differential(Diff::del, a); }
inline Form delbar(const Form& a) { return differential(Diff::delbar, a); }
inline Form conjugate(const Form& a) { return a.conj(); }

// Vector-valued form sum_g comp[g] (x) E_g, E_g the frame vector dual to generator g.
class VectorForm {
public:
    VectorForm() = default;
    explicit VectorForm(ModelPtr model);
    // T^{1,0}-valued: comps[i] is the coefficient of Z_{i+1}.
    static VectorForm beltrami(ModelPtr model, std::vector<Form> comps);
    // comp (x) E_g
    static VectorForm single(const Form& comp, int g);

    const ModelPtr& model() const { return model_; }
    int n() const { return model_->n(); }
    const Form& operator[](int g) const { return comps_[g]; }
    Form& operator[](int g) { return comps_[g]; }
    int slots() const { return int(comps_.size()); }

    bool is_zero() const;
    bool is_type_10() const;
    int valuation() const;
    VectorForm conj() const;
    VectorForm truncated(int order) const;
    VectorForm homogeneous(int k) const;
    VectorForm evaluate(const std::vector<GaussRational>& t) const;

    VectorForm& operator+=(const VectorForm& o);
    VectorForm& operator-=(const VectorForm& o);
    VectorForm& operator*=(const Series& c);
    friend VectorForm operator+(VectorForm a, const VectorForm& b) { return a += b; }
    friend VectorForm operator-(VectorForm a, const VectorForm& b) { return a -= b; }
    friend VectorForm operator*(VectorForm a, const Series& c) { return a *= c; }
    friend VectorForm operator*(const GaussRational& c, VectorForm a) { return a *= Series(c); }
    friend VectorForm operator*(VectorForm a, const GaussRational& c) { return a *= Series(c); }
    friend bool operator==(const VectorForm& a, const VectorForm& b) { return a.comps_ == b.comps_; }

    std::string str() const;

private:
    ModelPtr model_;
    std::vector<Form> comps_;
};

using Beltrami = VectorForm;

std::ostream& operator<<(std::ostream& os, const Form& f);
std::ostream& operator<<(std::ostream& os, const VectorForm& v);

// v -| a = sum_g v[g] ^ (E_g -| a).
Form contract(const VectorForm& v, const Form& a);

} // namespace nilcohom

#endif
