#include "nilcohom/form.hpp"

#include "nilcohom/error.hpp"

#include <algorithm>
#include <sstream>

namespace nilcohom {

namespace {

void check_same(const ModelPtr& a, const ModelPtr& b) {
    if (a && b && a != b) throw MathError("forms belong to different models");
}

} // namespace

Form Form::monomial(ModelPtr model, Mask m, const Series& c) {
    Form f(std::move(model));
    f.add(m, c);
    return f;
}

Form Form::generator(ModelPtr model, int g) { return monomial(std::move(model), Mask(1) << g); }

Form Form::scalar(ModelPtr model, const Series& c) { return monomial(std::move(model), 0, c); }

Form Form::phi(ModelPtr model, int i, bool conjugated) {
    int n = model->n();
    if (i < 1 || i > n) throw MathError("generator index out of range");
    return generator(std::move(model), monomial::generator_bit(i - 1, conjugated, n));
}

Series Form::coefficient(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Series() : it->second;
}

void Form::add(Mask m, const Series& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Form Form::component(int p, int q) const {
    Form r(model_);
    int nn = n();
    for (const auto& [m, c] : terms_)
        if (monomial::p_degree(m, nn) == p && monomial::q_degree(m, nn) == q) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
}

Form Form::degree_part(int k) const {
    Form r(model_);
    for (const auto& [m, c] : terms_)
        if (monomial::degree(m) == k) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
}

std::set<std::pair<int, int>> Form::bidegrees() const {
    std::set<std::pair<int, int>> s;
    for (const auto& [m, c] : terms_) s.emplace(monomial::p_degree(m, n()), monomial::q_degree(m, n()));
    return s;
}

bool Form::is_pure(int p, int q) const {
    for (const auto& [m, c] : terms_)
        if (monomial::p_degree(m, n()) != p || monomial::q_degree(m, n()) != q) return false;
    return true;
}

int Form::valuation() const {
    int v = Series::kExactOrder + 1;
    for (const auto& [m, c] : terms_) v = std::min(v, c.valuation());
    return v;
}

int Form::order() const {
    int v = Series::kExactOrder;
    for (const auto& [m, c] : terms_) v = std::min(v, c.order());
    return v;
}

Form Form::truncated(int order) const {
    Form r(model_);
    for (const auto& [m, c] : terms_) r.add(m, c.truncated(order));
    return r;
}

Form Form::homogeneous(int k) const {
    Form r(model_);
    for (const auto& [m, c] : terms_) r.add(m, c.homogeneous(k));
    return r;
}

Form Form::conj() const {
    Form r(model_);
    int nn = n();
    for (const auto& [m, c] : terms_) {
        Series s = c.conj();
        if (monomial::conj_sign(m, nn) < 0) s = -s;
        r.terms_.emplace(monomial::conj_mask(m, nn), std::move(s));
    }
    return r;
}

Form Form::evaluate(const std::vector<GaussRational>& t) const {
    Form r(model_);
    for (const auto& [m, c] : terms_) r.add(m, Series(c.evaluate(t)));
    return r;
}

Form& Form::operator+=(const Form& o) {
    check_same(model_, o.model_);
    if (!model_) model_ = o.model_;
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

Form& Form::operator-=(const Form& o) {
    check_same(model_, o.model_);
    if (!model_) model_ = o.model_;
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

Form& Form::operator*=(const Series& c) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second = it->second * c;
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
    return *this;
}

std::string Form::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")*" << monomial::str(m, n());
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Form& f) { return os << f.str(); }
std::ostream& operator<<(std::ostream& os, const VectorForm& v) { return os << v.str(); }

Form wedge(const Form& a, const Form& b) {
    check_same(a.model(), b.model());
    Form r(a.model() ? a.model() : b.model());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            int s = monomial::wedge_sign(ma, mb);
            if (!s) continue;
            Series c = ca * cb;
            if (s < 0) c = -c;
            r.add(ma | mb, c);
        }
    return r;
}

Form differential(Diff kind, const Form& a) {
    Form r(a.model());
    if (a.is_zero()) return r;
    const ComplexModel& m = *a.model();
    int n = m.n();
    for (const auto& [mask, c] : a.terms()) {
        int p = monomial::p_degree(mask, n);
        for (const auto& [m2, c2] : m.d_monomial(mask)) {
            int p2 = monomial::p_degree(m2, n);
            if (kind == Diff::del && p2 != p + 1) continue;
            if (kind == Diff::delbar && p2 != p) continue;
            r.add(m2, c * c2);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

VectorForm::VectorForm(ModelPtr model) : model_(std::move(model)) {
    comps_.assign(2 * model_->n(), Form(model_));
}

VectorForm VectorForm::beltrami(ModelPtr model, std::vector<Form> comps) {
    VectorForm v(model);
    if (int(comps.size()) != model->n()) throw MathError("Beltrami differential needs n components");
    for (int i = 0; i < model->n(); ++i) {
        check_same(model, comps[i].model());
        v.comps_[i] = comps[i].model() ? std::move(comps[i]) : Form(model);
    }
    return v;
}

VectorForm VectorForm::single(const Form& comp, int g) {
    VectorForm v(comp.model());
    v.comps_[g] = comp;
    return v;
}

bool VectorForm::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Form& f) { return f.is_zero(); });
}

bool VectorForm::is_type_10() const {
    for (int g = n(); g < slots(); ++g)
        if (!comps_[g].is_zero()) return false;
    return true;
}

int VectorForm::valuation() const {
    int v = Series::kExactOrder + 1;
    for (const auto& f : comps_) v = std::min(v, f.valuation());
    return v;
}

VectorForm VectorForm::conj() const {
    VectorForm r(model_);
    int nn = n();
    for (int g = 0; g < slots(); ++g) r.comps_[g < nn ? g + nn : g - nn] = comps_[g].conj();
    return r;
}

VectorForm VectorForm::truncated(int order) const {
    VectorForm r = *this;
    for (auto& f : r.comps_) f = f.truncated(order);
    return r;
}

VectorForm VectorForm::homogeneous(int k) const {
    VectorForm r = *this;
    for (auto& f : r.comps_) f = f.homogeneous(k);
    return r;
}

VectorForm VectorForm::evaluate(const std::vector<GaussRational>& t) const {
    VectorForm r = *this;
    for (auto& f : r.comps_) f = f.evaluate(t);
    return r;
}

VectorForm& VectorForm::operator+=(const VectorForm& o) {
    check_same(model_, o.model_);
    for (int g = 0; g < slots(); ++g) comps_[g] += o.comps_[g];
    return *this;
}

VectorForm& VectorForm::operator-=(const VectorForm& o) {
    check_same(model_, o.model_);
    for (int g = 0; g < slots(); ++g) comps_[g] -= o.comps_[g];
    return *this;
}

VectorForm& VectorForm::operator*=(const Series& c) {
    for (auto& f : comps_) f *= c;
    return *this;
}

std::string VectorForm::str() const {
    std::string s;
    for (int g = 0; g < slots(); ++g) {
        if (comps_[g].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "[" + comps_[g].str() + "]*" + frame_label(g, n());
    }
    return s.empty() ? "0" : s;
}

Form contract(const VectorForm& v, const Form& a) {
    check_same(v.model(), a.model());
    Form r(a.model());
    for (int g = 0; g < v.slots(); ++g) {
        const Form& vg = v[g];
        if (vg.is_zero()) continue;
        Mask bit = Mask(1) << g;
        for (const auto& [mask, c] : a.terms()) {
            if (!(mask & bit)) continue;
            Mask rest = mask & ~bit;
            int si = monomial::interior_sign(mask, g);
            for (const auto& [mv, cv] : vg.terms()) {
                int sw = monomial::wedge_sign(mv, rest);
                if (!sw) continue;
                Series x = cv * c;
                if (si * sw < 0) x = -x;
                r.add(mv | rest, x);
            }
        }
    }
    return r;
}

} // namespace nilcohom
