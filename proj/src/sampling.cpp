#include "nilcohom/sampling.hpp"

namespace nilcohom {

namespace {

GaussRational pick_small(int k) {
    static const long num[] = {0, 1, -1, 2, -2, 1, -1, 1, -1};
    static const long den[] = {1, 1, 1, 1, 1, 2, 2, 3, 3};
    return GaussRational(mpq_class(num[k], den[k]));
}

} // namespace

GaussRational Sampler::small() {
    GaussRational re = pick_small(below(9));
    GaussRational im = pick_small(below(9));
    return re + im * GaussRational::i();
}

GaussRational Sampler::sample_component() {
    switch (below(10)) {
    case 0: return {mpq_class(1, 7)};
    case 1: return {mpq_class(-1, 7)};
    case 2: return {mpq_class(1, 5)};
    case 3: return {mpq_class(-1, 5)};
    case 4: return {0, mpq_class(1, 7)};
    case 5: return {0, mpq_class(-1, 7)};
    case 6: return {0, mpq_class(1, 5)};
    case 7: return {0, mpq_class(-1, 5)};
    case 8: return {mpq_class(1, 7), mpq_class(1, 7)};
    default: return {mpq_class(1, 5), mpq_class(-1, 5)};
    }
}

std::vector<GaussRational> Sampler::sample_point(int m) {
    std::vector<GaussRational> t;
    for (int i = 0; i < m; ++i) t.push_back(sample_component());
    return t;
}

Series Sampler::series(int m, int order, int terms) {
    Series s(GaussRational(0), order);
    for (int k = 0; k < terms; ++k) {
        int deg = m == 0 ? 0 : below(order + 1);
        Series t(small(), order);
        for (int j = 0; j < deg; ++j) {
            int i = below(m);
            t = t * (coin() ? Series::variable(i, order) : Series::conj_variable(i, order));
        }
        s += t;
    }
    return s;
}

Form Sampler::from_basis(const ModelPtr& model, const std::vector<Mask>& basis, int m, int order, int terms) {
    Form f(model);
    if (basis.empty()) return f;
    for (int k = 0; k < terms; ++k) f.add(basis[below(int(basis.size()))], series(m, order, 2));
    return f;
}

Form Sampler::form(const ModelPtr& model, int k, int m, int order, int terms) {
    int n = model->n();
    std::vector<Mask> basis;
    if (k < 0) {
        for (Mask x = 0; x < (Mask(1) << (2 * n)); ++x) basis.push_back(x);
    } else {
        basis = monomial::basis_total(n, k);
    }
    return from_basis(model, basis, m, order, terms);
}

Form Sampler::form_pq(const ModelPtr& model, int p, int q, int m, int order, int terms) {
    return from_basis(model, monomial::basis(model->n(), p, q), m, order, terms);
}

VectorForm Sampler::beltrami(const ModelPtr& model, int m, int order, int terms) {
    int n = model->n();
    std::vector<Form> comps(n, Form(model));
    for (int k = 0; k < terms; ++k) {
        int i = below(n), l = below(n);
        Series c = m == 0 ? Series(small(), order) : series(m, order, 2);
        if (m > 0) c -= Series(c.constant(), order);
        comps[i].add(Mask(1) << (n + l), c);
    }
    return VectorForm::beltrami(model, comps);
}

} // namespace nilcohom
