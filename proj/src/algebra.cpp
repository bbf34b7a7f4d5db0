#include "nilcohom/algebra.hpp"

#include "nilcohom/error.hpp"

#include <map>

namespace nilcohom {

Form exp_contract(const Beltrami& phi, const Form& a) {
    Form sum = a;
    Form term = a;
    for (int k = 1; k <= 2 * a.n() + 1; ++k) {
        term = contract(phi, term) * GaussRational(mpq_class(1, k));
        if (term.is_zero()) break;
        sum += term;
    }
    return sum;
}

Form lie_derivative_10(const Beltrami& phi, const Form& a) {
    return contract(phi, del(a)) - del(contract(phi, a));
}

Form bracket_action(const Beltrami& phi, const Beltrami& psi, const Form& alpha) {
    Form r = -del(contract(psi, contract(phi, alpha)));
    r -= contract(psi, contract(phi, del(alpha)));
    r += contract(phi, del(contract(psi, alpha)));
    r += contract(psi, del(contract(phi, alpha)));
    return r;
}

Beltrami bracket(const Beltrami& phi, const Beltrami& psi) {
    Beltrami r(phi.model());
    for (int k = 0; k < phi.n(); ++k) r[k] = bracket_action(phi, psi, Form::generator(phi.model(), k));
    return r;
}

Beltrami delbar_beltrami(const Beltrami& phi) {
    const ModelPtr& model = phi.model();
    int n = model->n();
    // dz[i] = delbar Z_i as T^{1,0}-valued (0,1)-form: sum_j conj(e_j) (x) [Zb_j, Z_i]^{1,0}
    std::vector<Beltrami> dz(n, Beltrami(model));
    for (const auto& br : frame_structure(*model)) {
        if (br.a >= n || br.b < n) continue;
        int i = br.a, j = br.b - n;
        for (const auto& [k, c] : br.value) {
            if (k >= n) continue;
            dz[i][k] += Form::generator(model, n + j) * (-c);
        }
    }
    Beltrami r(model);
    for (int k = 0; k < n; ++k) r[k] = delbar(phi[k]);
    for (int i = 0; i < n; ++i) {
        for (const auto& [mask, c] : phi[i].terms()) {
            Form term = Form::monomial(model, mask, monomial::degree(mask) % 2 ? -c : c);
            for (int k = 0; k < n; ++k)
                if (!dz[i][k].is_zero()) r[k] += wedge(term, dz[i][k]);
        }
    }
    return r;
}

Beltrami delbar_beltrami_commutator(const Beltrami& phi) {
    int q = 1;
    for (int i = 0; i < phi.n(); ++i)
        if (!phi[i].is_zero()) {
            q = monomial::degree(phi[i].terms().begin()->first);
            break;
        }
    // graded commutator with iota_phi, which has degree q - 1
    Beltrami r(phi.model());
    for (int k = 0; k < phi.n(); ++k) {
        Form x = contract(phi, delbar(Form::generator(phi.model(), k)));
        r[k] = (q - 1) % 2 == 0 ? delbar(phi[k]) - x : delbar(phi[k]) + x;
    }
    return r;
}

Form deformed_delbar(const Beltrami& phi, const Form& a) { return delbar(a) - lie_derivative_10(phi, a); }

// ---------------------------------------------------------------------------

EndomorphismField EndomorphismField::identity(ModelPtr model) {
    std::size_t N = model->generators();
    return {std::move(model), SeriesMatrix::identity(N)};
}

Form EndomorphismField::image(int g) const {
    Form f(model);
    for (std::size_t h = 0; h < m.cols(); ++h) f.add(Mask(1) << h, m(g, h));
    return f;
}

bool EndomorphismField::is_identity() const { return m == SeriesMatrix::identity(m.rows()); }

EndomorphismField then(const EndomorphismField& a, const EndomorphismField& b) { return {a.model, a.m * b.m}; }

SeriesMatrix beltrami_matrix(const Beltrami& phi) {
    int n = phi.n();
    if (!phi.is_type_10()) throw MathError("expected a T^{1,0}-valued form");
    SeriesMatrix P(n, n);
    for (int j = 0; j < n; ++j)
        for (const auto& [mask, c] : phi[j].terms()) {
            if (monomial::degree(mask) != 1 || mask < (Mask(1) << n))
                throw MathError("Beltrami differential must have (0,1)-form components");
            P(j, __builtin_ctz(mask) - n) = c;
        }
    return P;
}

EndomorphismField one_minus_phibar_phi(const Beltrami& phi) {
    int n = phi.n();
    SeriesMatrix P = beltrami_matrix(phi);
    SeriesMatrix Q = P.adjoint().transpose() * P;
    EndomorphismField e = EndomorphismField::identity(phi.model());
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) e.m(n + j, n + k) -= Q(j, k);
    return e;
}

EndomorphismField inverse_endo(const EndomorphismField& e) {
    std::size_t N = e.m.rows();
    SeriesMatrix I = SeriesMatrix::identity(N);
    int order = Series::kExactOrder;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            if (e.m(i, j).constant() != GaussRational(i == j ? 1 : 0))
                throw MathError("inverse_endo: order-0 part is not the identity");
            order = std::min(order, e.m(i, j).order());
        }
    SeriesMatrix Q = I - e.m;
    SeriesMatrix sum = I, pw = I;
    for (int k = 1; k <= order; ++k) {
        pw = pw * Q;
        if (pw.is_zero()) break;
        sum += pw;
    }
    return {e.model, sum};
}

SeriesMatrix invert_series_matrix(const SeriesMatrix& a) {
    std::size_t N = a.rows();
    if (a.cols() != N) throw MathError("inverse of a non-square matrix");
    SeriesMatrix w = hstack(a, SeriesMatrix::identity(N));
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t p = c;
        while (p < N && w(p, c).constant().is_zero()) ++p;
        if (p == N) throw MathError("matrix is not invertible in the truncated ring");
        if (p != c)
            for (std::size_t j = 0; j < 2 * N; ++j) std::swap(w(p, j), w(c, j));
        Series inv = inverse(w(c, c));
        for (std::size_t j = 0; j < 2 * N; ++j)
            if (!w(c, j).is_zero()) w(c, j) = w(c, j) * inv;
        for (std::size_t i = 0; i < N; ++i) {
            if (i == c || w(i, c).is_zero()) continue;
            Series f = w(i, c);
            for (std::size_t j = 0; j < 2 * N; ++j)
                if (!w(c, j).is_zero()) w(i, j) -= f * w(c, j);
        }
    }
    SeriesMatrix r(N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = w(i, N + j);
    return r;
}

EndomorphismField invert_endo(const EndomorphismField& e) { return {e.model, invert_series_matrix(e.m)}; }

Form substitute(const std::vector<Form>& images, const Form& a) {
    Form r(a.model());
    std::map<Mask, Form> cache;
    for (const auto& [mask, c] : a.terms()) {
        auto it = cache.find(mask);
        if (it == cache.end()) {
            Form img = Form::scalar(a.model(), Series(1));
            for (Mask rest = mask; rest; rest &= rest - 1) img = wedge(img, images[__builtin_ctz(rest)]);
            it = cache.emplace(mask, std::move(img)).first;
        }
        r += it->second * c;
    }
    return r;
}

namespace {

std::vector<Form> images_of(const EndomorphismField& e) {
    std::vector<Form> imgs;
    for (std::size_t g = 0; g < e.m.rows(); ++g) imgs.push_back(e.image(int(g)));
    return imgs;
}

} // namespace

Form simultaneous_contract(const EndomorphismField& e, const Form& a) { return substitute(images_of(e), a); }

EndomorphismField ext_generators(const Beltrami& phi) {
    int n = phi.n();
    SeriesMatrix P = beltrami_matrix(phi);
    EndomorphismField e = EndomorphismField::identity(phi.model());
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            e.m(i, n + l) += P(i, l);
            e.m(n + i, l) += P(i, l).conj();
        }
    return e;
}

Form ext_map_pair(const Beltrami& phi, const Form& a) {
    int n = phi.n();
    std::vector<Form> imgs;
    for (int g = 0; g < 2 * n; ++g) {
        Form x = Form::generator(phi.model(), g);
        imgs.push_back(g < n ? x + phi[g] : x + phi[g - n].conj());
    }
    return substitute(imgs, a);
}

Form ext_map_pair_inverse(const Beltrami& phi, const Form& a) {
    EndomorphismField e = ext_generators(phi);
    bool unipotent = phi.valuation() >= 1;
    return simultaneous_contract(unipotent ? inverse_endo(e) : invert_endo(e), a);
}

namespace {

EndomorphismField inverse_of_one_minus(const Beltrami& phi) {
    EndomorphismField m = one_minus_phibar_phi(phi);
    return phi.valuation() >= 1 ? inverse_endo(m) : invert_endo(m);
}

} // namespace

Form rho(const Beltrami& phi, const Form& a) {
    return ext_map_pair(phi, simultaneous_contract(inverse_of_one_minus(phi), a));
}

Form rho_direct(const Beltrami& phi, const Form& a) {
    const ModelPtr& model = phi.model();
    int n = phi.n();
    SeriesMatrix P = beltrami_matrix(phi);
    SeriesMatrix Pbar = P.adjoint().transpose();
    SeriesMatrix A = SeriesMatrix::identity(n) - Pbar * P;
    SeriesMatrix Ainv = invert_series_matrix(A);
    std::vector<Form> proj;
    for (int j = 0; j < n; ++j) {
        Form f(model);
        for (int k = 0; k < n; ++k) {
            if (Ainv(j, k).is_zero()) continue;
            f += (Form::generator(model, n + k) + phi[k].conj()) * Ainv(j, k);
        }
        proj.push_back(std::move(f));
    }
    Form r(model);
    for (const auto& [mask, c] : a.terms()) {
        Form img = exp_contract(phi, Form::monomial(model, monomial::holo_part(mask, n)));
        for (Mask rest = monomial::antiholo_part(mask, n); rest; rest &= rest - 1) img = wedge(img, proj[__builtin_ctz(rest)]);
        r += img * c;
    }
    return r;
}

Form rho_inverse(const Beltrami& phi, const Form& a) {
    return simultaneous_contract(one_minus_phibar_phi(phi), ext_map_pair_inverse(phi, a));
}

Form pulled_back_delbar(const Beltrami& phi, const Form& a) {
    EndomorphismField m = one_minus_phibar_phi(phi);
    Form ma = simultaneous_contract(m, a);
    Form x = delbar(ma) + del(contract(phi, ma)) - contract(phi, del(ma));
    return simultaneous_contract(inverse_of_one_minus(phi), x);
}

Form pulled_back_del(const Beltrami& phi, const Form& a) { return pulled_back_delbar(phi, a.conj()).conj(); }

Form pulled_back_d(const Beltrami& phi, const Form& a) { return ext_map_pair_inverse(phi, d(ext_map_pair(phi, a))); }

} // namespace nilcohom
