#include "nilcohom/identities.hpp"

#include "nilcohom/algebra.hpp"
#include "nilcohom/deform.hpp"
#include "nilcohom/sampling.hpp"

#include <functional>
#include <sstream>

namespace nilcohom {

namespace {

struct Env {
    ModelPtr model;
    Sampler& s;
    const KuranishiFamily& fam;
    int trial;
};

// Sparse random Beltrami differentials; every fourth one has series coefficients.
Beltrami some_beltrami(Env& e) {
    if (e.trial % 4 == 3) return e.s.beltrami(e.model, 2, 3, 2);
    return e.s.beltrami(e.model, 0, Series::kExactOrder, 2);
}

Form some_form(Env& e, int k = -1) {
    if (e.trial % 4 == 3) return e.s.form(e.model, k, 2, 3, 3);
    return e.s.form(e.model, k, 0, Series::kExactOrder, 3);
}

bool conjugated_d(Env& e) {
    Beltrami phi = some_beltrami(e);
    Form a = some_form(e);
    Form lhs = exp_contract(phi * GaussRational(-1), d(exp_contract(phi, a)));
    Beltrami c = delbar_beltrami(phi) - bracket(phi, phi) * GaussRational(mpq_class(1, 2));
    return lhs == d(a) - lie_derivative_10(phi, a) + contract(c, a);
}

bool bracket_action_all_degrees(Env& e) {
    Beltrami phi = some_beltrami(e), psi = some_beltrami(e);
    Form alpha = some_form(e);
    return contract(bracket(phi, psi), alpha) == bracket_action(phi, psi, alpha);
}

Beltrami small_constant(Env& e) { return e.s.beltrami(e.model, 0, Series::kExactOrder, 2) * GaussRational(mpq_class(1, 7)); }

bool rho_factorization(Env& e) {
    Beltrami phi = e.trial % 4 == 3 ? e.s.beltrami(e.model, 2, 3, 2) : small_constant(e);
    Form a = some_form(e);
    return rho(phi, a) == rho_direct(phi, a) && rho_inverse(phi, rho(phi, a)) == a;
}

bool dbar_t_obstruction(Env& e) {
    std::vector<GaussRational> t(e.fam.m);
    for (int k = 0; k < 3; ++k) t[e.s.below(e.fam.m)] = e.s.sample_component();
    Beltrami phi = e.fam.phi.evaluate(t);
    int p = e.s.below(e.model->n() + 1), q = e.s.below(e.model->n() + 1);
    Form a = e.s.form_pq(e.model, p, q, 0, Series::kExactOrder, 3);
    Form pulled = ext_map_pair_inverse(phi, rho(phi, a));
    Form dbar_t = pulled_back_d(phi, pulled).component(p, q + 1);
    return rho_inverse(phi, ext_map_pair(phi, dbar_t)) == deformed_delbar(phi, a);
}

bool d_squared(Env& e) {
    Form a = some_form(e);
    return d(d(a)).is_zero() && d(a) == del(a) + delbar(a);
}
bool del_squared(Env& e) { return del(del(some_form(e))).is_zero(); }
bool delbar_squared(Env& e) { return delbar(delbar(some_form(e))).is_zero(); }
bool anticommute(Env& e) {
    Form a = some_form(e);
    return del(delbar(a)) == -delbar(del(a));
}

template <Form (*D)(const Form&)>
bool leibniz(Env& e) {
    int k = e.s.below(2 * e.model->n() + 1);
    Form a = some_form(e, k), b = some_form(e);
    Form second = wedge(a, D(b));
    if (k % 2) second = -second;
    return D(wedge(a, b)) == wedge(D(a), b) + second;
}

Form d_fn(const Form& a) { return d(a); }
Form del_fn(const Form& a) { return del(a); }
Form delbar_fn(const Form& a) { return delbar(a); }

using Check = bool (*)(Env&);

const std::vector<std::pair<std::string, Check>>& checks() {
    static const std::vector<std::pair<std::string, Check>> list = {
        {"conjugated_d", conjugated_d},
        {"bracket_action", bracket_action_all_degrees},
        {"rho_factorization", rho_factorization},
        {"dbar_t_obstruction", dbar_t_obstruction},
        {"d_squared", d_squared},
        {"del_squared", del_squared},
        {"delbar_squared", delbar_squared},
        {"del_delbar_anticommute", anticommute},
        {"leibniz_d", leibniz<d_fn>},
        {"leibniz_del", leibniz<del_fn>},
        {"leibniz_delbar", leibniz<delbar_fn>},
    };
    return list;
}

} // namespace

const std::vector<std::string>& identity_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> r;
        for (const auto& [name, f] : checks()) r.push_back(name);
        return r;
    }();
    return names;
}

bool IdentityReport::ok() const {
    for (const auto& r : results)
        if (r.failures) return false;
    return true;
}

std::string IdentityReport::tsv() const {
    std::ostringstream os;
    os << "model\tidentity\tcases\tfailures\tverdict\n";
    for (const auto& r : results)
        os << r.model << "\t" << r.identity << "\t" << r.cases << "\t" << r.failures << "\t" << (r.failures ? "fail" : "pass") << "\n";
    return os.str();
}

IdentityReport run_identity_suite(const ModelPtr& model, std::uint64_t seed, int cases) {
    KuranishiFamily fam = kuranishi_series(model, 3);
    IdentityReport rep;
    std::uint64_t salt = 0;
    for (const auto& [name, check] : checks()) {
        Sampler s(seed * 1000003 + salt++);
        IdentityResult r{model->name(), name, cases, 0};
        for (int trial = 0; trial < cases; ++trial) {
            Env e{model, s, fam, trial};
            if (!check(e)) ++r.failures;
        }
        rep.results.push_back(r);
    }
    return rep;
}

} // namespace nilcohom
