#ifndef NILCOHOM_EXTEND_HPP
#define NILCOHOM_EXTEND_HPP

#include "nilcohom/deform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilcohom {

struct ExtensionResult {
    int p = 0, q = 0, N = 0;
    Form mu0;
    Form mu;
    Form rho_mu;
    bool closed_ok = false;   // d(e^{iota_phi} mu) = 0 through order N
    bool dbar_t_ok = false;   // rho_phi(mu) is delbar_t-closed
    bool system_ok = false;   // del mu = 0 and delbar mu = -del(phi -| mu)
    bool recursion_ok = false;  // the same system order by order
    std::vector<mpq_class> residual_norms;  // squared norm of d(e^{iota_phi} mu) per order

    std::string report() const;
};

// del (del delbar)^* G_BC del iota_phi x for x of bidegree (p,q).
Form q_operator(const Beltrami& phi, const Form& x);

ExtensionResult extend_d_closed(const Form& mu0, const Beltrami& phi, int N);

struct Diagnostic {
    bool ok = true;
    std::vector<std::string> lines;
    std::string str() const;
};

Diagnostic verify_extension(const ExtensionResult& res, const Beltrami& phi);

// Solves x = seed + Q(x) by fixed-point iteration from a perturbed start and compares with res.mu.
bool uniqueness_check(const ExtensionResult& res, const Beltrami& phi, const Form& perturbation);

struct InjectivityVerdict {
    bool injective = true;
    int classes = 0;
    std::vector<int> rank_at;  // rank of the extended classes modulo im D_t per sample
    std::optional<std::size_t> failing_sample;
    std::optional<int> failing_class;
    std::vector<std::string> failed_hypotheses;
    std::vector<std::string> notes;
    std::string str() const;
};

InjectivityVerdict injectivity_test(const KuranishiFamily& fam, int p, int q,
                                    const std::vector<std::vector<GaussRational>>& samples);

struct Positivity {
    enum Kind { positive_exact, positive_sampled, not_positive } kind = positive_exact;
    int samples = 0;
    std::string witness;
    bool positive() const { return kind != not_positive; }
    std::string str() const;
};

// omega real (p,p) with constant coefficients; sampled decisions draw tau from the seed.
Positivity transverse_positivity(const Form& omega, int p, int samples = 500, std::uint64_t seed = 0);

struct PKahlerSample {
    std::vector<GaussRational> t;
    Form omega_pp;     // pulled back to the central fiber basis
    Form beta;
    Form omega_tilde;  // pulled back; E(omega_tilde) is the form on X_t
    bool real_ok = false;
    bool closed_ok = false;
    Positivity positivity;
};

struct PKahlerResult {
    int p = 0, N = 0;
    Form omega0;
    ExtensionResult extension;
    Form omega_pp;   // rho_phi(mu) as a series
    bool beta_positive_order = false;
    bool omega0_recovered = false;
    std::vector<PKahlerSample> samples;

    bool ok() const;
    std::string report() const;
};

PKahlerResult p_kahler_extend(const Form& omega0, const KuranishiFamily& fam, int p, int N,
                              const std::vector<std::vector<GaussRational>>& samples);

// T^{0,1}-valued (1,0)-form (1 - phibar phi)^{-1} phibar.
VectorForm psi_of(const Beltrami& phi);

struct MildResult {
    ExtensionResult result;  // mu holds Omega~', rho_mu holds e^{iota_phi | iota_phibar}(Omega)
    Form omega_tilde;
    Form Omega;
};

MildResult mild_extension_two_eq(const Form& omega0, const Beltrami& phi, int N);

struct RouteComparison {
    bool agree = true;
    std::vector<bool> per_order;
    std::string str() const;
};

// (Omega~' - mu) lies in im del delbar at every order.
RouteComparison compare_routes(const ExtensionResult& bc, const MildResult& mild);

} // namespace nilcohom

#endif
