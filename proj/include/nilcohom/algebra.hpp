#ifndef NILCOHOM_ALGEBRA_HPP
#define NILCOHOM_ALGEBRA_HPP

#include "nilcohom/form.hpp"
#include "nilcohom/matrix.hpp"

#include <vector>

namespace nilcohom {

using SeriesMatrix = Matrix<Series>;

// sum_k iota_phi^k / k!
Form exp_contract(const Beltrami& phi, const Form& a);

// iota_phi del a - del iota_phi a
Form lie_derivative_10(const Beltrami& phi, const Form& a);

// Right-hand side of the contraction identity characterizing [phi, psi] -| alpha.
Form bracket_action(const Beltrami& phi, const Beltrami& psi, const Form& alpha);
// Component k is bracket_action evaluated at alpha = phi^k.
Beltrami bracket(const Beltrami& phi, const Beltrami& psi);

// delbar on T^{1,0}-valued forms through the frame: delbar Z_i from the mixed brackets.
Beltrami delbar_beltrami(const Beltrami& phi);
// Same operator from iota_{delbar phi} = delbar iota_phi - iota_phi delbar evaluated on generators.
Beltrami delbar_beltrami_commutator(const Beltrami& phi);

// delbar a - L_phi a
Form deformed_delbar(const Beltrami& phi, const Form& a);

// Linear map on generators: row g holds the image of generator g.
struct EndomorphismField {
    ModelPtr model;
    SeriesMatrix m;

    static EndomorphismField identity(ModelPtr model);
    Form image(int g) const;
    bool is_identity() const;
    friend bool operator==(const EndomorphismField& a, const EndomorphismField& b) { return a.m == b.m; }
};

// Composition "apply a, then b" on generators.
EndomorphismField then(const EndomorphismField& a, const EndomorphismField& b);

// Phi with phi^j = sum_l Phi(j, l) conj(phi^l); throws unless every component is a (0,1)-form.
SeriesMatrix beltrami_matrix(const Beltrami& phi);

// Identity on (1,0)-slots; conj(phi^j) -> conj(phi^j) - sum_k (conj(Phi) Phi)(j, k) conj(phi^k).
EndomorphismField one_minus_phibar_phi(const Beltrami& phi);
// Neumann series; requires the order-0 part to be the identity.
EndomorphismField inverse_endo(const EndomorphismField& e);
// Gauss-Jordan over the truncated ring; requires an invertible order-0 part.
EndomorphismField invert_endo(const EndomorphismField& e);
SeriesMatrix invert_series_matrix(const SeriesMatrix& a);

// Algebra homomorphism generated by e_g -> images[g].
Form substitute(const std::vector<Form>& images, const Form& a);
Form simultaneous_contract(const EndomorphismField& e, const Form& a);

// Generator images of e^{iota_phi | iota_phibar}: e_k -> e_k + phi^k, conj(e_j) -> conj(e_j) + conj(phi^j).
EndomorphismField ext_generators(const Beltrami& phi);
Form ext_map_pair(const Beltrami& phi, const Form& a);
Form ext_map_pair_inverse(const Beltrami& phi, const Form& a);

// ext_map_pair after (1 - phibar phi)^{-1} -| .
Form rho(const Beltrami& phi, const Form& a);
// Direct route: e^{iota_phi}(e_I) ^ prod_j P(conj e_j), P the (0,1)_t projection of conj(e_j).
Form rho_direct(const Beltrami& phi, const Form& a);
// Inverse of rho: (1 - phibar phi) -| after ext_map_pair_inverse.
Form rho_inverse(const Beltrami& phi, const Form& a);

// Pullbacks of delbar_t and del_t to the central fiber through ext_map_pair.
Form pulled_back_delbar(const Beltrami& phi, const Form& a);
Form pulled_back_del(const Beltrami& phi, const Form& a);
// ext_map_pair^{-1} d ext_map_pair, all components.
Form pulled_back_d(const Beltrami& phi, const Form& a);

} // namespace nilcohom

#endif
