#ifndef NILCOHOM_SAMPLING_HPP
#define NILCOHOM_SAMPLING_HPP

#include "nilcohom/form.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace nilcohom {

// Seeded generator of small exact test data; reproducible across platforms (raw engine output only).
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next() { return rng_(); }
    int below(int k) { return int(rng_() % std::uint64_t(k)); }
    bool coin() { return rng_() & 1; }

    // Entries from {0, +-1, +-2, +-1/2, +-1/3} + i {same}.
    GaussRational small();
    // Point-sample components: {+-1/7, +-1/5, +-i/7, +-i/5, (1+i)/7, (1-i)/5}.
    GaussRational sample_component();
    std::vector<GaussRational> sample_point(int m);

    // Random polynomial in m parameters with terms of degree 0..order.
    Series series(int m, int order, int terms = 3);
    // Random form of total degree k (k < 0: mixed degrees).
    Form form(const ModelPtr& model, int k, int m = 0, int order = Series::kExactOrder, int terms = 4);
    Form form_pq(const ModelPtr& model, int p, int q, int m = 0, int order = Series::kExactOrder, int terms = 4);
    // T^{1,0}-valued (0,1)-form; with m > 0 coefficients have valuation >= 1.
    VectorForm beltrami(const ModelPtr& model, int m = 0, int order = Series::kExactOrder, int terms = 3);

private:
    Form from_basis(const ModelPtr& model, const std::vector<Mask>& basis, int m, int order, int terms);

    std::mt19937_64 rng_;
};

} // namespace nilcohom

#endif
