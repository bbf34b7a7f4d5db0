#ifndef NILCOHOM_IDENTITIES_HPP
#define NILCOHOM_IDENTITIES_HPP

#include "nilcohom/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nilcohom {

struct IdentityResult {
    std::string model;
    std::string identity;
    int cases = 0;
    int failures = 0;
};

struct IdentityReport {
    std::vector<IdentityResult> results;
    bool ok() const;
    std::string tsv() const;
};

const std::vector<std::string>& identity_names();

// Seeded random cases for every identity on one model.
IdentityReport run_identity_suite(const ModelPtr& model, std::uint64_t seed, int cases = 1000);

} // namespace nilcohom

#endif
