#include "nilcohom/error.hpp"
#include "nilcohom/model.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

using namespace nilcohom;

namespace {

SparseForm d_of(const ComplexModel& m, const SparseForm& f) {
    std::map<Mask, GaussRational> acc;
    for (const auto& [mask, c] : f)
        for (const auto& [m2, c2] : m.d_monomial(mask)) acc[m2] += c * c2;
    SparseForm out;
    for (auto& [k, v] : acc)
        if (!v.is_zero()) out.emplace_back(k, v);
    return out;
}

Mask bit(int g) { return Mask(1) << g; }

} // namespace

TEST(Model, ParseIwasawaOneLiner) {
    auto m = parse_model("dim 3; d p3 = -1 * p1^p2");
    EXPECT_EQ(m->n(), 3);
    SparseForm expect = {{bit(0) | bit(1), GaussRational(-1)}};
    EXPECT_EQ(m->d_generator(2), expect);
    EXPECT_TRUE(m->d_generator(0).empty());
    // conjugate: d q3 = -q1^q2
    SparseForm cexpect = {{bit(3) | bit(4), GaussRational(-1)}};
    EXPECT_EQ(m->d_generator(5), cexpect);
}

TEST(Model, TorusHasZeroDifferential) {
    auto m = parse_model("dim 3");
    for (Mask k = 0; k < 64; ++k) EXPECT_TRUE(m->d_monomial(k).empty());
}

TEST(Model, KodairaThurstonD2Zero) {
    auto m = parse_model("dim 2; d p2 = p1^q1");
    // d(p1 ^ q1) expands to zero; d of the conjugate generator is conj(p1^q1) = -p1^q1
    EXPECT_TRUE(m->d_monomial(bit(0) | bit(2)).empty());
    SparseForm expect = {{bit(0) | bit(2), GaussRational(-1)}};
    EXPECT_EQ(m->d_generator(3), expect);
}

TEST(Model, ParseErrorsCarryPosition) {
    try {
        parse_model("dim 3\nd p3 = -1 * p1^x2\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 2);
        EXPECT_EQ(e.column, 16);
    }
    EXPECT_THROW(parse_model("d p1 = p1^p2"), ParseError);
    EXPECT_THROW(parse_model("dim 2; d p2 = q1^q1"), ParseError);
    EXPECT_THROW(parse_model("dim 2; d p3 = p1^p2"), ParseError);
    EXPECT_THROW(parse_model("dim 2; d p2 = 1/0 * p1^p2"), ParseError);
    EXPECT_THROW(parse_model("dim 2; dim 3"), ParseError);
}

TEST(Model, IntegrabilityViolationRejected) {
    ModelData data = parse_model_data("dim 2; d p2 = q1^q2");
    IntegrabilityReport rep = check_integrability(data);
    EXPECT_FALSE(rep.passed);
    ASSERT_EQ(rep.generators[1].part02.size(), 1u);
    EXPECT_THROW(make_model(data), ModelError);
}

TEST(Model, D2FailureRejected) {
    // d p3 = p1^p2, d p2 = p1^q1: d(d p3) = -p1^p1^q1 = 0, but d p1 = p2^q2 breaks it
    ModelData data = parse_model_data("dim 3; d p1 = p2^q2; d p2 = p1^q1");
    IntegrabilityReport rep = check_integrability(data);
    EXPECT_FALSE(rep.passed);
    EXPECT_THROW(make_model(data), ModelError);
}

TEST(Model, IntegrabilityReportIwasawa) {
    auto m = catalog("iwasawa3");
    IntegrabilityReport rep = check_integrability(m->data());
    EXPECT_TRUE(rep.passed);
    EXPECT_EQ(rep.generators[2].part20.size(), 1u);
    EXPECT_TRUE(rep.generators[2].part11.empty());
}

TEST(Model, ComplexCoefficients) {
    auto m = parse_model("dim 2; d p2 = 1/2 + 1/3 i * p1^q1");
    SparseForm expect = {{bit(0) | bit(2), GaussRational(mpq_class(1, 2), mpq_class(1, 3))}};
    EXPECT_EQ(m->d_generator(1), expect);
    auto m2 = parse_model("dim 2; d p2 = (-1/2 + 1/3 i) * p1^q1 - i * p1^p2");
    SparseForm expect2 = {{bit(0) | bit(1), GaussRational::i() * GaussRational(-1)},
                          {bit(0) | bit(2), GaussRational(mpq_class(-1, 2), mpq_class(1, 3))}};
    EXPECT_EQ(m2->d_generator(1), expect2);
}

TEST(Model, CatalogAndSerializeRoundTrip) {
    for (const auto& name : catalog_names()) {
        auto m = catalog(name);
        std::string text = serialize_model(*m);
        auto again = parse_model(text);
        EXPECT_EQ(serialize_model(*again), text) << name;
        EXPECT_EQ(again->data().d, m->data().d) << name;
    }
    EXPECT_EQ(catalog("iwasawa3")->n(), 3);
    EXPECT_EQ(catalog("kodaira-thurston")->n(), 2);
    EXPECT_THROW(catalog("nope"), ModelError);
}

TEST(Model, SerializeRoundTripRandom) {
    std::mt19937_64 rng(19);
    int accepted = 0;
    for (int trial = 0; trial < 400 && accepted < 60; ++trial) {
        ModelData data;
        data.n = 2 + int(rng() % 2);
        data.name = "random";
        // nilpotent-style: dp_k only involves generators of lower index, (2,0) and (1,1) parts
        for (int k = 1; k < data.n; ++k) {
            std::vector<StructureTerm> terms;
            int nt = int(rng() % 3);
            for (int t = 0; t < nt; ++t) {
                int a = int(rng() % k), b = int(rng() % k);
                Factor fa{a, false}, fb{b, rng() % 2 == 1};
                if (fa == fb) continue;
                GaussRational c(mpq_class(long(rng() % 5) - 2, 1 + long(rng() % 3)), mpq_class(long(rng() % 3) - 1, 2));
                if (c.is_zero()) continue;
                terms.push_back({c, {fa, fb}});
            }
            if (!terms.empty()) data.d[k] = terms;
        }
        ModelPtr m;
        try {
            m = make_model(data);
        } catch (const ModelError&) {
            continue;
        }
        ++accepted;
        std::string text = serialize_model(*m);
        auto again = parse_model(text);
        EXPECT_EQ(serialize_model(*again), text);
        for (int g = 0; g < m->generators(); ++g) {
            EXPECT_TRUE(d_of(*m, m->d_generator(g)).empty());
            EXPECT_EQ(again->d_generator(g), m->d_generator(g));
        }
    }
    EXPECT_GT(accepted, 10);
}

TEST(Model, ConjugationCommutesWithD) {
    for (const auto& name : catalog_names()) {
        auto m = catalog(name);
        int n = m->n();
        for (Mask mask = 0; mask < (Mask(1) << (2 * n)); ++mask) {
            // conj(d e_m) vs d(conj e_m)
            SparseForm lhs;
            std::map<Mask, GaussRational> acc;
            for (const auto& [m2, c] : m->d_monomial(mask))
                acc[monomial::conj_mask(m2, n)] += c.conj() * GaussRational(monomial::conj_sign(m2, n));
            for (auto& [k, v] : acc)
                if (!v.is_zero()) lhs.emplace_back(k, v);
            SparseForm rhs;
            int s = monomial::conj_sign(mask, n);
            for (const auto& [m2, c] : m->d_monomial(monomial::conj_mask(mask, n))) rhs.emplace_back(m2, c * GaussRational(s));
            EXPECT_EQ(lhs, rhs) << name << " " << monomial::str(mask, n);
            // d^2 = 0 on every monomial
            EXPECT_TRUE(d_of(*m, m->d_monomial(mask)).empty());
        }
    }
}

TEST(Model, FrameStructure) {
    auto iw = catalog("iwasawa3");
    auto br = frame_structure(*iw);
    ASSERT_EQ(br.size(), 2u);  // [Z1,Z2] and [Zb1,Zb2]
    EXPECT_EQ(br[0].a, 0);
    EXPECT_EQ(br[0].b, 1);
    ASSERT_EQ(br[0].value.size(), 1u);
    EXPECT_EQ(br[0].value[0].first, 2);
    EXPECT_EQ(br[0].value[0].second, GaussRational(1));  // [Z1, Z2] = Z3
    EXPECT_TRUE(frame_structure(*catalog("torus3")).empty());
    auto kt = frame_structure(*catalog("kodaira-thurston"));
    ASSERT_EQ(kt.size(), 1u);  // [Z1, Zb1] = -Z2 + Zb2
    EXPECT_EQ(kt[0].a, 0);
    EXPECT_EQ(kt[0].b, 2);
    ASSERT_EQ(kt[0].value.size(), 2u);
    EXPECT_EQ(kt[0].value[0], (std::pair<int, GaussRational>(1, GaussRational(-1))));
    EXPECT_EQ(kt[0].value[1], (std::pair<int, GaussRational>(3, GaussRational(1))));
}

TEST(Model, CatalogDirectoryLookup) {
    auto dir = std::filesystem::temp_directory_path() / "nilcohom_catalog_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "heis.model") << "dim 3\n# comment\nd p3 = p1^p2\n";
    setenv("NILCOHOM_CATALOG_DIR", dir.c_str(), 1);
    auto m = catalog("heis");
    EXPECT_EQ(m->name(), "heis");
    EXPECT_EQ(m->n(), 3);
    unsetenv("NILCOHOM_CATALOG_DIR");
}
