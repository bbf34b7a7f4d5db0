#include "nilcohom/deform.hpp"
#include "nilcohom/error.hpp"
#include "nilcohom/sampling.hpp"

#include <gtest/gtest.h>

using namespace nilcohom;

namespace {

Form Q(const ModelPtr& m, int i) { return Form::phi(m, i, true); }

// phi^i = sum_j t_ij conj(phi^j) for i = 1..3, j = 1, 2 plus -(t11 t22 - t12 t21) conj(phi^3) on Z3,
// with t_ij the parameter attached to conj(phi^j) (x) Z_i.
Beltrami iwasawa_closed_form(const ModelPtr& m, int order) {
    auto t = [&](int i, int j) { return Series::variable(2 * i + j, order); };
    std::vector<Form> comps(3, Form(m));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) comps[i] += Q(m, j + 1) * t(i, j);
    comps[2] -= Q(m, 3) * (t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0));
    return Beltrami::beltrami(m, comps);
}

GaussRational r(long a, long b) { return GaussRational(mpq_class(a, b)); }

} // namespace

TEST(Deform, HarmonicBasis) {
    auto t1 = catalog("torus1");
    auto b1 = harmonic_beltrami_basis(t1);
    ASSERT_EQ(b1.size(), 1u);
    EXPECT_EQ(b1[0], Beltrami::single(Q(t1, 1), 0));
    EXPECT_EQ(harmonic_beltrami_basis(catalog("torus2")).size(), 4u);
    EXPECT_EQ(harmonic_beltrami_basis(catalog("torus3")).size(), 9u);
    auto iw = catalog("iwasawa3");
    auto basis = harmonic_beltrami_basis(iw);
    EXPECT_EQ(basis.size(), 6u);
    // rank-nullity on the vector-valued complex
    const QMatrix& d0 = vector_delbar_matrix(iw, 0);
    const QMatrix& d1 = vector_delbar_matrix(iw, 1);
    EXPECT_EQ(d1.cols() - linalg::rank(d1) - linalg::rank(d0), 6u);
    for (const auto& eta : basis) {
        EXPECT_TRUE(delbar_beltrami(eta).is_zero());
        for (const auto& c : d0.adjoint() * to_vvector(eta, 1)) EXPECT_TRUE(c.is_zero());
    }
}

TEST(Deform, VectorDelbarMatchesFrameOperator) {
    Sampler s(21);
    for (const auto& name : {"iwasawa3", "kodaira-thurston"}) {
        auto m = catalog(name);
        for (int trial = 0; trial < 10; ++trial) {
            Beltrami b = s.beltrami(m);
            EXPECT_EQ(from_vvector(m, vector_delbar_matrix(m, 1) * to_vvector(b, 1), 2), delbar_beltrami(b));
            EXPECT_TRUE(delbar_beltrami(delbar_beltrami(b)).is_zero());
        }
    }
}

TEST(Deform, KuranishiTorus) {
    for (int n = 1; n <= 3; ++n) {
        auto m = catalog("torus" + std::to_string(n));
        auto fam = kuranishi_series(m, 4);
        EXPECT_EQ(fam.m, n * n);
        EXPECT_EQ(fam.top_order, 1);
        EXPECT_TRUE(fam.terminated);
        EXPECT_FALSE(fam.obstructed());
        Beltrami linear(m);
        for (int nu = 0; nu < fam.m; ++nu) linear += fam.basis[nu] * Series::variable(nu, 4);
        EXPECT_EQ(fam.phi, linear);
    }
}

TEST(Deform, KuranishiIwasawa) {
    auto m = catalog("iwasawa3");
    auto fam = kuranishi_series(m, 3);
    EXPECT_EQ(fam.m, 6);
    EXPECT_EQ(fam.top_order, 2);
    EXPECT_TRUE(fam.terminated);
    EXPECT_FALSE(fam.obstructed());
    EXPECT_TRUE(check_maurer_cartan(fam.phi, 3).is_zero());
    // basis order: conj(phi^j) (x) Z_i with index 2i + j, matching the closed form's parameters
    EXPECT_EQ(fam.phi, iwasawa_closed_form(m, 3));
    // independent substitution into delbar phi = 1/2 [phi, phi]
    Beltrami cf = iwasawa_closed_form(m, 6);
    EXPECT_EQ(delbar_beltrami(cf), bracket(cf, cf) * r(1, 2));
}

TEST(Deform, MaurerCartanResidual) {
    auto m = catalog("iwasawa3");
    EXPECT_TRUE(check_maurer_cartan(Beltrami(m), 4).is_zero());
    Beltrami eta = Beltrami::single(Q(m, 1), 0) + Beltrami::single(Q(m, 2), 1);
    Series t = Series::variable(0, 4);
    Beltrami phi = eta * t;
    Beltrami res = check_maurer_cartan(phi, 4);
    EXPECT_FALSE(res.is_zero());
    EXPECT_EQ(res, bracket(eta, eta) * (t * t) * r(-1, 2));
    auto single = kuranishi_series(m, 4, {eta});
    EXPECT_EQ(single.m, 1);
    EXPECT_TRUE(check_maurer_cartan(single.phi, 4).is_zero());
    EXPECT_EQ(single.top_order, 2);
}

TEST(Deform, DeformedOperator) {
    auto m = catalog("iwasawa3");
    auto fam = kuranishi_series(m, 3);
    SeriesMatrix zero = deformed_operator(Beltrami(m), Deformed::delbar_t, 1, 1);
    EXPECT_EQ(evaluate(zero, {}), op_matrix(*m, Op::delbar, 1, 1));
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q + 1 <= 3; ++q) {
            SeriesMatrix a = deformed_operator(fam.phi, Deformed::delbar_t, p, q);
            SeriesMatrix b = deformed_operator(fam.phi, Deformed::delbar_t, p, q + 1);
            EXPECT_TRUE((b * a).is_zero());
        }
    auto t = default_samples(6, 1, 3)[0];
    EXPECT_EQ(linalg::rank(evaluate(deformed_operator(fam.phi, Deformed::delbar_t, 1, 0), t)), 1u);
    Beltrami bad = Beltrami::single(Q(m, 1), 0) * Series::variable(0, 3) + Beltrami::single(Q(m, 2), 1) * Series::variable(1, 3);
    EXPECT_THROW(deformed_operator(bad, Deformed::delbar_t, 1, 0), MathError);
}

TEST(Deform, HodgeNumbersAt) {
    for (const auto& name : {"torus2", "iwasawa3", "kodaira-thurston"}) {
        auto m = catalog(name);
        auto fam = kuranishi_series(m, 3);
        auto t0 = hodge_numbers_at(fam, std::vector<GaussRational>(fam.m));
        auto c = cohomology(*m);
        EXPECT_EQ(t0.h_dbar, c.h_dbar);
        EXPECT_EQ(t0.h_bc, c.h_bc);
        for (const auto& t : default_samples(fam.m, 3, 4)) {
            auto a = hodge_numbers_at(fam, t, true);
            auto b = hodge_numbers_at(fam, t, false);
            EXPECT_EQ(a.h_dbar, b.h_dbar);
            EXPECT_TRUE(b.h_bc.empty());
        }
    }
    auto m = catalog("iwasawa3");
    auto fam = kuranishi_series(m, 3);
    std::vector<GaussRational> t(6);
    t[0] = r(1, 7);
    auto h = hodge_numbers_at(fam, t);
    EXPECT_EQ(h.h_dbar[1][0], 2);
    EXPECT_EQ(h.h_dbar[2][0], 2);
    auto generic = hodge_numbers_at(fam, default_samples(6, 1, 0)[0]);
    EXPECT_EQ(generic.h_dbar[1][0], 2);
    EXPECT_EQ(generic.h_dbar[2][0], 1);
    // truncated non-terminating family evaluated off the Maurer-Cartan locus
    Beltrami eta = Beltrami::single(Q(m, 1), 0) + Beltrami::single(Q(m, 2), 1);
    KuranishiFamily broken = fam;
    broken.m = 1;
    broken.phi = eta * Series::variable(0, 3);
    EXPECT_THROW(hodge_numbers_at(broken, {r(1, 5)}), MathError);
}

TEST(Deform, ScanTorus) {
    auto m = catalog("torus2");
    auto fam = kuranishi_series(m, 2);
    auto rep = invariance_scan(fam, default_samples(fam.m, 4, 1));
    EXPECT_TRUE(rep.jumps().empty());
    EXPECT_TRUE(rep.semicontinuous);
    EXPECT_TRUE(rep.counterexamples.empty());
}

TEST(Deform, ScanIwasawa) {
    auto m = catalog("iwasawa3");
    auto fam = kuranishi_series(m, 3);
    auto samples = default_samples(fam.m, 5, 0);
    auto rep = invariance_scan(fam, samples);
    EXPECT_TRUE(rep.semicontinuous);
    EXPECT_TRUE(rep.counterexamples.empty());
    EXPECT_TRUE(rep.notes.empty());
    for (std::size_t s = 0; s < samples.size(); ++s) {
        EXPECT_LT(rep.at[s].h_dbar[1][0], 3);
        EXPECT_LT(rep.at[s].h_dbar[2][0], 3);
        EXPECT_LT(rep.at[s].h_dbar[2][3], 3);
    }
    for (auto pq : {std::pair{1, 0}, std::pair{2, 0}, std::pair{2, 2}, std::pair{2, 3}})
        EXPECT_TRUE(rep.jumped[pq.first][pq.second]);
    EXPECT_EQ(rep.failed_hypotheses(1, 0), std::vector<std::string>{"calB^{2,0}"});
    EXPECT_EQ(rep.failed_hypotheses(2, 0), std::vector<std::string>{"B^{2,1}"});
    EXPECT_EQ(rep.failed_hypotheses(2, 3), std::vector<std::string>{"invariance of h^{2,2}"});
    for (auto [p, q] : rep.jumps()) EXPECT_FALSE(rep.failed_hypotheses(p, q).empty());
    std::string tsv = rep.tsv();
    EXPECT_NE(tsv.find("sample\tp\tq\th_t\th_0\tjumped\thypotheses"), std::string::npos);
    EXPECT_NE(tsv.find("semicontinuity=ok"), std::string::npos);
}
