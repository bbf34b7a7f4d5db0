#include "nilcohom/extend.hpp"
#include "nilcohom/error.hpp"
#include "nilcohom/sampling.hpp"

#include <gtest/gtest.h>

using namespace nilcohom;

namespace {

Form P(const ModelPtr& m, int i) { return Form::phi(m, i); }
Form Q(const ModelPtr& m, int i) { return Form::phi(m, i, true); }
const GaussRational I = GaussRational::i();

Form kahler(const ModelPtr& m) {
    Form w(m);
    for (int j = 1; j <= m->n(); ++j) w += wedge(P(m, j), Q(m, j)) * I;
    return w;
}

// omega^p / p!
Form kahler_power(const ModelPtr& m, int p) {
    Form w1 = kahler(m), w = w1;
    for (int k = 2; k <= p; ++k) w = wedge(w, w1) * GaussRational(mpq_class(1, k));
    return w;
}

std::vector<Form> canonical_classes(const ModelPtr& m, int p, int q) {
    QMatrix ker = harmonic_and_green(*m, Laplacian::delbar, p, q).kernel;
    std::vector<Form> out;
    for (std::size_t i = 0; i < ker.cols(); ++i) out.push_back(canonical_representative(from_vector(m, ker.column(i), p, q)));
    return out;
}

} // namespace

TEST(Extend, ZeroBeltrami) {
    auto m = catalog("iwasawa3");
    Beltrami zero(m);
    for (const Form& mu0 : {wedge(P(m, 1), Q(m, 1)), wedge(P(m, 2), Q(m, 1))}) {
        auto r = extend_d_closed(mu0, zero, 4);
        EXPECT_EQ(r.mu, mu0);
        EXPECT_EQ(r.rho_mu, mu0);
        EXPECT_TRUE(r.closed_ok && r.dbar_t_ok && r.system_ok && r.recursion_ok);
        auto dg = verify_extension(r, zero);
        EXPECT_TRUE(dg.ok);
        EXPECT_EQ(dg.lines.front(), "alpha^{1,1}=nonzero");
        EXPECT_EQ(dg.lines[1], "alpha^{2,0}=zero");
    }
}

TEST(Extend, TorusIsTrivial) {
    auto m = catalog("torus2");
    auto fam = kuranishi_series(m, 4);
    Sampler s(31);
    for (int trial = 0; trial < 10; ++trial) {
        Form mu0 = s.form_pq(m, s.below(3), s.below(3));
        if (mu0.is_zero()) continue;
        auto r = extend_d_closed(mu0, fam.phi, 4);
        EXPECT_EQ(r.mu, mu0);
        EXPECT_TRUE(d(exp_contract(fam.phi, mu0)).is_zero());
        EXPECT_TRUE(r.closed_ok && r.dbar_t_ok);
    }
    // higher pieces come from contractions only
    Form mu0 = wedge(P(m, 1), Q(m, 1));
    auto r = extend_d_closed(mu0, fam.phi, 4);
    auto dg = verify_extension(r, fam.phi);
    EXPECT_TRUE(dg.ok);
    EXPECT_EQ(dg.lines[1], "alpha^{2,0}=nonzero");
}

TEST(Extend, IwasawaTopBidegree) {
    auto m = catalog("iwasawa3");
    auto fam = kuranishi_series(m, 4);
    auto classes = canonical_classes(m, 2, 3);
    ASSERT_EQ(classes.size(), 3u);
    for (const Form& mu0 : classes) {
        auto r = extend_d_closed(mu0, fam.phi, 4);
        // phi -| mu0 would have q = 4 > n
        EXPECT_EQ(r.mu, mu0);
        Form e = exp_contract(fam.phi, r.mu);
        for (int k = 0; k <= 4; ++k) EXPECT_TRUE(d(e).homogeneous(k).is_zero());
        EXPECT_TRUE(r.closed_ok && r.dbar_t_ok && r.system_ok && r.recursion_ok);
        for (const auto& x : r.residual_norms) EXPECT_EQ(x, 0);
        EXPECT_TRUE(verify_extension(r, fam.phi).ok);
        EXPECT_TRUE(uniqueness_check(r, fam.phi, wedge(wedge(P(m, 1), P(m, 3)), wedge(Q(m, 1), wedge(Q(m, 2), Q(m, 3)))) * Series::variable(0)));
        EXPECT_FALSE(r.report().empty());
    }
}

TEST(Extend, EveryClassWhereHypothesisHolds) {
    for (auto name : {"iwasawa3", "kodaira-thurston", "torus3"}) {
        auto m = catalog(name);
        int n = m->n();
        auto fam = kuranishi_series(m, 4);
        auto lemma = lemma_variants(*m);
        int extended = 0;
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) {
                std::vector<Form> classes;
                try {
                    classes = canonical_classes(m, p, q);
                } catch (const HypothesisError&) {
                    continue;
                }
                for (const Form& mu0 : classes) {
                    if (!lemma.B_at(p, q + 1)) {
                        EXPECT_THROW(extend_d_closed(mu0, fam.phi, 4), HypothesisError);
                        continue;
                    }
                    auto r = extend_d_closed(mu0, fam.phi, 4);
                    ++extended;
                    EXPECT_TRUE(r.closed_ok && r.dbar_t_ok && r.system_ok && r.recursion_ok) << name << " " << p << q;
                    EXPECT_EQ(r.mu.truncated(0), mu0);
                    EXPECT_TRUE(verify_extension(r, fam.phi).ok);
                    Form pert = mu0 * (Series::variable(0) + Series::variable(fam.m - 1) * Series::variable(0));
                    EXPECT_TRUE(uniqueness_check(r, fam.phi, pert));
                }
            }
        EXPECT_GT(extended, 0) << name;
    }
}

TEST(Extend, Refusals) {
    auto m = catalog("iwasawa3");
    auto fam = kuranishi_series(m, 3);
    // phi1^phi3 is d-closed of type (2,0); B^{2,1} fails on the Iwasawa manifold
    Form x = wedge(P(m, 1), P(m, 3));
    ASSERT_TRUE(d(x).is_zero());
    try {
        extend_d_closed(x, fam.phi, 3);
        FAIL();
    } catch (const HypothesisError& e) {
        EXPECT_EQ(std::string(e.what()), "B^{2,1} fails");
    }
    EXPECT_THROW(extend_d_closed(P(m, 3), fam.phi, 3), MathError);
}

TEST(Extend, CorrectionSolvesTheSystemAtFirstOrder) {
    // Outside the catalog: d phi3 = phi1 ^ conj(phi2) makes del(phi -| x) nonzero and del delbar-exact.
    auto m = parse_model("dim 3\nname s\nd p3 = p1^q2\n");
    auto fam = kuranishi_series(m, 2);
    Beltrami phi1 = fam.phi.homogeneous(1);
    Form x = wedge(wedge(P(m, 1), P(m, 2)), Q(m, 2));
    ASSERT_TRUE(d(x).is_zero());
    Form y = del(contract(phi1, x));
    ASSERT_FALSE(y.is_zero());
    Form mu1 = q_operator(phi1, x);
    EXPECT_TRUE(del(mu1).is_zero());
    EXPECT_EQ(delbar(mu1), -y);
    // it is the del delbar-minimal choice: mu1 = del z with delbar z orthogonal to ker del delbar
    Sampler s(32);
    std::vector<GaussRational> t = s.sample_point(fam.m);
    Form me = mu1.evaluate(t);
    EXPECT_TRUE(in_image(op_matrix(*m, Op::del, 1, 1), me, 2, 1));
}

TEST(Extend, Injectivity) {
    auto tor = catalog("torus3");
    auto ft = kuranishi_series(tor, 3);
    auto samples = default_samples(ft.m, 3, 0);
    auto v = injectivity_test(ft, 1, 1, samples);
    EXPECT_TRUE(v.injective);
    EXPECT_EQ(v.classes, 9);
    EXPECT_EQ(v.rank_at, std::vector<int>(3, 9));

    auto iw = catalog("iwasawa3");
    auto fam = kuranishi_series(iw, 4);
    auto si = default_samples(fam.m, 5, 0);
    auto bad = injectivity_test(fam, 2, 3, si);
    EXPECT_FALSE(bad.injective);
    EXPECT_EQ(bad.classes, 3);
    ASSERT_TRUE(bad.failing_class.has_value());
    ASSERT_TRUE(bad.failing_sample.has_value());
    EXPECT_NE(std::find(bad.failed_hypotheses.begin(), bad.failed_hypotheses.end(), "invariance of h^{2,2}"), bad.failed_hypotheses.end());
    // matches the drop of h^{2,3} found by the scan
    auto at = hodge_numbers_at(fam, si[0], false);
    EXPECT_EQ(bad.rank_at[0], at.h_dbar[2][3]);

    auto good = injectivity_test(fam, 0, 1, si);
    EXPECT_TRUE(good.injective);
    EXPECT_TRUE(good.failed_hypotheses.empty());
    EXPECT_THROW(injectivity_test(fam, 2, 0, si), HypothesisError);
}

TEST(Extend, PositivityExamples) {
    auto t2 = catalog("torus2");
    Form plus = wedge(P(t2, 1), Q(t2, 1)) * I + wedge(P(t2, 2), Q(t2, 2)) * I;
    Form minus = wedge(P(t2, 1), Q(t2, 1)) * I - wedge(P(t2, 2), Q(t2, 2)) * I;
    EXPECT_EQ(transverse_positivity(plus, 1).str(), "positive(exact)");
    auto np = transverse_positivity(minus, 1);
    EXPECT_EQ(np.kind, Positivity::not_positive);
    EXPECT_EQ(np.witness, "v=(0, 1)");
    EXPECT_EQ(np.str(), "not-positive(v=(0, 1))");
    EXPECT_THROW(transverse_positivity(wedge(P(t2, 1), Q(t2, 1)), 1), MathError);
    // top degree
    EXPECT_TRUE(transverse_positivity(kahler_power(t2, 2), 2).positive());
    EXPECT_FALSE(transverse_positivity(-kahler_power(t2, 2), 2).positive());
    // indefinite off-diagonal: i(p1 q1 + p2 q2) + 2i(p1 q2 + p2 q1) has eigenvalues 3, -1
    Form off = plus + (wedge(P(t2, 1), Q(t2, 2)) + wedge(P(t2, 2), Q(t2, 1))) * (I * GaussRational(2));
    auto w = transverse_positivity(off, 1);
    EXPECT_EQ(w.str(), "not-positive(v=(1, -1))");

    auto t3 = catalog("torus3");
    EXPECT_EQ(transverse_positivity(kahler_power(t3, 2), 2).str(), "positive(exact)");
    auto t4 = catalog("torus4");
    EXPECT_EQ(transverse_positivity(kahler_power(t4, 2), 2).str(), "positive(sampled, 500)");
    EXPECT_EQ(transverse_positivity(-kahler_power(t4, 2), 2, 50).kind, Positivity::not_positive);
}

TEST(Extend, PKahlerTorus) {
    for (int n : {2, 3}) {
        auto m = catalog("torus" + std::to_string(n));
        auto fam = kuranishi_series(m, 4);
        auto samples = default_samples(fam.m, 5, 0);
        for (int p : {1, n - 1}) {
            Form w0 = kahler_power(m, p);
            auto r = p_kahler_extend(w0, fam, p, 4, samples);
            EXPECT_TRUE(r.ok()) << r.report();
            EXPECT_TRUE(r.omega0_recovered);
            EXPECT_TRUE(r.beta_positive_order);
            ASSERT_EQ(r.samples.size(), 5u);
            for (const auto& s : r.samples) {
                EXPECT_TRUE(s.real_ok && s.closed_ok);
                EXPECT_EQ(s.positivity.str(), "positive(exact)");
            }
        }
    }
}

TEST(Extend, PKahlerZeroAndRefusal) {
    auto m = catalog("torus2");
    auto fam = kuranishi_series(m, 3);
    auto r = p_kahler_extend(kahler(m), fam, 1, 3, {std::vector<GaussRational>(fam.m)});
    ASSERT_EQ(r.samples.size(), 1u);
    EXPECT_EQ(r.samples[0].omega_tilde, kahler(m));
    EXPECT_TRUE(r.samples[0].beta.is_zero());
    auto iw = catalog("iwasawa3");
    auto fi = kuranishi_series(iw, 3);
    try {
        p_kahler_extend(kahler(iw), fi, 1, 3, {});
        FAIL();
    } catch (const HypothesisError& e) {
        EXPECT_EQ(std::string(e.what()), "ddbar-lemma fails");
    }
    EXPECT_THROW(p_kahler_extend(wedge(P(m, 1), Q(m, 1)), fam, 1, 3, {}), MathError);
    EXPECT_THROW(p_kahler_extend(kahler(m) + wedge(P(m, 1), Q(m, 2)) * I, fam, 1, 3, {}), MathError);
}

TEST(Extend, PsiClosedForm) {
    auto m = catalog("torus2");
    Series t = Series::variable(0);
    Beltrami phi = Beltrami::single(Q(m, 1) * t, 0);
    VectorForm psi = psi_of(phi);
    // phibar = conj(t) phi1 (x) conj(Z1); (1 - |t|^2)^{-1} in the truncated ring
    Series tt = t * t.conj();
    Series geom = Series(1) + tt + tt * tt + tt * tt * tt;
    EXPECT_EQ(psi[2].truncated(8), (P(m, 1) * (t.conj() * geom)).truncated(8));
    EXPECT_TRUE(psi[3].is_zero());
}

TEST(Extend, MildRoute) {
    auto tor = catalog("torus2");
    Beltrami zero(tor);
    Form w = kahler(tor);
    auto z = mild_extension_two_eq(w, zero, 3);
    EXPECT_EQ(z.Omega, w);
    EXPECT_EQ(z.omega_tilde, w);

    auto fam = kuranishi_series(tor, 3);
    auto bc = extend_d_closed(w, fam.phi, 3);
    auto mild = mild_extension_two_eq(w, fam.phi, 3);
    EXPECT_TRUE(mild.result.closed_ok && mild.result.dbar_t_ok && mild.result.system_ok);
    EXPECT_EQ(mild.result.mu.truncated(0), w);
    Form lhs = exp_contract(fam.phi, exp_contract(psi_of(fam.phi), mild.omega_tilde));
    EXPECT_EQ(lhs.truncated(3), ext_map_pair(fam.phi, mild.Omega).truncated(3));
    auto cmp = compare_routes(bc, mild);
    EXPECT_TRUE(cmp.agree);
    EXPECT_EQ(cmp.per_order.size(), 4u);

    auto iw = catalog("iwasawa3");
    auto fi = kuranishi_series(iw, 3);
    for (const Form& mu0 : canonical_classes(iw, 2, 3)) {
        auto r = mild_extension_two_eq(mu0, fi.phi, 3);
        EXPECT_TRUE(r.result.closed_ok && r.result.dbar_t_ok && r.result.system_ok);
        for (const auto& x : r.result.residual_norms) EXPECT_EQ(x, 0);
        EXPECT_TRUE(compare_routes(extend_d_closed(mu0, fi.phi, 3), r).agree);
    }
    try {
        mild_extension_two_eq(canonical_classes(iw, 0, 2)[0], fi.phi, 3);
        FAIL();
    } catch (const HypothesisError& e) {
        EXPECT_EQ(std::string(e.what()), "B^{2,1} fails");
    }
}
