#include "nilcohom/cli.hpp"

#include "nilcohom/error.hpp"
#include "nilcohom/extend.hpp"
#include "nilcohom/identities.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace nilcohom {

namespace {

enum Exit { kOk = 0, kRefused = 1, kUsage = 2, kInvariant = 3 };

struct Config {
    std::string model;
    int order = 4;
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<int> bidegree;
    int cls = 1;
    std::string out;
    bool pretty = false;
};

struct Output {
    std::string text;
    std::vector<std::string> violations;
};

Form kahler_power(const ModelPtr& m, int p) {
    int n = m->n();
    Form w1(m);
    for (int j = 1; j <= n; ++j) w1 += wedge(Form::phi(m, j), Form::phi(m, j, true)) * GaussRational::i();
    Form w = w1;
    for (int k = 2; k <= p; ++k) w = wedge(w, w1) * GaussRational(mpq_class(1, k));
    return w;
}

std::pair<int, int> bidegree_of(const Config& c, const ComplexModel& m) {
    if (c.bidegree.size() != 2) throw CLI::ValidationError("--bidegree", "expected p,q");
    int p = c.bidegree[0], q = c.bidegree[1];
    if (p < 0 || q < 0 || p > m.n() || q > m.n()) throw CLI::ValidationError("--bidegree", "out of range for n = " + std::to_string(m.n()));
    return {p, q};
}

Output cohomology_cmd(const Config& c) {
    auto m = load_model(c.model);
    CohomologyTable t = cohomology(*m);
    Output o{t.tsv(c.pretty), {}};
    if (auto v = t.duality_violation(); !v.empty()) o.violations.push_back(v);
    return o;
}

Output lemma_cmd(const Config& c) {
    auto m = load_model(c.model);
    LemmaReport r = lemma_variants(*m);
    Output o{r.tsv(c.pretty), {}};
    if (auto v = r.lattice_violation(); !v.empty()) o.violations.push_back(v);
    for (const auto& d : r.diagnostics) o.violations.push_back(d);
    return o;
}

Output kuranishi_cmd(const Config& c) {
    auto fam = kuranishi_series(load_model(c.model), c.order);
    Output o{fam.summary(), {}};
    if (!fam.obstructed() && !check_maurer_cartan(fam.phi, c.order).is_zero()) o.violations.push_back("Maurer-Cartan residual is nonzero");
    return o;
}

Output scan_cmd(const Config& c) {
    auto fam = kuranishi_series(load_model(c.model), c.order);
    ScanReport r = invariance_scan(fam, default_samples(fam.m, c.samples ? c.samples : 5, c.seed));
    Output o{r.tsv(), {}};
    if (!r.semicontinuous) o.violations.push_back("upper semicontinuity violated");
    for (const auto& x : r.counterexamples) o.violations.push_back(x);
    return o;
}

Output extend_cmd(const Config& c) {
    auto m = load_model(c.model);
    auto [p, q] = bidegree_of(c, *m);
    QMatrix ker = harmonic_and_green(*m, Laplacian::delbar, p, q).kernel;
    if (c.cls < 1 || std::size_t(c.cls) > ker.cols())
        throw CLI::ValidationError("--class", "index must be in 1.." + std::to_string(ker.cols()));
    auto fam = kuranishi_series(m, c.order);
    Form mu0 = canonical_representative(from_vector(m, ker.column(c.cls - 1), p, q));
    ExtensionResult r = extend_d_closed(mu0, fam.phi, c.order);
    Diagnostic dg = verify_extension(r, fam.phi);
    Form perturbation = mu0 * Series::variable(0);
    bool unique = uniqueness_check(r, fam.phi, perturbation);
    std::ostringstream os;
    os << "model=" << m->name() << "\n" << "class=" << c.cls << "\n" << r.report() << dg.str();
    os << "unique=" << (unique ? "yes" : "no") << "\n";
    Output o;
    if (!r.closed_ok) o.violations.push_back("d(e^{iota_phi} mu) is nonzero");
    if (!r.dbar_t_ok) o.violations.push_back("rho_phi(mu) is not dbar_t-closed");
    if (!r.system_ok || !r.recursion_ok) o.violations.push_back("extension system fails");
    if (!dg.ok) o.violations.push_back("decomposition check fails");
    if (!unique) o.violations.push_back("uniqueness check fails");
    if (c.samples > 0) {
        InjectivityVerdict v = injectivity_test(fam, p, q, default_samples(fam.m, c.samples, c.seed));
        os << v.str();
    }
    o.text = os.str();
    return o;
}

Output pkahler_cmd(const Config& c) {
    auto m = load_model(c.model);
    int p = 1;
    if (!c.bidegree.empty()) {
        auto [a, b] = bidegree_of(c, *m);
        if (a != b) throw CLI::ValidationError("--bidegree", "p-Kahler forms have type (p,p)");
        p = a;
    }
    if (p < 1) throw CLI::ValidationError("--bidegree", "p must be at least 1");
    auto fam = kuranishi_series(m, c.order);
    PKahlerResult r = p_kahler_extend(kahler_power(m, p), fam, p, c.order, default_samples(fam.m, c.samples ? c.samples : 5, c.seed));
    Output o{r.report(), {}};
    if (!r.ok()) o.violations.push_back("p-Kahler extension check fails");
    return o;
}

Output identities_cmd(const Config& c) {
    std::vector<ModelPtr> models;
    if (c.model.empty())
        for (const auto& name : catalog_names()) models.push_back(catalog(name));
    else
        models.push_back(load_model(c.model));
    IdentityReport all;
    for (const auto& m : models) {
        IdentityReport r = run_identity_suite(m, c.seed, c.samples ? c.samples : 1000);
        all.results.insert(all.results.end(), r.results.begin(), r.results.end());
    }
    Output o{all.tsv(), {}};
    for (const auto& r : all.results)
        if (r.failures) o.violations.push_back(r.model + " " + r.identity + ": " + std::to_string(r.failures) + " failures");
    return o;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact cohomology, deformation and extension computations on invariant-form complex models", "nilcohom"};
    app.require_subcommand(1);
    Config c;
    app.add_option("--model", c.model, "catalog name or model file");
    app.add_option("--order", c.order, "truncation order N")->check(CLI::Range(1, Series::kExactOrder));
    app.add_option("--seed", c.seed, "sampling seed");
    app.add_option("--samples", c.samples, "number of samples (identities: cases per identity)")->check(CLI::PositiveNumber);
    app.add_option("--bidegree", c.bidegree, "p,q")->delimiter(',')->expected(2);
    app.add_option("--class", c.cls, "1-based index into the harmonic basis");
    app.add_option("--out", c.out, "write the report to a file");
    app.add_flag("--pretty", c.pretty, "aligned tables");

    using Handler = Output (*)(const Config&);
    std::vector<std::tuple<std::string, std::string, Handler, bool>> subs = {
        {"cohomology", "Dolbeault, conjugate, Bott-Chern, Aeppli and de Rham numbers", cohomology_cmd, true},
        {"lemma", "ddbar-lemma variants and diagram maps", lemma_cmd, true},
        {"kuranishi", "Kuranishi family to the truncation order", kuranishi_cmd, true},
        {"scan", "Hodge numbers at sample points of the family", scan_cmd, true},
        {"extend", "extend a canonical class along the family", extend_cmd, true},
        {"pkahler", "p-Kahler extension of the standard form", pkahler_cmd, true},
        {"identities", "seeded operator-identity suite", identities_cmd, false},
    };
    Handler chosen = nullptr;
    bool needs_model = false;
    for (auto& [name, desc, h, req] : subs) {
        auto* sub = app.add_subcommand(name, desc)->fallthrough();
        sub->callback([&chosen, &needs_model, h = h, req = req] {
            chosen = h;
            needs_model = req;
        });
    }
    try {
        app.parse(argc, argv);
        if (needs_model && c.model.empty()) throw CLI::RequiredError("--model");
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }
    try {
        Output o = chosen(c);
        if (c.out.empty()) {
            out << o.text;
        } else {
            std::ofstream f(c.out, std::ios::binary);
            if (!f) {
                err << "error: cannot write " << c.out << "\n";
                return kUsage;
            }
            f << o.text;
        }
        for (const auto& v : o.violations) err << "invariant: " << v << "\n";
        return o.violations.empty() ? kOk : kInvariant;
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    } catch (const HypothesisError& e) {
        err << "refused: " << e.what() << "\n";
        return kRefused;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const MathError& e) {
        err << "error: " << e.what() << "\n";
        return kInvariant;
    }
}

} // namespace nilcohom
