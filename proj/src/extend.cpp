#include "nilcohom/extend.hpp"

#include "nilcohom/error.hpp"
#include "nilcohom/sampling.hpp"

#include <sstream>

namespace nilcohom {

namespace {

std::string bd(int p, int q) { return "^{" + std::to_string(p) + "," + std::to_string(q) + "}"; }

// B^{p,q}: injectivity of iota_{BC,del}^{p,q}; vacuous out of range.
bool condition_B(const ComplexModel& m, int p, int q) {
    if (p < 0 || q < 0 || p > m.n() || q > m.n()) return true;
    return diagram_map(m, DiagramMap::bc_del, p, q).injective;
}

mpq_class norm2(const Form& a) {
    mpq_class s = 0;
    for (const auto& [m, c] : a.terms())
        for (const auto& [e, v] : c.terms()) s += v.norm();
    return s;
}

EndomorphismField inverse_one_minus(const Beltrami& phi) {
    EndomorphismField m = one_minus_phibar_phi(phi);
    return phi.valuation() >= 1 ? inverse_endo(m) : invert_endo(m);
}

// iota_v^k / k!
Form iota_power(const VectorForm& v, int k, const Form& x) {
    Form r = x;
    for (int i = 1; i <= k; ++i) {
        if (r.is_zero()) return r;
        r = contract(v, r) * GaussRational(mpq_class(1, i));
    }
    return r;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

} // namespace

Form q_operator(const Beltrami& phi, const Form& x) {
    if (x.is_zero()) return x;
    const ComplexModel& m = *x.model();
    int n = m.n();
    auto [p, q] = pure_bidegree(x);
    Form y = del(contract(phi, x));
    if (y.is_zero() || p < 1 || q + 1 > n) return Form(x.model());
    QMatrix mat = op_matrix(m, Op::del, p - 1, q) * op_matrix(m, Op::deldelbar, p - 1, q).adjoint() *
                  harmonic_and_green(m, Laplacian::bc, p, q + 1).green;
    return apply(mat, monomial::basis(n, p, q + 1), monomial::basis(n, p, q), y);
}

ExtensionResult extend_d_closed(const Form& mu0, const Beltrami& phi, int N) {
    const ModelPtr& model = phi.model();
    ExtensionResult r;
    r.N = N;
    r.mu0 = mu0;
    if (!d(mu0).is_zero()) throw MathError("mu0 is not d-closed");
    if (mu0.is_zero()) {
        r.mu = r.rho_mu = mu0;
        r.closed_ok = r.dbar_t_ok = r.system_ok = r.recursion_ok = true;
        r.residual_norms.assign(N + 1, 0);
        return r;
    }
    std::tie(r.p, r.q) = pure_bidegree(mu0);
    if (!condition_B(*model, r.p, r.q + 1)) throw HypothesisError("B" + bd(r.p, r.q + 1) + " fails");
    Form mu = mu0, term = mu0;
    for (int k = 1; k <= N + 1; ++k) {
        term = q_operator(phi, term).truncated(N);
        if (term.is_zero()) break;
        mu += term;
    }
    r.mu = mu.truncated(N);
    Form c = contract(phi, r.mu);
    r.system_ok = del(r.mu).is_zero() && delbar(r.mu) == -del(c);
    r.recursion_ok = true;
    for (int k = 0; k <= N; ++k) {
        Form rhs(model);
        for (int i = 1; i <= k; ++i) rhs += contract(phi.homogeneous(i), r.mu.homogeneous(k - i));
        if (!(delbar(r.mu.homogeneous(k)) == -del(rhs).homogeneous(k))) r.recursion_ok = false;
    }
    Form de = d(exp_contract(phi, r.mu));
    r.closed_ok = de.is_zero();
    for (int k = 0; k <= N; ++k) r.residual_norms.push_back(norm2(de.homogeneous(k)));
    r.rho_mu = rho(phi, r.mu);
    r.dbar_t_ok = pulled_back_delbar(phi, ext_map_pair_inverse(phi, r.rho_mu)).is_zero();
    return r;
}

std::string ExtensionResult::report() const {
    std::ostringstream os;
    os << "bidegree=" << p << "," << q << "\n";
    os << "order=" << N << "\n";
    os << "closed=" << yes(closed_ok) << "\n";
    os << "dbar_t_closed=" << yes(dbar_t_ok) << "\n";
    os << "system=" << yes(system_ok) << "\n";
    os << "recursion=" << yes(recursion_ok) << "\n";
    for (std::size_t k = 0; k < residual_norms.size(); ++k) os << "residual_norm_" << k << "=" << residual_norms[k].get_str() << "\n";
    os << "mu0=" << mu0.str() << "\n";
    os << "mu=" << mu.str() << "\n";
    return os.str();
}

std::string Diagnostic::str() const {
    std::string s = "verified=" + yes(ok) + "\n";
    for (const auto& l : lines) s += l + "\n";
    return s;
}

Diagnostic verify_extension(const ExtensionResult& res, const Beltrami& phi) {
    Diagnostic dg;
    int n = phi.n();
    Form y = ext_map_pair_inverse(phi, exp_contract(phi, res.mu));
    for (int k = 0; k <= std::min(res.q, n - res.p); ++k) {
        Form part = y.component(res.p + k, res.q - k);
        dg.lines.push_back("alpha" + bd(res.p + k, res.q - k) + "=" + (part.is_zero() ? "zero" : "nonzero"));
    }
    for (auto [a, b] : y.bidegrees())
        if (a + b != res.p + res.q || a < res.p) {
            dg.ok = false;
            dg.lines.push_back("unexpected component" + bd(a, b));
        }
    bool rho_ok = ext_map_pair(phi, y.component(res.p, res.q)) == res.rho_mu;
    dg.lines.push_back("alpha_pq_is_rho=" + yes(rho_ok));
    bool del_closed = del(res.mu).is_zero();
    bool dbar_t = deformed_delbar(phi, res.mu).is_zero();
    dg.lines.push_back("del_mu_zero=" + yes(del_closed));
    dg.lines.push_back("dbar_phi_mu_zero=" + yes(dbar_t));
    dg.ok = dg.ok && rho_ok && del_closed && dbar_t;
    return dg;
}

bool uniqueness_check(const ExtensionResult& res, const Beltrami& phi, const Form& perturbation) {
    Form x = res.mu0 + perturbation;
    for (int k = 0; k <= res.N + 1; ++k) x = (res.mu0 + q_operator(phi, x)).truncated(res.N);
    return x == res.mu;
}

// ---------------------------------------------------------------------------

std::string InjectivityVerdict::str() const {
    std::ostringstream os;
    os << "injective=" << yes(injective) << "\n";
    os << "classes=" << classes << "\n";
    for (std::size_t s = 0; s < rank_at.size(); ++s) os << "rank_sample_" << s + 1 << "=" << rank_at[s] << "\n";
    if (failing_sample) os << "failing_sample=" << *failing_sample + 1 << "\n";
    if (failing_class) os << "failing_class=" << *failing_class + 1 << "\n";
    for (const auto& h : failed_hypotheses) os << "failed_hypothesis=" << h << "\n";
    for (const auto& s : notes) os << "note=" << s << "\n";
    return os.str();
}

InjectivityVerdict injectivity_test(const KuranishiFamily& fam, int p, int q,
                                    const std::vector<std::vector<GaussRational>>& samples) {
    const ModelPtr& model = fam.model;
    const ComplexModel& m = *model;
    int n = m.n();
    if (p < 0 || q < 0 || p > n || q > n) throw MathError("bidegree out of range");
    InjectivityVerdict v;
    QMatrix ker = harmonic_and_green(m, Laplacian::delbar, p, q).kernel;
    v.classes = int(ker.cols());
    std::vector<Form> mus;
    for (std::size_t i = 0; i < ker.cols(); ++i) {
        Form gamma = canonical_representative(from_vector(model, ker.column(i), p, q));
        mus.push_back(extend_d_closed(gamma, fam.phi, fam.N).mu);
    }
    auto zero = hodge_numbers_at(fam, std::vector<GaussRational>(fam.m), false);
    bool prev_invariant = true;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        Beltrami phi = fam.phi.evaluate(samples[s]);
        if (!check_maurer_cartan(phi, Series::kExactOrder).is_zero())
            throw MathError("Maurer-Cartan fails at t = " + point_str(samples[s]));
        SampleOperators ops = sample_operators(phi);
        if (q >= 1) {
            QMatrix prev = ops.Db(p, q - 1);
            int h_prev = int(monomial::basis(n, p, q - 1).size()) - int(linalg::rank(prev)) - int(linalg::rank(ops.Db(p, q - 2)));
            if (h_prev != zero.h_dbar[p][q - 1]) prev_invariant = false;
        }
        EndomorphismField inv = invert_endo(one_minus_phibar_phi(phi));
        QMatrix image = ops.Db(p, q - 1);
        std::size_t base = linalg::rank(image);
        QMatrix acc = image;
        int rank = 0;
        for (std::size_t i = 0; i < mus.size(); ++i) {
            Form y = simultaneous_contract(inv, mus[i].evaluate(samples[s]));
            QVector vy = to_vector(y, p, q);
            bool closed = true;
            for (const auto& c : ops.Db(p, q) * vy) closed &= c.is_zero();
            if (!closed) v.notes.push_back("class " + std::to_string(i + 1) + " not exactly closed at sample " + std::to_string(s + 1) +
                                           " (truncated series)");
            acc = hstack(acc, QMatrix::from_columns(vy.size(), {vy}));
            std::size_t rk = linalg::rank(acc);
            if (rk == base + rank + 1)
                ++rank;
            else if (!v.failing_class) {
                v.failing_class = int(i);
                v.failing_sample = s;
            }
        }
        v.rank_at.push_back(rank);
        if (rank < v.classes) v.injective = false;
    }
    if (!condition_B(m, p, q + 1)) v.failed_hypotheses.push_back("B" + bd(p, q + 1));
    if (!diagram_map(m, DiagramMap::bc_delbar, p, q).surjective) v.failed_hypotheses.push_back("calB" + bd(p + 1, q));
    if (!prev_invariant) v.failed_hypotheses.push_back("invariance of h" + bd(p, q - 1));
    return v;
}

// ---------------------------------------------------------------------------

namespace {

// i^{k^2}
GaussRational sigma(int k) {
    switch ((k * k) % 4) {
    case 0: return GaussRational(1);
    case 1: return GaussRational::i();
    case 2: return GaussRational(-1);
    default: return -GaussRational::i();
    }
}

// Top-degree form divided by the reference volume i^{n^2} p1..pn q1..qn.
GaussRational top_ratio(const Form& top) {
    int n = top.n();
    Mask all = (Mask(1) << (2 * n)) - 1;
    Series c = top.coefficient(all);
    return c.constant() / sigma(n);
}

GaussRational det(QMatrix a) {
    std::size_t n = a.rows();
    GaussRational r(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c).is_zero()) ++piv;
        if (piv == n) return GaussRational(0);
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
            r = -r;
        }
        r *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            GaussRational f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return r;
}

QMatrix leading(const QMatrix& h, std::size_t k) {
    QMatrix r(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) r(i, j) = h(i, j);
    return r;
}

GaussRational hermitian_value(const QMatrix& h, const QVector& v) {
    GaussRational s(0);
    for (std::size_t j = 0; j < v.size(); ++j)
        for (std::size_t k = 0; k < v.size(); ++k) s += h(j, k) * v[j] * v[k].conj();
    return s;
}

std::string vec_str(const QVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
    return s + ")";
}

Positivity sylvester(const QMatrix& h, const std::string& what, int samples, std::uint64_t seed) {
    Positivity r;
    std::size_t n = h.rows();
    bool pd = true;
    std::size_t failing = 0;
    for (std::size_t k = 1; k <= n && pd; ++k) {
        GaussRational m = det(leading(h, k));
        if (!m.is_real()) throw MathError("non-Hermitian coefficient matrix");
        if (sgn(m.re()) <= 0) pd = false, failing = k;
    }
    if (pd) return r;
    r.kind = Positivity::not_positive;
    std::vector<QVector> candidates;
    for (std::size_t j = 0; j < n; ++j) {
        QVector v(n);
        v[j] = GaussRational(1);
        candidates.push_back(v);
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
            for (GaussRational c : {GaussRational(1), GaussRational(-1), GaussRational::i(), -GaussRational::i()}) {
                QVector v(n);
                v[j] = GaussRational(1);
                v[k] = c;
                candidates.push_back(v);
            }
    Sampler s(seed);
    for (int i = 0; i < samples; ++i) {
        QVector v(n);
        for (auto& x : v) x = s.small();
        candidates.push_back(v);
    }
    for (const auto& v : candidates) {
        GaussRational val = hermitian_value(h, v);
        if (sgn(val.re()) <= 0 && std::any_of(v.begin(), v.end(), [](const GaussRational& x) { return !x.is_zero(); })) {
            r.witness = what + "=" + vec_str(v);
            return r;
        }
    }
    r.witness = "leading minor " + std::to_string(failing) + " not positive";
    return r;
}

} // namespace

std::string Positivity::str() const {
    switch (kind) {
    case positive_exact: return "positive(exact)";
    case positive_sampled: return "positive(sampled, " + std::to_string(samples) + ")";
    default: return "not-positive(" + witness + ")";
    }
}

Positivity transverse_positivity(const Form& omega, int p, int samples, std::uint64_t seed) {
    const ModelPtr& model = omega.model();
    int n = model->n();
    if (p < 1 || p > n) throw MathError("degree p out of range");
    for (const auto& [m, c] : omega.terms())
        if (!c.is_constant()) throw MathError("positivity needs constant coefficients");
    if (!(omega.conj() == omega)) throw MathError("form is not real");
    if (!omega.is_zero() && !omega.is_pure(p, p)) throw MathError("form is not of type (p,p)");
    auto P = [&](int i) { return Form::generator(model, i); };
    auto Qb = [&](int i) { return Form::generator(model, n + i); };
    if (p == n) {
        Positivity r;
        GaussRational v = top_ratio(omega);
        if (sgn(v.re()) <= 0) {
            r.kind = Positivity::not_positive;
            r.witness = "top coefficient " + v.str();
        }
        return r;
    }
    if (p == 1) {
        QMatrix h(n, n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Series c = omega.coefficient((Mask(1) << j) | (Mask(1) << (n + k)));
                h(j, k) = -GaussRational::i() * c.constant();
            }
        return sylvester(h, "v", samples, seed);
    }
    if (p == n - 1) {
        QMatrix h(n, n);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                h(k, l) = top_ratio(wedge(omega, wedge(P(k), Qb(l)) * GaussRational::i()));
        return sylvester(h, "gamma", samples, seed);
    }
    Positivity r;
    r.kind = Positivity::positive_sampled;
    r.samples = samples;
    Sampler s(seed);
    int k = n - p;
    for (int i = 0; i < samples; ++i) {
        Form tau = Form::scalar(model, Series(1));
        std::string desc;
        for (int a = 0; a < k; ++a) {
            Form g(model);
            QVector coeffs(n);
            for (int j = 0; j < n; ++j) {
                coeffs[j] = s.small();
                g += P(j) * coeffs[j];
            }
            tau = wedge(tau, g);
            desc += (a ? " ^ " : "") + vec_str(coeffs);
        }
        if (tau.is_zero()) continue;
        GaussRational v = top_ratio(wedge(omega, wedge(tau, tau.conj()) * sigma(k)));
        if (!v.is_real()) throw MathError("non-real pairing");
        if (sgn(v.re()) <= 0) {
            r.kind = Positivity::not_positive;
            r.witness = "tau=" + desc;
            return r;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

bool PKahlerResult::ok() const {
    if (!beta_positive_order || !omega0_recovered) return false;
    for (const auto& s : samples)
        if (!s.real_ok || !s.closed_ok || !s.positivity.positive()) return false;
    return true;
}

std::string PKahlerResult::report() const {
    std::ostringstream os;
    os << "p=" << p << "\n";
    os << "order=" << N << "\n";
    os << "omega0=" << omega0.str() << "\n";
    os << "omega0_recovered=" << yes(omega0_recovered) << "\n";
    os << "beta_positive_order=" << yes(beta_positive_order) << "\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        os << "sample_" << i + 1 << "_t=" << point_str(s.t) << "\n";
        os << "sample_" << i + 1 << "_real=" << yes(s.real_ok) << "\n";
        os << "sample_" << i + 1 << "_closed=" << yes(s.closed_ok) << "\n";
        os << "sample_" << i + 1 << "_positivity=" << s.positivity.str() << "\n";
        os << "sample_" << i + 1 << "_omega_tilde=" << s.omega_tilde.str() << "\n";
    }
    os << "ok=" << yes(ok()) << "\n";
    return os.str();
}

PKahlerResult p_kahler_extend(const Form& omega0, const KuranishiFamily& fam, int p, int N,
                              const std::vector<std::vector<GaussRational>>& samples) {
    const ModelPtr& model = fam.model;
    const ComplexModel& m = *model;
    int n = m.n();
    if (!lemma_variants(m).ddbar_lemma) throw HypothesisError("ddbar-lemma fails");
    if (omega0.is_zero() || !omega0.is_pure(p, p)) throw MathError("omega0 must be a nonzero (p,p)-form");
    if (!(omega0.conj() == omega0)) throw MathError("omega0 is not real");
    if (!d(omega0).is_zero()) throw MathError("omega0 is not d-closed");
    PKahlerResult r;
    r.p = p;
    r.N = N;
    r.omega0 = omega0;
    r.extension = extend_d_closed(omega0, fam.phi, N);
    r.omega_pp = r.extension.rho_mu;
    Form pulled = ext_map_pair_inverse(fam.phi, r.omega_pp);
    Form dprime = pulled_back_del(fam.phi, pulled);
    r.beta_positive_order = dprime.is_zero() || dprime.valuation() >= 1;
    std::vector<std::vector<GaussRational>> points{std::vector<GaussRational>(fam.m)};
    points.insert(points.end(), samples.begin(), samples.end());
    auto src = monomial::basis(n, p, p);
    for (std::size_t s = 0; s < points.size(); ++s) {
        const auto& t = points[s];
        Beltrami phi = fam.phi.evaluate(t);
        if (!check_maurer_cartan(phi, Series::kExactOrder).is_zero())
            throw MathError("Maurer-Cartan fails at t = " + point_str(t));
        SampleOperators ops = sample_operators(phi);
        PKahlerSample ps;
        ps.t = t;
        ps.omega_pp = simultaneous_contract(invert_endo(one_minus_phibar_phi(phi)), r.extension.mu.evaluate(t));
        QVector w = to_vector(ps.omega_pp, p, p);
        QVector y = ops.D(p, p) * w;
        QMatrix ddb = ops.DDb(p, p - 1);
        if (!linalg::in_column_space(ddb, y))
            throw MathError("del_t omega is not del_t delbar_t-exact at t = " + point_str(t));
        QMatrix lap = ops.bc_laplacian(p + 1, p);
        QMatrix ker = linalg::kernel(lap);
        QMatrix harm = linalg::projector(ker);
        QMatrix green = lap.rows() ? QMatrix(linalg::inverse(lap + harm) - harm) : lap;
        QVector beta = ddb.adjoint() * (green * y);
        if (!(ddb * beta == y)) throw MathError("beta_t verification failed at t = " + point_str(t));
        ps.beta = from_vector(model, beta, p, p - 1);
        QVector hat = w, corr = ops.Db(p, p - 1) * beta;
        for (std::size_t i = 0; i < hat.size(); ++i) hat[i] -= corr[i];
        Form omega_hat = from_vector(model, hat, p, p);
        ps.omega_tilde = (omega_hat + omega_hat.conj()) * GaussRational(mpq_class(1, 2));
        ps.real_ok = ps.omega_tilde.conj() == ps.omega_tilde;
        QVector wt = to_vector(ps.omega_tilde, p, p);
        bool closed = true;
        for (const auto& c : ops.D(p, p) * wt) closed &= c.is_zero();
        for (const auto& c : ops.Db(p, p) * wt) closed &= c.is_zero();
        ps.closed_ok = closed;
        ps.positivity = transverse_positivity(ps.omega_tilde, p);
        if (s == 0) {
            r.omega0_recovered = ps.omega_tilde == omega0;
            r.beta_positive_order = r.beta_positive_order && ps.beta.is_zero();
        } else {
            r.samples.push_back(std::move(ps));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

VectorForm psi_of(const Beltrami& phi) {
    const ModelPtr& model = phi.model();
    int n = phi.n();
    SeriesMatrix P = beltrami_matrix(phi);
    SeriesMatrix Pbar = P.adjoint().transpose();
    SeriesMatrix A = SeriesMatrix::identity(n) - Pbar * P;
    SeriesMatrix B = invert_series_matrix(A) * Pbar;
    VectorForm psi(model);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            if (!B(j, l).is_zero()) psi[n + j] += Form::generator(model, l) * B(j, l);
    return psi;
}

MildResult mild_extension_two_eq(const Form& omega0, const Beltrami& phi, int N) {
    const ModelPtr& model = phi.model();
    const ComplexModel& m = *model;
    int n = m.n();
    if (!d(omega0).is_zero()) throw MathError("omega0 is not d-closed");
    MildResult out;
    ExtensionResult& r = out.result;
    r.N = N;
    r.mu0 = omega0;
    if (omega0.is_zero()) {
        out.omega_tilde = out.Omega = r.mu = r.rho_mu = omega0;
        r.closed_ok = r.dbar_t_ok = r.system_ok = r.recursion_ok = true;
        return out;
    }
    auto [p, q] = pure_bidegree(omega0);
    r.p = p, r.q = q;
    if (!condition_B(m, p, q + 1)) throw HypothesisError("B" + bd(p, q + 1) + " fails");
    if (!condition_B(m, q, p + 1)) throw HypothesisError("B" + bd(q, p + 1) + " fails");
    VectorForm psi = psi_of(phi);
    int kmax = std::min(q, n - p);
    auto S1 = [&](const Form& x) {
        Form s(model);
        for (int k = 1; k <= kmax; ++k) s += iota_power(phi, k, iota_power(psi, k, x));
        return s;
    };
    auto S2 = [&](const Form& x) {
        Form s(model);
        for (int k = 1; k <= kmax; ++k) s += iota_power(phi, k - 1, iota_power(psi, k, x));
        return s;
    };
    auto S3 = [&](const Form& x) {
        Form s(model);
        for (int k = 0; k <= kmax; ++k) s += iota_power(phi, k + 1, iota_power(psi, k, x));
        return s;
    };
    Form omega = omega0;
    r.recursion_ok = true;
    for (int l = 1; l <= N; ++l) {
        Form zeta = -S2(omega).homogeneous(l);
        Form xibar = -S3(omega).homogeneous(l);
        Form x = solve_system(zeta, xibar.conj());
        omega += x - S1(omega).homogeneous(l);
    }
    omega = omega.truncated(N);
    out.omega_tilde = omega;
    r.mu = (omega + S1(omega)).truncated(N);
    r.system_ok = del(r.mu) == -delbar(S2(omega)) && delbar(r.mu) == -del(S3(omega));
    out.Omega = simultaneous_contract(inverse_one_minus(phi), omega);
    r.rho_mu = ext_map_pair(phi, out.Omega);
    Form de = d(r.rho_mu);
    r.closed_ok = de.is_zero();
    for (int k = 0; k <= N; ++k) r.residual_norms.push_back(norm2(de.homogeneous(k)));
    r.dbar_t_ok = pulled_back_delbar(phi, out.Omega).is_zero();
    return out;
}

std::string RouteComparison::str() const {
    std::string s = "routes_agree=" + yes(agree) + "\n";
    for (std::size_t k = 0; k < per_order.size(); ++k) s += "order_" + std::to_string(k) + "=" + yes(per_order[k]) + "\n";
    return s;
}

RouteComparison compare_routes(const ExtensionResult& bc, const MildResult& mild) {
    RouteComparison c;
    const Form& a = bc.mu;
    const Form& b = mild.result.mu;
    if (a.is_zero() && b.is_zero()) return c;
    const ComplexModel& m = *(a.model() ? a.model() : b.model());
    Form diff = b - a;
    int p = bc.p, q = bc.q;
    for (int k = 0; k <= bc.N; ++k) {
        Form part = diff.homogeneous(k);
        bool ok = part.is_zero() ||
                  (p >= 1 && q >= 1 && part.is_pure(p, q) && in_image(op_matrix(m, Op::deldelbar, p - 1, q - 1), part, p, q));
        c.per_order.push_back(ok);
        c.agree = c.agree && ok;
    }
    return c;
}

} // namespace nilcohom
