#include "nilcohom/deform.hpp"

#include "nilcohom/error.hpp"
#include "nilcohom/sampling.hpp"

#include <sstream>

namespace nilcohom {

namespace {

enum Code { kVecDelbar = 60, kVecLaplacian, kVecKernel, kVecHarmonic, kVecGreen, kKuranishiStep };

std::size_t slot_size(int n, int q) { return monomial::basis(n, 0, q).size(); }

Series with_order(const Series& s, int order) {
    Series r(GaussRational(0), order);
    for (const auto& [e, c] : s.terms()) r = r + Series::monomial(e, c, order);
    return r;
}

Beltrami raise_order(const Beltrami& phi, int order) {
    Beltrami r(phi.model());
    for (int g = 0; g < phi.slots(); ++g) {
        Form f(phi.model());
        for (const auto& [m, c] : phi[g].terms()) f.add(m, with_order(c, order));
        r[g] = f;
    }
    return r;
}

int rank_of(const QMatrix& a) { return int(linalg::rank(a)); }

} // namespace

QVector to_vvector(const VectorForm& v, int q) {
    int n = v.n();
    auto basis = monomial::basis(n, 0, q);
    QVector x(n * basis.size());
    for (int k = 0; k < n; ++k) {
        if (v[k].is_zero()) continue;
        QVector part = to_vector(v[k], 0, q);
        for (std::size_t j = 0; j < basis.size(); ++j) x[k * basis.size() + j] = part[j];
    }
    for (int g = n; g < v.slots(); ++g)
        if (!v[g].is_zero()) throw MathError("vector form has (0,1)-valued components");
    return x;
}

VectorForm from_vvector(const ModelPtr& model, const QVector& v, int q) {
    int n = model->n();
    auto basis = monomial::basis(n, 0, q);
    VectorForm r(model);
    for (int k = 0; k < n; ++k)
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (!v[k * basis.size() + j].is_zero()) r[k].add(basis[j], Series(v[k * basis.size() + j]));
    return r;
}

VectorForm apply_vector(const QMatrix& mat, int q_src, int q_tgt, const VectorForm& v) {
    const ModelPtr& model = v.model();
    int n = model->n();
    auto src = monomial::basis(n, 0, q_src);
    auto tgt = monomial::basis(n, 0, q_tgt);
    std::map<Mask, std::size_t> idx;
    for (std::size_t j = 0; j < src.size(); ++j) idx[src[j]] = j;
    VectorForm r(model);
    for (int k = 0; k < n; ++k)
        for (const auto& [m, c] : v[k].terms()) {
            auto it = idx.find(m);
            if (it == idx.end()) throw MathError("vector form outside the operator's source space");
            std::size_t col = k * src.size() + it->second;
            for (std::size_t row = 0; row < mat.rows(); ++row)
                if (!mat(row, col).is_zero()) r[int(row / tgt.size())].add(tgt[row % tgt.size()], c * mat(row, col));
        }
    return r;
}

const QMatrix& vector_delbar_matrix(const ModelPtr& model, int q) {
    return model->memo({kVecDelbar, q, 0, 0}, [&] {
        int n = model->n();
        auto basis = q < 0 ? std::vector<Mask>{} : monomial::basis(n, 0, q);
        QMatrix a(n * slot_size(n, q + 1), n * basis.size());
        for (int k = 0; k < n; ++k)
            for (std::size_t j = 0; j < basis.size(); ++j) {
                VectorForm v(model);
                v[k] = Form::monomial(model, basis[j]);
                a.set_column(k * basis.size() + j, to_vvector(delbar_beltrami(v), q + 1));
            }
        return a;
    });
}

const QMatrix& vector_laplacian(const ModelPtr& model, int q) {
    return model->memo({kVecLaplacian, q, 0, 0}, [&] {
        const QMatrix& a = vector_delbar_matrix(model, q - 1);
        const QMatrix& b = vector_delbar_matrix(model, q);
        return a * a.adjoint() + b.adjoint() * b;
    });
}

HarmonicGreen vector_harmonic_and_green(const ModelPtr& model, int q) {
    const QMatrix& lap = vector_laplacian(model, q);
    const QMatrix& ker = model->memo({kVecKernel, q, 0, 0}, [&] { return linalg::kernel(lap); });
    const QMatrix& harm = model->memo({kVecHarmonic, q, 0, 0}, [&] { return linalg::projector(ker); });
    const QMatrix& green = model->memo({kVecGreen, q, 0, 0}, [&] {
        return lap.rows() == 0 ? lap : QMatrix(linalg::inverse(lap + harm) - harm);
    });
    return {ker, harm, green};
}

std::vector<Beltrami> harmonic_beltrami_basis(const ModelPtr& model) {
    QMatrix ker = vector_harmonic_and_green(model, 1).kernel;
    std::vector<Beltrami> out;
    for (std::size_t j = 0; j < ker.cols(); ++j) out.push_back(from_vvector(model, ker.column(j), 1));
    return out;
}

Beltrami check_maurer_cartan(const Beltrami& phi, int N) {
    return (delbar_beltrami(phi) - bracket(phi, phi) * GaussRational(mpq_class(1, 2))).truncated(N);
}

KuranishiFamily kuranishi_series(const ModelPtr& model, int N) {
    return kuranishi_series(model, N, harmonic_beltrami_basis(model));
}

KuranishiFamily kuranishi_series(const ModelPtr& model, int N, const std::vector<Beltrami>& directions) {
    if (N < 1 || N > Series::kExactOrder) throw MathError("truncation order must be in 1.." + std::to_string(Series::kExactOrder));
    if (int(directions.size()) > Series::kMaxParams)
        throw MathError("family has " + std::to_string(directions.size()) + " parameters; at most " +
                        std::to_string(Series::kMaxParams) + " supported");
    KuranishiFamily fam;
    fam.model = model;
    fam.m = int(directions.size());
    fam.N = N;
    fam.basis = directions;
    fam.orders.assign(N + 1, Beltrami(model));
    fam.obstruction = Beltrami(model);
    for (int nu = 0; nu < fam.m; ++nu) fam.orders[1] += directions[nu] * Series::variable(nu, N);
    fam.orders[1] = fam.orders[1].truncated(N);
    HarmonicGreen g2 = vector_harmonic_and_green(model, 2);
    const QMatrix& step = model->memo({kKuranishiStep, 0, 0, 0}, [&] {
        return QMatrix((vector_delbar_matrix(model, 1).adjoint() * g2.green).scaled(GaussRational(mpq_class(1, 2))));
    });
    Beltrami phi = fam.orders[1];
    for (int k = 2; k <= N; ++k) {
        Beltrami b = bracket(phi, phi).homogeneous(k);
        fam.obstruction += apply_vector(g2.harmonic, 2, 2, b);
        fam.orders[k] = apply_vector(step, 2, 1, b);
        phi += fam.orders[k];
    }
    fam.phi = phi;
    for (int k = 0; k <= N; ++k)
        if (!fam.orders[k].is_zero()) fam.top_order = k;
    int full = 2 * fam.top_order;
    if (fam.top_order < N && !fam.obstructed() && full <= Series::kExactOrder)
        fam.terminated = check_maurer_cartan(raise_order(phi, std::max(full, 1)), std::max(full, 1)).is_zero();
    return fam;
}

std::string KuranishiFamily::summary() const {
    std::ostringstream os;
    os << "model=" << model->name() << "\n";
    os << "m=" << m << "\n";
    os << "order=" << N << "\n";
    os << "top_order=" << top_order << "\n";
    os << "terminated=" << (terminated ? "yes" : "no") << "\n";
    os << "obstructed=" << (obstructed() ? "yes" : "no") << "\n";
    os << "mc_residual=" << (check_maurer_cartan(phi, N).is_zero() ? "0" : "nonzero") << "\n";
    os << "obstruction=" << (obstructed() ? obstruction.str() : "0") << "\n";
    for (int nu = 0; nu < m; ++nu) os << "eta" << nu + 1 << "=" << basis[nu].str() << "\n";
    for (int k = 1; k <= top_order; ++k) os << "phi" << k << "=" << orders[k].str() << "\n";
    return os.str();
}

SeriesMatrix deformed_operator(const Beltrami& phi, Deformed which, int p, int q) {
    const ModelPtr& model = phi.model();
    int n = model->n();
    if (p < 0 || q < 0 || p > n || q > n) throw MathError("bidegree out of range");
    int order = Series::kExactOrder;
    for (int k = 0; k < n; ++k)
        if (!phi[k].is_zero()) order = std::min(order, phi[k].order());
    if (!check_maurer_cartan(phi, order).is_zero())
        throw MathError("Maurer-Cartan residual is nonzero; the deformed operator would not square to zero");
    auto src = monomial::basis(n, p, q);
    auto tgt = which == Deformed::delbar_t ? monomial::basis(n, p, q + 1) : monomial::basis(n, p + 1, q);
    std::map<Mask, std::size_t> idx;
    for (std::size_t i = 0; i < tgt.size(); ++i) idx[tgt[i]] = i;
    SeriesMatrix a(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        Form x = Form::monomial(model, src[j]);
        Form img = which == Deformed::delbar_t ? pulled_back_delbar(phi, x) : pulled_back_del(phi, x);
        for (const auto& [m, c] : img.terms()) a(idx.at(m), j) = c;
    }
    return a;
}

QMatrix evaluate(const SeriesMatrix& a, const std::vector<GaussRational>& t) {
    QMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).evaluate(t);
    return r;
}

std::string point_str(const std::vector<GaussRational>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + t[i].str();
    return s + ")";
}

namespace {

std::size_t dim_pq(int n, int p, int q) {
    if (p < 0 || q < 0 || p > n || q > n) return 0;
    return monomial::basis(n, p, q).size();
}

} // namespace

QMatrix SampleOperators::D(int p, int q) const {
    int n = model->n();
    if (p < 0 || q < 0 || p > n || q > n) return QMatrix(dim_pq(n, p + 1, q), dim_pq(n, p, q));
    return del[p][q];
}

QMatrix SampleOperators::Db(int p, int q) const {
    int n = model->n();
    if (p < 0 || q < 0 || p > n || q > n) return QMatrix(dim_pq(n, p, q + 1), dim_pq(n, p, q));
    return delbar[p][q];
}

QMatrix SampleOperators::DDb(int p, int q) const { return D(p, q + 1) * Db(p, q); }

QMatrix SampleOperators::bc_laplacian(int p, int q) const {
    QMatrix r = DDb(p - 1, q - 1) * DDb(p - 1, q - 1).adjoint();
    r += DDb(p, q).adjoint() * DDb(p, q);
    r += Db(p, q).adjoint() * D(p - 1, q + 1) * D(p - 1, q + 1).adjoint() * Db(p, q);
    r += D(p, q).adjoint() * Db(p + 1, q - 1) * Db(p + 1, q - 1).adjoint() * D(p, q);
    r += Db(p, q).adjoint() * Db(p, q);
    r += D(p, q).adjoint() * D(p, q);
    return r;
}

SampleOperators sample_operators(const Beltrami& phi, bool delbar_only) {
    const ModelPtr& model = phi.model();
    int n = model->n();
    SampleOperators ops;
    ops.model = model;
    ops.del.assign(n + 1, std::vector<QMatrix>(n + 1));
    ops.delbar = ops.del;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            auto src = monomial::basis(n, p, q);
            auto tb = q < n ? monomial::basis(n, p, q + 1) : std::vector<Mask>{};
            auto td = p < n ? monomial::basis(n, p + 1, q) : std::vector<Mask>{};
            std::map<Mask, std::size_t> ib, id;
            for (std::size_t i = 0; i < tb.size(); ++i) ib[tb[i]] = i;
            for (std::size_t i = 0; i < td.size(); ++i) id[td[i]] = i;
            ops.delbar[p][q] = QMatrix(tb.size(), src.size());
            ops.del[p][q] = QMatrix(td.size(), src.size());
            for (std::size_t j = 0; j < src.size(); ++j) {
                Form x = Form::monomial(model, src[j]);
                Form img = delbar_only ? deformed_delbar(phi, x) : pulled_back_d(phi, x);
                for (const auto& [m, c] : img.terms()) {
                    if (!c.is_constant()) throw MathError("non-constant coefficient at a sample");
                    int a = monomial::p_degree(m, n), b = monomial::q_degree(m, n);
                    if (a == p && b == q + 1)
                        ops.delbar[p][q](ib.at(m), j) = c.constant();
                    else if (a == p + 1 && b == q && !delbar_only)
                        ops.del[p][q](id.at(m), j) = c.constant();
                    else
                        throw MathError("pulled-back d leaves the two expected bidegrees");
                }
            }
        }
    return ops;
}

DeformedTable hodge_numbers_at(const KuranishiFamily& fam, const std::vector<GaussRational>& t, bool bott_chern) {
    int n = fam.model->n();
    Beltrami phi = fam.phi.evaluate(t);
    if (!check_maurer_cartan(phi, Series::kExactOrder).is_zero())
        throw MathError("Maurer-Cartan fails at t = " + point_str(t));
    SampleOperators ops = sample_operators(phi, !bott_chern);
    DeformedTable r;
    r.h_dbar.assign(n + 1, std::vector<int>(n + 1, 0));
    if (bott_chern) r.h_bc = r.h_dbar;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            int N = int(dim_pq(n, p, q));
            r.h_dbar[p][q] = N - rank_of(ops.Db(p, q)) - rank_of(ops.Db(p, q - 1));
            if (!bott_chern) continue;
            r.h_bc[p][q] = N - rank_of(vstack(ops.D(p, q), ops.Db(p, q))) - rank_of(ops.DDb(p - 1, q - 1));
        }
    return r;
}

std::vector<std::vector<GaussRational>> default_samples(int m, int count, std::uint64_t seed) {
    Sampler s(seed);
    std::vector<std::vector<GaussRational>> out;
    for (int i = 0; i < count; ++i) out.push_back(s.sample_point(m));
    return out;
}

std::vector<std::pair<int, int>> ScanReport::jumps() const {
    std::vector<std::pair<int, int>> out;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            if (jumped[p][q]) out.emplace_back(p, q);
    return out;
}

std::vector<std::string> ScanReport::failed_hypotheses(int p, int q) const {
    auto bd = [](int a, int b) { return "^{" + std::to_string(a) + "," + std::to_string(b) + "}"; };
    std::vector<std::string> out;
    if (!hyp_B[p][q]) out.push_back("B" + bd(p, q + 1));
    if (!hyp_calB[p][q]) out.push_back("calB" + bd(p + 1, q));
    if (!hyp_prev[p][q]) out.push_back("invariance of h" + bd(p, q - 1));
    return out;
}

namespace {

std::string pairs(const std::vector<std::pair<int, int>>& v) {
    std::string s;
    for (auto [p, q] : v) s += (s.empty() ? "" : " ") + ("(" + std::to_string(p) + "," + std::to_string(q) + ")");
    return s.empty() ? "none" : s;
}

} // namespace

std::string ScanReport::tsv() const {
    std::ostringstream os;
    os << "sample\tt\n";
    for (std::size_t s = 0; s < samples.size(); ++s) os << s + 1 << "\t" << point_str(samples[s]) << "\n";
    os << "\nsample\tp\tq\th_t\th_0\tjumped\thypotheses\n";
    for (std::size_t s = 0; s < samples.size(); ++s)
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) {
                int ht = at[s].h_dbar[p][q], h0 = at_zero.h_dbar[p][q];
                os << s + 1 << "\t" << p << "\t" << q << "\t" << ht << "\t" << h0 << "\t" << (ht != h0 ? 1 : 0) << "\t";
                auto failed = failed_hypotheses(p, q);
                if (failed.empty())
                    os << "all";
                else
                    for (std::size_t i = 0; i < failed.size(); ++i) os << (i ? "," : "") << "not " << failed[i];
                os << "\n";
            }
    if (bott_chern) {
        os << "\nsample\tp\tq\th_BC_t\th_BC_0\tjumped\n";
        for (std::size_t s = 0; s < samples.size(); ++s)
            for (int p = 0; p <= n; ++p)
                for (int q = 0; q <= n; ++q) {
                    int ht = at[s].h_bc[p][q], h0 = at_zero.h_bc[p][q];
                    os << s + 1 << "\t" << p << "\t" << q << "\t" << ht << "\t" << h0 << "\t" << (ht != h0 ? 1 : 0) << "\n";
                }
    }
    os << "\nmodel=" << model << "\n";
    os << "jumps=" << pairs(jumps()) << "\n";
    if (bott_chern) {
        std::vector<std::pair<int, int>> j;
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q)
                if (jumped_bc[p][q]) j.emplace_back(p, q);
        os << "jumps_bc=" << pairs(j) << "\n";
    }
    os << "semicontinuity=" << (semicontinuous ? "ok" : "violated") << "\n";
    os << "counterexamples=" << counterexamples.size() << "\n";
    for (const auto& c : counterexamples) os << "counterexample=" << c << "\n";
    for (const auto& c : notes) os << "note=" << c << "\n";
    return os.str();
}

ScanReport invariance_scan(const KuranishiFamily& fam, const std::vector<std::vector<GaussRational>>& samples, bool bott_chern) {
    if (samples.empty()) throw MathError("scan needs at least one sample");
    const ModelPtr& model = fam.model;
    const ComplexModel& m = *model;
    int n = m.n();
    ScanReport r;
    r.model = m.name();
    r.n = n;
    r.samples = samples;
    r.bott_chern = bott_chern;
    r.at_zero = hodge_numbers_at(fam, std::vector<GaussRational>(fam.m), bott_chern);
    for (const auto& t : samples) r.at.push_back(hodge_numbers_at(fam, t, bott_chern));
    auto grid = std::vector<std::vector<bool>>(n + 1, std::vector<bool>(n + 1, false));
    r.jumped = r.jumped_bc = r.hyp_B = r.hyp_calB = r.hyp_prev = grid;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            for (std::size_t s = 0; s < samples.size(); ++s) {
                int ht = r.at[s].h_dbar[p][q], h0 = r.at_zero.h_dbar[p][q];
                if (ht != h0) r.jumped[p][q] = true;
                if (ht > h0) r.semicontinuous = false;
                if (ht != r.at[0].h_dbar[p][q])
                    r.notes.push_back("samples disagree on h^{" + std::to_string(p) + "," + std::to_string(q) + "}");
                if (bott_chern) {
                    int bt = r.at[s].h_bc[p][q], b0 = r.at_zero.h_bc[p][q];
                    if (bt != b0) r.jumped_bc[p][q] = true;
                    if (bt > b0) r.semicontinuous = false;
                }
            }
    LemmaReport lemma = lemma_variants(m);
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            r.hyp_B[p][q] = q + 1 > n || diagram_map(m, DiagramMap::bc_del, p, q + 1).injective;
            r.hyp_calB[p][q] = diagram_map(m, DiagramMap::bc_delbar, p, q).surjective;
            r.hyp_prev[p][q] = q == 0 || !r.jumped[p][q - 1];
        }
    auto at = [](int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; };
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            if (!r.jumped[p][q]) continue;
            if (r.hyp_B[p][q] && r.hyp_calB[p][q] && r.hyp_prev[p][q])
                r.counterexamples.push_back("B, calB and h^{p,q-1} invariance hold at " + at(p, q) + " but h jumps");
            if (q == 0 && r.hyp_B[p][0] && lemma.calS_at(p + 1, 0))
                r.counterexamples.push_back("B^{p,1} and calS^{p+1,0} hold at " + at(p, 0) + " but h jumps");
            if (p == 0 && r.hyp_calB[0][q] && r.hyp_prev[0][q])
                r.counterexamples.push_back("calB^{1,q} and h^{0,q-1} invariance hold at " + at(0, q) + " but h jumps");
        }
    for (std::size_t s = 0; s < samples.size(); ++s)
        for (int p = 0; p <= n; ++p) {
            int e0 = 0, et = 0;
            for (int q = 0; q <= n; ++q) {
                e0 += (q % 2 ? -1 : 1) * r.at_zero.h_dbar[p][q];
                et += (q % 2 ? -1 : 1) * r.at[s].h_dbar[p][q];
            }
            if (e0 != et) r.counterexamples.push_back("Euler characteristic of row p=" + std::to_string(p) + " changes");
        }
    std::sort(r.notes.begin(), r.notes.end());
    r.notes.erase(std::unique(r.notes.begin(), r.notes.end()), r.notes.end());
    return r;
}

} // namespace nilcohom
