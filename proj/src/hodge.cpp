#include "nilcohom/hodge.hpp"

#include "nilcohom/error.hpp"

#include <iomanip>
#include <sstream>
#include <unordered_map>

namespace nilcohom {

namespace {

enum Code {
    kDel = 1,
    kDelbar,
    kDdbar,
    kDpq,
    kDtotal,
    kLaplacian = 10,
    kKernel = 20,
    kHarmonic = 30,
    kGreen = 40,
    kDeRham = 50,
};

std::unordered_map<Mask, std::size_t> index_of(const std::vector<Mask>& basis) {
    std::unordered_map<Mask, std::size_t> idx;
    for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
    return idx;
}

// Matrix of the part of d mapping src into tgt.
QMatrix d_between(const ComplexModel& m, const std::vector<Mask>& src, const std::vector<Mask>& tgt) {
    QMatrix a(tgt.size(), src.size());
    auto idx = index_of(tgt);
    for (std::size_t j = 0; j < src.size(); ++j)
        for (const auto& [m2, c] : m.d_monomial(src[j])) {
            auto it = idx.find(m2);
            if (it != idx.end()) a(it->second, j) = c;
        }
    return a;
}

void check_bidegree(const ComplexModel& m, int p, int q) {
    if (p < 0 || q < 0 || p > m.n() || q > m.n())
        throw MathError("bidegree (" + std::to_string(p) + "," + std::to_string(q) + ") out of range");
}

QMatrix green_of(const QMatrix& lap, const QMatrix& harm) {
    if (lap.rows() == 0) return lap;
    return linalg::inverse(lap + harm) - harm;
}

} // namespace

const QMatrix& op_matrix(const ComplexModel& m, Op which, int p, int q) {
    int n = m.n();
    switch (which) {
    case Op::del:
        return m.memo({kDel, p, q, 0}, [&] { return d_between(m, monomial::basis(n, p, q), monomial::basis(n, p + 1, q)); });
    case Op::delbar:
        return m.memo({kDelbar, p, q, 0}, [&] { return d_between(m, monomial::basis(n, p, q), monomial::basis(n, p, q + 1)); });
    case Op::deldelbar:
        return m.memo({kDdbar, p, q, 0}, [&] { return op_matrix(m, Op::del, p, q + 1) * op_matrix(m, Op::delbar, p, q); });
    case Op::d:
        return m.memo({kDpq, p, q, 0}, [&] { return d_between(m, monomial::basis(n, p, q), monomial::basis_total(n, p + q + 1)); });
    }
    throw MathError("unknown operator");
}

const QMatrix& d_total(const ComplexModel& m, int k) {
    return m.memo({kDtotal, k, 0, 0}, [&] {
        int n = m.n();
        return d_between(m, k < 0 ? std::vector<Mask>{} : monomial::basis_total(n, k), monomial::basis_total(n, k + 1));
    });
}

OperatorMatrix operator_matrix(const ComplexModel& m, Op which, int p, int q) {
    check_bidegree(m, p, q);
    OperatorMatrix r{p, q, p, q, op_matrix(m, which, p, q)};
    switch (which) {
    case Op::del: r.target_p = p + 1; break;
    case Op::delbar: r.target_q = q + 1; break;
    case Op::deldelbar: r.target_p = p + 1, r.target_q = q + 1; break;
    case Op::d: r.target_p = p + q + 1, r.target_q = -1; break;
    }
    return r;
}

const QMatrix& laplacian_matrix(const ComplexModel& m, Laplacian kind, int p, int q) {
    return m.memo({kLaplacian + int(kind), p, q, 0}, [&]() -> QMatrix {
        auto D = [&](int a, int b) { return op_matrix(m, Op::del, a, b); };
        auto Db = [&](int a, int b) { return op_matrix(m, Op::delbar, a, b); };
        auto DDb = [&](int a, int b) { return op_matrix(m, Op::deldelbar, a, b); };
        switch (kind) {
        case Laplacian::delbar:
            return Db(p, q - 1) * Db(p, q - 1).adjoint() + Db(p, q).adjoint() * Db(p, q);
        case Laplacian::del:
            return D(p - 1, q) * D(p - 1, q).adjoint() + D(p, q).adjoint() * D(p, q);
        case Laplacian::bc: {
            QMatrix r = DDb(p - 1, q - 1) * DDb(p - 1, q - 1).adjoint();
            r += DDb(p, q).adjoint() * DDb(p, q);
            r += Db(p, q).adjoint() * D(p - 1, q + 1) * D(p - 1, q + 1).adjoint() * Db(p, q);
            r += D(p, q).adjoint() * Db(p + 1, q - 1) * Db(p + 1, q - 1).adjoint() * D(p, q);
            r += Db(p, q).adjoint() * Db(p, q);
            r += D(p, q).adjoint() * D(p, q);
            return r;
        }
        case Laplacian::aeppli: {
            QMatrix r = DDb(p, q).adjoint() * DDb(p, q);
            r += DDb(p - 1, q - 1) * DDb(p - 1, q - 1).adjoint();
            r += Db(p, q - 1) * D(p, q - 1).adjoint() * D(p, q - 1) * Db(p, q - 1).adjoint();
            r += D(p - 1, q) * Db(p - 1, q).adjoint() * Db(p - 1, q) * D(p - 1, q).adjoint();
            r += Db(p, q - 1) * Db(p, q - 1).adjoint();
            r += D(p - 1, q) * D(p - 1, q).adjoint();
            return r;
        }
        }
        throw MathError("unknown Laplacian");
    });
}

OperatorMatrix laplacian(const ComplexModel& m, Laplacian kind, int p, int q) {
    check_bidegree(m, p, q);
    return {p, q, p, q, laplacian_matrix(m, kind, p, q)};
}

const QMatrix& de_rham_laplacian(const ComplexModel& m, int k) {
    return m.memo({kDeRham, k, 0, 0}, [&] {
        const QMatrix& a = d_total(m, k - 1);
        const QMatrix& b = d_total(m, k);
        return a * a.adjoint() + b.adjoint() * b;
    });
}

HarmonicGreen harmonic_and_green(const ComplexModel& m, Laplacian kind, int p, int q) {
    int code = int(kind);
    const QMatrix& lap = laplacian_matrix(m, kind, p, q);
    const QMatrix& ker = m.memo({kKernel + code, p, q, 0}, [&] { return linalg::kernel(lap); });
    const QMatrix& harm = m.memo({kHarmonic + code, p, q, 0}, [&] { return linalg::projector(ker); });
    const QMatrix& green = m.memo({kGreen + code, p, q, 0}, [&] { return green_of(lap, harm); });
    return {ker, harm, green};
}

HarmonicGreen harmonic_and_green_total(const ComplexModel& m, int k) {
    const QMatrix& lap = de_rham_laplacian(m, k);
    const QMatrix& ker = m.memo({kKernel + 9, k, 0, 0}, [&] { return linalg::kernel(lap); });
    const QMatrix& harm = m.memo({kHarmonic + 9, k, 0, 0}, [&] { return linalg::projector(ker); });
    const QMatrix& green = m.memo({kGreen + 9, k, 0, 0}, [&] { return green_of(lap, harm); });
    return {ker, harm, green};
}

// ---------------------------------------------------------------------------

namespace {

CohomologyTable empty_table(const ComplexModel& m) {
    CohomologyTable t;
    t.model = m.name();
    t.n = m.n();
    auto grid = std::vector<std::vector<int>>(m.n() + 1, std::vector<int>(m.n() + 1, 0));
    t.h_dbar = t.h_del = t.h_bc = t.h_a = grid;
    t.b.assign(2 * m.n() + 1, 0);
    return t;
}

int dim(int n, int p, int q) { return int(monomial::basis(n, p, q).size()); }

} // namespace

CohomologyTable cohomology(const ComplexModel& m) {
    CohomologyTable t = empty_table(m);
    int n = m.n();
    auto rk = [](const QMatrix& a) { return int(linalg::rank(a)); };
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            int N = dim(n, p, q);
            const QMatrix& D = op_matrix(m, Op::del, p, q);
            const QMatrix& Db = op_matrix(m, Op::delbar, p, q);
            t.h_dbar[p][q] = N - rk(Db) - rk(op_matrix(m, Op::delbar, p, q - 1));
            t.h_del[p][q] = N - rk(D) - rk(op_matrix(m, Op::del, p - 1, q));
            t.h_bc[p][q] = N - rk(vstack(D, Db)) - rk(op_matrix(m, Op::deldelbar, p - 1, q - 1));
            t.h_a[p][q] = N - rk(op_matrix(m, Op::deldelbar, p, q)) -
                          rk(hstack(op_matrix(m, Op::del, p - 1, q), op_matrix(m, Op::delbar, p, q - 1)));
        }
    for (int k = 0; k <= 2 * n; ++k)
        t.b[k] = int(monomial::basis_total(n, k).size()) - rk(d_total(m, k)) - rk(d_total(m, k - 1));
    return t;
}

CohomologyTable cohomology_laplacian(const ComplexModel& m) {
    CohomologyTable t = empty_table(m);
    int n = m.n();
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            t.h_dbar[p][q] = int(harmonic_and_green(m, Laplacian::delbar, p, q).kernel.cols());
            t.h_del[p][q] = int(harmonic_and_green(m, Laplacian::del, p, q).kernel.cols());
            t.h_bc[p][q] = int(harmonic_and_green(m, Laplacian::bc, p, q).kernel.cols());
            t.h_a[p][q] = int(harmonic_and_green(m, Laplacian::aeppli, p, q).kernel.cols());
        }
    for (int k = 0; k <= 2 * n; ++k) t.b[k] = int(harmonic_and_green_total(m, k).kernel.cols());
    return t;
}

std::string CohomologyTable::duality_violation() const {
    auto at = [](int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; };
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            if (h_bc[p][q] != h_bc[q][p]) return "h_BC" + at(p, q) + " != h_BC" + at(q, p);
            if (h_bc[p][q] != h_a[n - q][n - p]) return "h_BC" + at(p, q) + " != h_A" + at(n - q, n - p);
            if (h_dbar[p][q] != h_del[q][p]) return "h_dbar" + at(p, q) + " != h_d" + at(q, p);
            if (h_dbar[p][q] != h_dbar[n - p][n - q]) return "h_dbar" + at(p, q) + " != h_dbar" + at(n - p, n - q);
        }
    return {};
}

std::string CohomologyTable::tsv(bool pretty) const {
    std::ostringstream os;
    auto row = [&](std::vector<std::string> cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (pretty)
                os << std::setw(i == 0 ? 3 : 10) << cells[i];
            else
                os << (i ? "\t" : "") << cells[i];
        }
        os << "\n";
    };
    row({"p", "q", "h_dbar", "h_d", "h_BC", "h_A"});
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            row({std::to_string(p), std::to_string(q), std::to_string(h_dbar[p][q]), std::to_string(h_del[p][q]),
                 std::to_string(h_bc[p][q]), std::to_string(h_a[p][q])});
    os << "\n";
    row({"k", "b_k", "at_defect"});
    for (int k = 0; k <= 2 * n; ++k) {
        int s = 0;
        for (int p = std::max(0, k - n); p <= std::min(k, n); ++p) s += h_bc[p][k - p] + h_a[p][k - p];
        row({std::to_string(k), std::to_string(b[k]), std::to_string(s - 2 * b[k])});
    }
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

QMatrix coordinates(const QMatrix& basis, const QMatrix& vectors) {
    QMatrix c(basis.cols(), vectors.cols());
    for (std::size_t j = 0; j < vectors.cols(); ++j) {
        auto x = linalg::solve(basis, vectors.column(j));
        if (!x) throw MathError("vector outside harmonic space");
        c.set_column(j, *x);
    }
    return c;
}

// Embedding of the (p,q) basis into the total-degree basis.
QMatrix embed_pq(int n, int p, int q) {
    auto src = monomial::basis(n, p, q);
    auto tgt = monomial::basis_total(n, p + q);
    auto idx = index_of(tgt);
    QMatrix e(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) e(idx.at(src[j]), j) = GaussRational(1);
    return e;
}

} // namespace

MapInfo diagram_map(const ComplexModel& m, DiagramMap which, int p, int q) {
    check_bidegree(m, p, q);
    int n = m.n();
    QMatrix src, tgt, images;
    switch (which) {
    case DiagramMap::bc_del:
    case DiagramMap::bc_delbar: {
        src = harmonic_and_green(m, Laplacian::bc, p, q).kernel;
        auto h = harmonic_and_green(m, which == DiagramMap::bc_del ? Laplacian::del : Laplacian::delbar, p, q);
        tgt = h.kernel;
        images = h.harmonic * src;
        break;
    }
    case DiagramMap::bc_dr: {
        src = harmonic_and_green(m, Laplacian::bc, p, q).kernel;
        auto h = harmonic_and_green_total(m, p + q);
        tgt = h.kernel;
        images = h.harmonic * (embed_pq(n, p, q) * src);
        break;
    }
    case DiagramMap::delbar_a:
    case DiagramMap::del_a: {
        src = harmonic_and_green(m, which == DiagramMap::del_a ? Laplacian::del : Laplacian::delbar, p, q).kernel;
        auto h = harmonic_and_green(m, Laplacian::aeppli, p, q);
        tgt = h.kernel;
        images = h.harmonic * src;
        break;
    }
    case DiagramMap::dr_a: {
        src = harmonic_and_green_total(m, p + q).kernel;
        auto h = harmonic_and_green(m, Laplacian::aeppli, p, q);
        tgt = h.kernel;
        images = h.harmonic * (embed_pq(n, p, q).transpose() * src);
        break;
    }
    }
    MapInfo info;
    info.matrix = coordinates(tgt, images);
    info.rank = linalg::rank(info.matrix);
    info.injective = info.rank == src.cols();
    info.surjective = info.rank == tgt.cols();
    return info;
}

bool diagram_commutes(const ComplexModel& m, int p, int q) {
    QMatrix a = diagram_map(m, DiagramMap::delbar_a, p, q).matrix * diagram_map(m, DiagramMap::bc_delbar, p, q).matrix;
    QMatrix b = diagram_map(m, DiagramMap::del_a, p, q).matrix * diagram_map(m, DiagramMap::bc_del, p, q).matrix;
    QMatrix c = diagram_map(m, DiagramMap::dr_a, p, q).matrix * diagram_map(m, DiagramMap::bc_dr, p, q).matrix;
    return a == b && b == c;
}

// ---------------------------------------------------------------------------

namespace {

bool contained(const QMatrix& vectors, const QMatrix& image) {
    if (vectors.cols() == 0 || vectors.is_zero()) return true;
    return linalg::rank(hstack(image, vectors)) == linalg::rank(image);
}

std::string cond(const std::string& name, int p, int q) {
    return name + "^{" + std::to_string(p) + "," + std::to_string(q) + "}";
}

} // namespace

LemmaReport lemma_variants(const ComplexModel& m) {
    int n = m.n();
    LemmaReport r;
    r.model = m.name();
    r.n = n;
    auto grid = std::vector<std::vector<bool>>(n + 1, std::vector<bool>(n + 1, true));
    r.B = r.S = r.calB = r.calS = r.B_direct = r.S_direct = r.calB_direct = grid;
    r.ddbar_lemma = true;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            r.B[p][q] = diagram_map(m, DiagramMap::bc_del, p, q).injective;
            r.S[p][q] = diagram_map(m, DiagramMap::delbar_a, p, q).injective;
            r.calB[p][q] = p == 0 ? true : diagram_map(m, DiagramMap::bc_delbar, p - 1, q).surjective;
            if (!diagram_map(m, DiagramMap::bc_dr, p, q).injective) r.ddbar_lemma = false;
            if (p == 0) continue;
            const QMatrix& D = op_matrix(m, Op::del, p - 1, q);
            QMatrix closed_dd = linalg::kernel(op_matrix(m, Op::delbar, p, q) * D);
            QMatrix closed = linalg::kernel(op_matrix(m, Op::delbar, p - 1, q));
            const QMatrix& im_ddb = op_matrix(m, Op::deldelbar, p - 1, q - 1);
            const QMatrix& im_db = op_matrix(m, Op::delbar, p, q - 1);
            r.B_direct[p][q] = contained(D * closed_dd, im_ddb);
            r.S_direct[p][q] = contained(D * closed_dd, im_db);
            r.calB_direct[p][q] = contained(D * closed, im_ddb);
            r.calS[p][q] = contained(D * closed, im_db);
        }
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            auto diag = [&](const std::string& name, bool map_test, bool direct) {
                if (map_test != direct)
                    r.diagnostics.push_back(cond(name, p, q) + ": map test " + (map_test ? "true" : "false") +
                                            ", direct test " + (direct ? "true" : "false"));
            };
            diag("B", r.B[p][q], r.B_direct[p][q]);
            diag("S", r.S[p][q], r.S_direct[p][q]);
            diag("calB", r.calB[p][q], r.calB_direct[p][q]);
        }
    CohomologyTable t = cohomology(m);
    r.at_defect.assign(2 * n + 1, 0);
    for (int k = 0; k <= 2 * n; ++k) {
        int s = 0;
        for (int p = std::max(0, k - n); p <= std::min(k, n); ++p) s += t.h_bc[p][k - p] + t.h_a[p][k - p];
        r.at_defect[k] = s - 2 * t.b[k];
    }
    return r;
}

std::string LemmaReport::lattice_violation() const {
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            if (B[p][q] && !S[p][q]) return cond("B", p, q) + " holds but " + cond("S", p, q) + " fails";
            if (B[p][q] && !calB[p][q]) return cond("B", p, q) + " holds but " + cond("calB", p, q) + " fails";
            if (S[p][q] && !calS[p][q]) return cond("S", p, q) + " holds but " + cond("calS", p, q) + " fails";
            if (calB[p][q] && !calS[p][q]) return cond("calB", p, q) + " holds but " + cond("calS", p, q) + " fails";
            if (ddbar_lemma && !B[p][q]) return "ddbar-lemma holds but " + cond("B", p, q) + " fails";
        }
    return {};
}

std::string LemmaReport::tsv(bool pretty) const {
    std::ostringstream os;
    auto row = [&](std::vector<std::string> cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (pretty)
                os << std::setw(i == 0 ? 3 : 6) << cells[i];
            else
                os << (i ? "\t" : "") << cells[i];
        }
        os << "\n";
    };
    auto b = [](bool x) { return std::string(x ? "1" : "0"); };
    row({"p", "q", "B", "S", "calB", "calS"});
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            row({std::to_string(p), std::to_string(q), b(B[p][q]), b(S[p][q]), b(calB[p][q]), b(calS[p][q])});
    os << "\n";
    row({"k", "at_defect"});
    for (int k = 0; k <= 2 * n; ++k) row({std::to_string(k), std::to_string(at_defect[k])});
    os << "\nddbar_lemma\t" << (ddbar_lemma ? "holds" : "fails") << "\n";
    for (const auto& d : diagnostics) os << "diagnostic\t" << d << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------

QVector to_vector(const Form& a, int p, int q) {
    auto basis = monomial::basis(a.n(), p, q);
    auto idx = index_of(basis);
    QVector v(basis.size());
    for (const auto& [m, c] : a.terms()) {
        auto it = idx.find(m);
        if (it == idx.end()) throw MathError("form has components outside bidegree (" + std::to_string(p) + "," + std::to_string(q) + ")");
        if (!c.is_constant()) throw MathError("form coefficients are not constant");
        v[it->second] = c.constant();
    }
    return v;
}

Form from_vector(const ModelPtr& model, const QVector& v, int p, int q) {
    auto basis = monomial::basis(model->n(), p, q);
    Form f(model);
    for (std::size_t i = 0; i < basis.size(); ++i) f.add(basis[i], Series(v[i]));
    return f;
}

Form apply(const QMatrix& mat, const std::vector<Mask>& src, const std::vector<Mask>& tgt, const Form& a) {
    auto idx = index_of(src);
    Form r(a.model());
    for (const auto& [m, c] : a.terms()) {
        auto it = idx.find(m);
        if (it == idx.end()) throw MathError("form has components outside the operator's source space");
        std::size_t j = it->second;
        for (std::size_t i = 0; i < tgt.size(); ++i)
            if (!mat(i, j).is_zero()) r.add(tgt[i], c * mat(i, j));
    }
    return r;
}

namespace {

std::map<Exponent, QVector> slices(const Form& a, int p, int q) {
    auto basis = monomial::basis(a.n(), p, q);
    auto idx = index_of(basis);
    std::map<Exponent, QVector> out;
    for (const auto& [m, c] : a.terms()) {
        auto it = idx.find(m);
        if (it == idx.end()) throw MathError("form is not of pure bidegree");
        for (const auto& [e, v] : c.terms()) {
            auto& vec = out[e];
            if (vec.empty()) vec.resize(basis.size());
            vec[it->second] = v;
        }
    }
    return out;
}

std::string bideg(int p, int q) { return "{" + std::to_string(p) + "," + std::to_string(q) + "}"; }

} // namespace

bool in_image(const QMatrix& mat, const Form& a, int p, int q) {
    for (const auto& [e, v] : slices(a, p, q))
        if (!linalg::in_column_space(mat, v)) return false;
    return true;
}

std::pair<int, int> pure_bidegree(const Form& a) {
    auto b = a.bidegrees();
    if (b.size() != 1) throw MathError(b.empty() ? "zero form has no bidegree" : "form is not of pure bidegree");
    return *b.begin();
}

Form solve_ddbar(const Form& alpha) {
    if (alpha.is_zero()) return alpha;
    const ComplexModel& m = *alpha.model();
    int n = m.n();
    auto [p, q] = pure_bidegree(alpha);
    const QMatrix& ddb = op_matrix(m, Op::deldelbar, p - 1, q - 1);
    if (!in_image(ddb, alpha, p, q)) {
        QMatrix proj = linalg::projector(linalg::column_basis(ddb));
        auto basis = monomial::basis(n, p, q);
        Form residual = alpha - apply(proj, basis, basis, alpha);
        throw MathError("del delbar x = alpha is not solvable; residual " + residual.str());
    }
    QMatrix sol = ddb.adjoint() * harmonic_and_green(m, Laplacian::bc, p, q).green;
    Form x = apply(sol, monomial::basis(n, p, q), monomial::basis(n, p - 1, q - 1), alpha);
    if (!(del(delbar(x)) == alpha)) throw MathError("solve_ddbar verification failed");
    return x;
}

Form canonical_representative(const Form& sigma) {
    if (sigma.is_zero()) return sigma;
    const ComplexModel& m = *sigma.model();
    int n = m.n();
    auto [p, q] = pure_bidegree(sigma);
    if (!delbar(sigma).is_zero()) throw MathError("canonical_representative: form is not delbar-closed");
    auto basis = monomial::basis(n, p, q);
    Form h = apply(harmonic_and_green(m, Laplacian::delbar, p, q).harmonic, basis, basis, sigma);
    Form y = del(h);
    Form gamma = h;
    if (!y.is_zero()) {
        const QMatrix& ddb = op_matrix(m, Op::deldelbar, p, q - 1);
        if (!in_image(ddb, y, p + 1, q))
            throw HypothesisError("calB^" + bideg(p + 1, q) + " fails: del H(sigma) is not del delbar-exact");
        QMatrix sol = ddb.adjoint() * harmonic_and_green(m, Laplacian::bc, p + 1, q).green;
        Form beta = -apply(sol, monomial::basis(n, p + 1, q), monomial::basis(n, p, q - 1), y);
        gamma += delbar(beta);
    }
    if (!d(gamma).is_zero()) throw MathError("canonical_representative verification failed");
    return gamma;
}

Form solve_system(const Form& zeta, const Form& xi) {
    ModelPtr model = zeta.model() ? zeta.model() : xi.model();
    if (!model) throw MathError("solve_system needs a model");
    const ComplexModel& m = *model;
    int n = m.n();
    Form xib = xi.is_zero() ? Form(model) : xi.conj();
    if (!del(delbar(zeta)).is_zero()) throw MathError("solvability condition fails: del delbar zeta != 0");
    if (!delbar(del(xib)).is_zero()) throw MathError("solvability condition fails: delbar del conj(xi) != 0");
    Form lhs1 = delbar(zeta), lhs2 = del(xib);
    Form x(model);
    if (lhs1.is_zero() && lhs2.is_zero()) return x;
    std::pair<int, int> target{-1, -1};
    if (!lhs1.is_zero()) {
        auto [a, b] = pure_bidegree(lhs1);
        target = {a - 1, b};
    }
    if (!lhs2.is_zero()) {
        auto [a, b] = pure_bidegree(lhs2);
        if (target.first >= 0 && target != std::pair<int, int>{a, b - 1}) throw MathError("solve_system: inconsistent bidegrees");
        target = {a, b - 1};
    }
    auto [p, q] = target;
    auto part = [&](const Form& rhs, int a, int b) {
        // (del delbar)^* G_BC rhs with rhs in A^{a,b}
        const QMatrix& ddb = op_matrix(m, Op::deldelbar, a - 1, b - 1);
        if (!in_image(ddb, rhs, a, b))
            throw HypothesisError("mild ddbar condition fails at " + bideg(a, b) + ": right-hand side is not del delbar-exact");
        QMatrix sol = ddb.adjoint() * harmonic_and_green(m, Laplacian::bc, a, b).green;
        return apply(sol, monomial::basis(n, a, b), monomial::basis(n, a - 1, b - 1), rhs);
    };
    if (!lhs1.is_zero()) x += delbar(part(lhs1, p + 1, q));
    if (!lhs2.is_zero()) x -= del(part(lhs2, p, q + 1));
    if (!(del(x) == lhs1)) throw MathError("solve_system: del x != delbar zeta");
    if (!(delbar(x) == lhs2)) throw MathError("solve_system: delbar x != del conj(xi)");
    return x;
}

} // namespace nilcohom
