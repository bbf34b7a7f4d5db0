#include "nilcohom/matrix.hpp"

#include <sstream>

namespace nilcohom::linalg {

Echelon rref(QMatrix a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        GaussRational inv = GaussRational(1) / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j)
            if (!a(r, j).is_zero()) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            GaussRational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

std::size_t rank(const QMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    return rref(a).pivots.size();
}

QMatrix kernel(const QMatrix& a) {
    std::size_t n = a.cols();
    if (a.rows() == 0) return QMatrix::identity(n);
    Echelon e = rref(a);
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<QVector> cols;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        QVector v(n);
        v[f] = GaussRational(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
        cols.push_back(std::move(v));
    }
    return QMatrix::from_columns(n, cols);
}

QMatrix column_basis(const QMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return QMatrix(a.rows(), 0);
    Echelon e = rref(a);
    std::vector<QVector> cols;
    for (auto c : e.pivots) cols.push_back(a.column(c));
    return QMatrix::from_columns(a.rows(), cols);
}

QMatrix inverse(const QMatrix& a) {
    if (a.rows() != a.cols()) throw MathError("inverse of a non-square matrix");
    std::size_t n = a.rows();
    Echelon e = rref(hstack(a, QMatrix::identity(n)));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) throw MathError("singular matrix");
    QMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = e.reduced(i, n + j);
    return r;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
    std::size_t n = a.cols();
    QMatrix aug(a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    Echelon e = rref(aug);
    if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
    QVector x(n);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, n);
    return x;
}

bool in_column_space(const QMatrix& a, const QVector& b) {
    bool zero = true;
    for (const auto& x : b) zero = zero && x.is_zero();
    if (zero) return true;
    if (a.cols() == 0) return false;
    return solve(a, b).has_value();
}

QMatrix projector(const QMatrix& k) {
    if (k.cols() == 0) return QMatrix(k.rows(), k.rows());
    QMatrix ka = k.adjoint();
    return k * inverse(ka * k) * ka;
}

bool is_hermitian(const QMatrix& a) { return a.rows() == a.cols() && a == a.adjoint(); }

} // namespace nilcohom::linalg

namespace nilcohom {

std::string to_string(const QMatrix& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "[";
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
        os << "]\n";
    }
    return os.str();
}

} // namespace nilcohom
