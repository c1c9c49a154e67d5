#include "orb/linalg.hpp"

#include <algorithm>

#include "orb/error.hpp"

namespace orb {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::column(int j) const {
    Matrix c(rows, 1);
    for (int i = 0; i < rows; ++i) c(i, 0) = (*this)(i, j);
    return c;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) fail("DimensionMismatch", "matrix product shapes");
    Matrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Scalar& xik = x(i, k);
            if (xik.is_zero()) continue;
            for (int j = 0; j < y.cols; ++j) {
                if (y(k, j).is_zero()) continue;
                z(i, j) += xik * y(k, j);
            }
        }
    return z;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) fail("DimensionMismatch", "matrix sum shapes");
    Matrix z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
    return z;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) fail("DimensionMismatch", "matrix difference shapes");
    Matrix z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
    return z;
}

Matrix scaled(const Matrix& x, const Scalar& s) {
    Matrix z = x;
    for (auto& v : z.a) v *= s;
    return z;
}

Matrix kron(const Matrix& x, const Matrix& y) {
    Matrix z(x.rows * y.rows, x.cols * y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) {
            if (x(i, j).is_zero()) continue;
            for (int k = 0; k < y.rows; ++k)
                for (int l = 0; l < y.cols; ++l) z(i * y.rows + k, j * y.cols + l) = x(i, j) * y(k, l);
        }
    return z;
}

double max_distance(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) fail("DimensionMismatch", "matrix comparison shapes");
    double r = 0.0;
    for (size_t i = 0; i < x.a.size(); ++i) r = std::max(r, distance(x.a[i], y.a[i]));
    return r;
}

bool all_exact(const Matrix& x) {
    return std::all_of(x.a.begin(), x.a.end(), [](const Scalar& s) { return s.is_exact(); });
}

namespace {

bool negligible(const Scalar& s, double tol) {
    return s.is_exact() ? s.is_zero() : s.abs() <= tol;
}

// In-place reduced row echelon form, pivoting only in columns < pivot_cols;
// returns the pivot columns.
std::vector<int> rref(Matrix& m, double tol, int pivot_cols = -1) {
    if (pivot_cols < 0) pivot_cols = m.cols;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < pivot_cols && r < m.rows; ++c) {
        int best = -1;
        double best_abs = 0.0;
        for (int i = r; i < m.rows; ++i) {
            if (negligible(m(i, c), tol)) continue;
            if (m(i, c).is_exact()) { best = i; break; }
            double v = m(i, c).abs();
            if (v > best_abs) { best_abs = v; best = i; }
        }
        if (best < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m(r, j), m(best, j));
        Scalar piv = m(r, c);
        for (int j = 0; j < m.cols; ++j) m(r, j) /= piv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Scalar f = m(i, c);
            for (int j = 0; j < m.cols; ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
            m(i, c) = Scalar(0);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int rank(const Matrix& x, double tol) {
    Matrix m = x;
    return static_cast<int>(rref(m, tol).size());
}

Matrix column_basis(const Matrix& x, double tol) {
    Matrix m = x;
    auto piv = rref(m, tol);
    Matrix b(x.rows, static_cast<int>(piv.size()));
    for (size_t k = 0; k < piv.size(); ++k)
        for (int i = 0; i < x.rows; ++i) b(i, static_cast<int>(k)) = x(i, piv[k]);
    return b;
}

Matrix nullspace(const Matrix& x, double tol) {
    Matrix m = x;
    auto piv = rref(m, tol);
    std::vector<bool> is_piv(x.cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<int> frees;
    for (int c = 0; c < x.cols; ++c)
        if (!is_piv[c]) frees.push_back(c);
    Matrix ns(x.cols, static_cast<int>(frees.size()));
    for (size_t k = 0; k < frees.size(); ++k) {
        int f = frees[k];
        ns(f, static_cast<int>(k)) = Scalar(1);
        for (size_t r = 0; r < piv.size(); ++r) ns(piv[r], static_cast<int>(k)) = -m(static_cast<int>(r), f);
    }
    return ns;
}

Matrix inverse(const Matrix& x, double tol) {
    if (x.rows != x.cols) fail("DimensionMismatch", "inverse of a non-square matrix");
    int n = x.rows;
    Matrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = x(i, j);
        aug(i, n + i) = Scalar(1);
    }
    auto piv = rref(aug, tol, n);
    if (static_cast<int>(piv.size()) < n) fail("Singular", "matrix is not invertible");
    Matrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

Matrix solve(const Matrix& x, const Matrix& b, double tol) {
    if (x.rows != b.rows) fail("DimensionMismatch", "solve shapes");
    Matrix aug(x.rows, x.cols + b.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) aug(i, j) = x(i, j);
        for (int j = 0; j < b.cols; ++j) aug(i, x.cols + j) = b(i, j);
    }
    Matrix& coeff = aug;
    auto piv = rref(coeff, tol, x.cols);  // eliminate over the coefficient block only
    for (int i = static_cast<int>(piv.size()); i < x.rows; ++i)
        for (int j = 0; j < b.cols; ++j)
            if (!negligible(coeff(i, x.cols + j), tol)) fail("Inconsistent", "linear system has no solution");
    Matrix v(x.cols, b.cols);
    for (size_t r = 0; r < piv.size(); ++r)
        for (int j = 0; j < b.cols; ++j) v(piv[r], j) = coeff(static_cast<int>(r), x.cols + j);
    return v;
}

}  // namespace orb

namespace orb {

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
    SparseMatrix s(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (!m(i, j).is_zero()) s.row[i].emplace_back(j, m(i, j));
    return s;
}

SparseMatrix SparseMatrix::identity(int n) {
    SparseMatrix s(n, n);
    for (int i = 0; i < n; ++i) s.row[i].emplace_back(i, Scalar(1));
    return s;
}

Matrix SparseMatrix::to_dense() const {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, v] : row[i]) m(i, j) = v;
    return m;
}

void SparseMatrix::normalize() {
    for (auto& r : row) {
        std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, Scalar>> merged;
        for (auto& e : r) {
            if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
            else merged.push_back(std::move(e));
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& e) { return e.second.is_zero(); }),
                     merged.end());
        r = std::move(merged);
    }
}

Scalar SparseMatrix::get(int i, int j) const {
    const auto& r = row[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, int c) { return e.first < c; });
    return (it != r.end() && it->first == j) ? it->second : Scalar(0);
}

size_t SparseMatrix::nnz() const {
    size_t n = 0;
    for (const auto& r : row) n += r.size();
    return n;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, v] : row[i]) t.row[j].emplace_back(i, v);
    return t;
}

SparseMatrix operator*(const SparseMatrix& x, const SparseMatrix& y) {
    if (x.cols != y.rows) fail("DimensionMismatch", "sparse product shapes");
    SparseMatrix z(x.rows, y.cols);
    std::vector<Scalar> acc(y.cols);
    std::vector<char> used(y.cols, 0);
    std::vector<int> touched;
    for (int i = 0; i < x.rows; ++i) {
        touched.clear();
        for (const auto& [k, xv] : x.row[i])
            for (const auto& [j, yv] : y.row[k]) {
                if (!used[j]) {
                    used[j] = 1;
                    touched.push_back(j);
                    acc[j] = xv * yv;
                } else {
                    acc[j] += xv * yv;
                }
            }
        std::sort(touched.begin(), touched.end());
        for (int j : touched) {
            if (!acc[j].is_zero()) z.row[i].emplace_back(j, acc[j]);
            used[j] = 0;
        }
    }
    return z;
}

SparseMatrix scaled(const SparseMatrix& x, const Scalar& s) {
    SparseMatrix z = x;
    for (auto& r : z.row)
        for (auto& e : r) e.second *= s;
    z.normalize();
    return z;
}

double max_distance(const SparseMatrix& x, const SparseMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) fail("DimensionMismatch", "sparse comparison shapes");
    double d = 0.0;
    for (int i = 0; i < x.rows; ++i) {
        const auto &a = x.row[i], &b = y.row[i];
        size_t p = 0, q = 0;
        while (p < a.size() || q < b.size()) {
            if (q == b.size() || (p < a.size() && a[p].first < b[q].first)) {
                d = std::max(d, distance(a[p++].second, Scalar(0)));
            } else if (p == a.size() || b[q].first < a[p].first) {
                d = std::max(d, distance(Scalar(0), b[q++].second));
            } else {
                d = std::max(d, distance(a[p++].second, b[q++].second));
            }
        }
    }
    return d;
}

bool all_exact(const SparseMatrix& x) {
    for (const auto& r : x.row)
        for (const auto& e : r)
            if (!e.second.is_exact()) return false;
    return true;
}

std::vector<int> independent_columns(const SparseMatrix& x, double tol) {
    SparseMatrix t = x.transpose();
    struct Pivot {
        int at;
        std::map<int, Scalar> v;
    };
    std::vector<Pivot> pivots;
    std::vector<int> out;
    for (int c = 0; c < t.rows; ++c) {
        std::map<int, Scalar> v;
        for (const auto& [i, val] : t.row[c]) v.emplace(i, val);
        for (const auto& p : pivots) {
            auto it = v.find(p.at);
            if (it == v.end()) continue;
            Scalar f = it->second;
            for (const auto& [i, w] : p.v) {
                auto [jt, fresh] = v.emplace(i, Scalar(0));
                jt->second -= f * w;
            }
            v.erase(p.at);
        }
        for (auto it = v.begin(); it != v.end();) {
            if (negligible(it->second, tol)) it = v.erase(it);
            else ++it;
        }
        if (v.empty()) continue;
        int at = v.begin()->first;
        if (!v.begin()->second.is_exact()) {
            double best = 0.0;
            for (const auto& [i, w] : v)
                if (w.abs() > best) { best = w.abs(); at = i; }
        }
        Scalar piv = v.at(at);
        for (auto& [i, w] : v) w /= piv;
        for (auto& p : pivots) {
            auto it = p.v.find(at);
            if (it == p.v.end()) continue;
            Scalar f = it->second;
            for (const auto& [i, w] : v) {
                auto [jt, fresh] = p.v.emplace(i, Scalar(0));
                jt->second -= f * w;
            }
            p.v.erase(at);
        }
        pivots.push_back({at, std::move(v)});
        out.push_back(c);
    }
    return out;
}

int rank(const SparseMatrix& x, double tol) { return static_cast<int>(independent_columns(x, tol).size()); }

SparseMatrix select_columns(const SparseMatrix& x, const std::vector<int>& cols) {
    std::map<int, int> where;
    for (size_t k = 0; k < cols.size(); ++k) where[cols[k]] = static_cast<int>(k);
    SparseMatrix s(x.rows, static_cast<int>(cols.size()));
    for (int i = 0; i < x.rows; ++i)
        for (const auto& [j, v] : x.row[i]) {
            auto it = where.find(j);
            if (it != where.end()) s.row[i].emplace_back(it->second, v);
        }
    s.normalize();
    return s;
}

}  // namespace orb
