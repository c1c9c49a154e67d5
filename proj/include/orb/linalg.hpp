#pragma once

#include <map>
#include <vector>

#include "orb/scalar.hpp"

namespace orb {

// Dense row-major matrix over Scalar. Elimination routines treat an entry as
// zero when it is exactly zero (rationals) or below `tol` in modulus (floats).
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<Scalar> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Scalar& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Scalar& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Matrix identity(int n);
    Matrix transpose() const;
    Matrix column(int j) const;
};

Matrix operator*(const Matrix& x, const Matrix& y);
Matrix operator+(const Matrix& x, const Matrix& y);
Matrix operator-(const Matrix& x, const Matrix& y);
Matrix scaled(const Matrix& x, const Scalar& s);
Matrix kron(const Matrix& x, const Matrix& y);

// Largest entrywise distance; 0 exactly when x and y agree exactly.
double max_distance(const Matrix& x, const Matrix& y);
bool all_exact(const Matrix& x);

int rank(const Matrix& x, double tol);
// Columns spanning the column space (a subset of the columns of x).
Matrix column_basis(const Matrix& x, double tol);
// Basis of {v : x v = 0} as columns.
Matrix nullspace(const Matrix& x, double tol);
// Inverse of a square matrix; throws Error("Singular") if not invertible.
Matrix inverse(const Matrix& x, double tol);
// Least-squares-free solve for a consistent system x * v = b (b a column
// block); throws Error("Inconsistent") when no solution exists.
Matrix solve(const Matrix& x, const Matrix& b, double tol);

}  // namespace orb

namespace orb {

// Row-compressed sparse matrix; each row holds (column, value) pairs sorted
// by column with no stored zeros.
struct SparseMatrix {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, Scalar>>> row;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), row(r) {}

    static SparseMatrix from_dense(const Matrix& m);
    static SparseMatrix identity(int n);
    Matrix to_dense() const;
    // Sorts rows and merges duplicate entries; call after raw push_backs.
    void normalize();
    Scalar get(int i, int j) const;
    size_t nnz() const;
    SparseMatrix transpose() const;
};

SparseMatrix operator*(const SparseMatrix& x, const SparseMatrix& y);
SparseMatrix scaled(const SparseMatrix& x, const Scalar& s);
double max_distance(const SparseMatrix& x, const SparseMatrix& y);
bool all_exact(const SparseMatrix& x);
// Indices of a maximal set of linearly independent columns, scanning left
// to right.
std::vector<int> independent_columns(const SparseMatrix& x, double tol);
int rank(const SparseMatrix& x, double tol);
SparseMatrix select_columns(const SparseMatrix& x, const std::vector<int>& cols);

}  // namespace orb
