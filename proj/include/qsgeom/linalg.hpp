#pragma once

#include <cstddef>
#include <vector>

#include "qsgeom/errors.hpp"

namespace qsg {

/// Dense row-major real matrix for the small (<= 4x4) tensors used here.
struct DMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    DMatrix() = default;
    DMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static DMatrix identity(int n);
};

DMatrix matmul(const DMatrix& x, const DMatrix& y);
DMatrix transpose(const DMatrix& x);
double max_abs(const DMatrix& x);

struct EigenDecomposition {
    std::vector<double> values;  // unordered
    DMatrix vectors;             // columns are eigenvectors
};

/// Cyclic Jacobi rotations for a symmetric matrix.  Input symmetry is the
/// caller's responsibility (the upper triangle is mirrored internally).
EigenDecomposition jacobi_eigen(const DMatrix& sym);

/// Inverse via eigendecomposition.  Throws NumericalError when
/// |lambda_min| < rel_tol * |lambda_max| instead of silently
/// pseudo-inverting.
DMatrix invert_symmetric(const DMatrix& sym, double rel_tol = 1e-12);

}  // namespace qsg
