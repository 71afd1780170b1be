#include "qsgeom/linalg.hpp"

#include <cmath>
#include <cstdio>

namespace qsg {

DMatrix DMatrix::identity(int n) {
    DMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

DMatrix matmul(const DMatrix& x, const DMatrix& y) {
    if (x.cols != y.rows) throw DomainError("matmul dimension mismatch");
    DMatrix out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const double xv = x.at(i, k);
            if (xv == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) out.at(i, j) += xv * y.at(k, j);
        }
    return out;
}

DMatrix transpose(const DMatrix& x) {
    DMatrix out(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out.at(j, i) = x.at(i, j);
    return out;
}

double max_abs(const DMatrix& x) {
    double m = 0.0;
    for (double v : x.a) m = std::max(m, std::abs(v));
    return m;
}

EigenDecomposition jacobi_eigen(const DMatrix& sym) {
    if (sym.rows != sym.cols) throw DomainError("jacobi_eigen needs a square matrix");
    const int n = sym.rows;
    DMatrix a = sym;
    // mirror the upper triangle so a stray asymmetry cannot leak in
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a.at(i, j) + a.at(j, i));
            a.at(i, j) = a.at(j, i) = v;
        }

    DMatrix v = DMatrix::identity(n);
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0, total = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double w = a.at(i, j) * a.at(i, j);
                total += w;
                if (j > i) off += w;
            }
        if (off <= 1e-30 * total || total == 0.0) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (apq == 0.0) continue;
                const double app = a.at(p, p);
                const double aqq = a.at(q, q);
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a.at(k, p);
                    const double akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a.at(p, k);
                    const double aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v.at(k, p);
                    const double vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    EigenDecomposition dec;
    dec.values.resize(n);
    for (int i = 0; i < n; ++i) dec.values[i] = a.at(i, i);
    dec.vectors = v;
    return dec;
}

DMatrix invert_symmetric(const DMatrix& sym, double rel_tol) {
    auto dec = jacobi_eigen(sym);
    const int n = sym.rows;
    double lmax = 0.0, lmin = HUGE_VAL;
    for (double l : dec.values) {
        lmax = std::max(lmax, std::abs(l));
        lmin = std::min(lmin, std::abs(l));
    }
    if (lmax == 0.0 || lmin < rel_tol * lmax) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "singular metric: |lambda_min| < %g * |lambda_max|, inversion rejected",
                      rel_tol);
        throw NumericalError(buf);
    }
    DMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k)
                s += dec.vectors.at(i, k) * dec.vectors.at(j, k) / dec.values[k];
            out.at(i, j) = s;
        }
    return out;
}

}  // namespace qsg
