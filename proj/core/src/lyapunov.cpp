#include "dicke/lyapunov.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <cmath>
#include <string>
#include <vector>

#include "dicke/blas_check.hpp"
#include "dicke/errors.hpp"

namespace dicke {

namespace {

using Eigen::MatrixXd;
using CRef = Eigen::Ref<const MatrixXd>;
using MRef = Eigen::Ref<MatrixXd>;

constexpr Eigen::Index kLeaf = 96;

// C = alpha op(A) op(B) + beta C
void gemm(double alpha, const CRef& A, bool ta, const CRef& B, bool tb, double beta, MRef C) {
    const auto m = static_cast<int>(C.rows());
    const auto n = static_cast<int>(C.cols());
    const auto k = static_cast<int>(ta ? A.rows() : A.cols());
    if (m == 0 || n == 0)
        return;
    cblas_dgemm(CblasColMajor, ta ? CblasTrans : CblasNoTrans, tb ? CblasTrans : CblasNoTrans, m, n, k,
                alpha, A.data(), static_cast<int>(A.outerStride()), B.data(),
                static_cast<int>(B.outerStride()), beta, C.data(), static_cast<int>(C.outerStride()));
}

// Split index near the middle that does not cut a 2x2 diagonal block
Eigen::Index split_point(const CRef& T) {
    Eigen::Index k = T.rows() / 2;
    if (T(k, k - 1) != 0.0)
        ++k;
    return k;
}

void trsyl_leaf(const CRef& T1, const CRef& T2, MRef C) {
    double scale = 1.0;
    const lapack_int info = LAPACKE_dtrsyl(
        LAPACK_COL_MAJOR, 'N', 'T', 1, static_cast<lapack_int>(T1.rows()),
        static_cast<lapack_int>(T2.rows()), T1.data(), static_cast<lapack_int>(T1.outerStride()),
        T2.data(), static_cast<lapack_int>(T2.outerStride()), C.data(),
        static_cast<lapack_int>(C.outerStride()), &scale);
    if (info < 0)
        throw LyapunovSingular("dtrsyl rejected argument " + std::to_string(-info));
    if (scale != 1.0)
        C /= scale;
}

struct Schur {
    MatrixXd T;
    MatrixXd Z;
    Eigen::VectorXcd ev;
};

// C holds the right-hand side in the Schur basis and becomes Y
SchurLyapunov finish(Schur&& s, MatrixXd&& C) {
    solve_quasi_triangular_lyapunov(s.T, C);
    return {std::move(s.Z), std::move(C), std::move(s.ev)};
}

Schur real_schur(const MatrixXd& A) {
    if (A.rows() != A.cols() || A.rows() == 0)
        throw LyapunovSingular("Lyapunov drift matrix must be square and non-empty");
    // dgees reaches dtrmm through its Householder updates; a faulty kernel makes QR spin forever
    require_triangular_blas();
    const auto n = static_cast<lapack_int>(A.rows());
    Schur s{A, MatrixXd(A.rows(), A.rows()), Eigen::VectorXcd(A.rows())};
    std::vector<double> wr(A.rows()), wi(A.rows());
    lapack_int sdim = 0;
    const lapack_int info = LAPACKE_dgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, n, s.T.data(), n, &sdim,
                                          wr.data(), wi.data(), s.Z.data(), n);
    if (info != 0)
        throw LyapunovSingular("real Schur decomposition failed (dgees info " + std::to_string(info) + ")");
    double max_re = -INFINITY;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        s.ev(i) = {wr[i], wi[i]};
        max_re = std::max(max_re, wr[i]);
    }
    if (!(max_re < 0.0))
        throw LyapunovSingular("drift matrix is not stable: max Re(lambda) = " + std::to_string(max_re) +
                               " (normal phase unstable)");
    return s;
}

} // namespace

void solve_quasi_triangular_sylvester(const CRef& T1, const CRef& T2, MRef C) {
    const Eigen::Index m = T1.rows(), n = T2.rows();
    if (m <= kLeaf && n <= kLeaf) {
        trsyl_leaf(T1, T2, C);
        return;
    }
    if (m >= n) {
        const Eigen::Index k = split_point(T1);
        // rows: [A11 A12; 0 A22] [Y1; Y2] + [Y1; Y2] T2^T = [C1; C2]
        solve_quasi_triangular_sylvester(T1.bottomRightCorner(m - k, m - k), T2, C.bottomRows(m - k));
        gemm(-1.0, T1.topRightCorner(k, m - k), false, C.bottomRows(m - k), false, 1.0, C.topRows(k));
        solve_quasi_triangular_sylvester(T1.topLeftCorner(k, k), T2, C.topRows(k));
    } else {
        const Eigen::Index k = split_point(T2);
        // columns: T1 [Y1 Y2] + [Y1 Y2] [B11^T 0; B12^T B22^T] = [C1 C2]
        solve_quasi_triangular_sylvester(T1, T2.bottomRightCorner(n - k, n - k), C.rightCols(n - k));
        gemm(-1.0, C.rightCols(n - k), false, T2.topRightCorner(k, n - k), true, 1.0, C.leftCols(k));
        solve_quasi_triangular_sylvester(T1, T2.topLeftCorner(k, k), C.leftCols(k));
    }
}

void solve_quasi_triangular_lyapunov(const CRef& T, MRef C) {
    const Eigen::Index n = T.rows();
    if (n <= kLeaf) {
        trsyl_leaf(T, T, C);
        return;
    }
    const Eigen::Index k = split_point(T);
    const Eigen::Index r = n - k;
    const auto T11 = T.topLeftCorner(k, k);
    const auto T12 = T.topRightCorner(k, r);
    const auto T22 = T.bottomRightCorner(r, r);

    solve_quasi_triangular_lyapunov(T22, C.bottomRightCorner(r, r));
    gemm(-1.0, T12, false, C.bottomRightCorner(r, r), false, 1.0, C.topRightCorner(k, r));
    solve_quasi_triangular_sylvester(T11, T22, C.topRightCorner(k, r));
    C.bottomLeftCorner(r, k) = C.topRightCorner(k, r).transpose();
    // C11 -= T12 Y12^T + Y12 T12^T
    gemm(-1.0, T12, false, C.topRightCorner(k, r), true, 1.0, C.topLeftCorner(k, k));
    gemm(-1.0, C.topRightCorner(k, r), false, T12, true, 1.0, C.topLeftCorner(k, k));
    solve_quasi_triangular_lyapunov(T11, C.topLeftCorner(k, k));
}

SchurLyapunov solve_lyapunov_schur(const MatrixXd& A, const MatrixXd& Q) {
    if (Q.rows() != A.rows() || Q.cols() != A.cols())
        throw LyapunovSingular("noise matrix shape does not match the drift matrix");
    Schur s = real_schur(A);
    const Eigen::Index n = A.rows();
    MatrixXd QZ(n, n), C(n, n);
    gemm(1.0, Q, false, s.Z, false, 0.0, QZ);
    gemm(-1.0, s.Z, true, QZ, false, 0.0, C);
    C = 0.5 * (C + C.transpose()).eval();
    return finish(std::move(s), std::move(C));
}

SchurLyapunov solve_lyapunov_schur_diag(const MatrixXd& A, const Eigen::VectorXd& q) {
    if (q.size() != A.rows())
        throw LyapunovSingular("noise diagonal length does not match the drift matrix");
    if ((q.array() < 0.0).any())
        throw LyapunovSingular("noise diagonal must be non-negative");
    Schur s = real_schur(A);
    const Eigen::Index n = A.rows();
    // C = -Z^T diag(q) Z = -W W^T with W = Z^T diag(sqrt q)
    MatrixXd W = s.Z.transpose() * q.cwiseSqrt().asDiagonal();
    MatrixXd C(n, n);
    gemm(-1.0, W, false, W, true, 0.0, C);
    return finish(std::move(s), std::move(C));
}

MatrixXd solve_lyapunov(const MatrixXd& A, const MatrixXd& Q) {
    const SchurLyapunov sol = solve_lyapunov_schur(A, Q);
    const Eigen::Index n = A.rows();
    MatrixXd ZY(n, n), X(n, n);
    gemm(1.0, sol.Z, false, sol.Y, false, 0.0, ZY);
    gemm(1.0, ZY, false, sol.Z, true, 0.0, X);
    return X;
}

} // namespace dicke
