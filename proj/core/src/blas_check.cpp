#include "dicke/blas_check.hpp"

#include <cblas.h>
#include <unistd.h>

#include <cstdlib>

#include <Eigen/Dense>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

using Eigen::MatrixXd;

constexpr const char* kCoreVar = "OPENBLAS_CORETYPE";

MatrixXd probe(Eigen::Index rows, Eigen::Index cols, double diag) {
    MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            m(i, j) = 1.0 / (1.0 + static_cast<double>(i) + 2.0 * static_cast<double>(j)) + (i == j ? diag : 0.0);
    return m;
}

bool check(int n) {
    const int k = 7;
    const MatrixXd U = probe(n, n, 2.0).triangularView<Eigen::Upper>();
    const MatrixXd B = probe(n, k, 0.0);

    MatrixXd P = B;
    cblas_dtrmm(CblasColMajor, CblasLeft, CblasUpper, CblasNoTrans, CblasNonUnit, n, k, 1.0, U.data(), n,
                P.data(), n);
    // Eigen evaluates the reference with its own kernels
    const MatrixXd P_ref = U.triangularView<Eigen::Upper>() * B;
    if (!((P - P_ref).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + P_ref.cwiseAbs().maxCoeff())))
        return false;

    MatrixXd S = B;
    cblas_dtrsm(CblasColMajor, CblasLeft, CblasUpper, CblasNoTrans, CblasNonUnit, n, k, 1.0, U.data(), n,
                S.data(), n);
    const MatrixXd back = U.triangularView<Eigen::Upper>() * S;
    return (back - B).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + B.cwiseAbs().maxCoeff());
}

} // namespace

bool triangular_blas_ok() {
    static const bool ok = check(8) && check(96) && check(300);
    return ok;
}

void require_triangular_blas() {
    if (!triangular_blas_ok())
        throw NumericalError("BLAS backend returns wrong triangular products (dtrmm/dtrsm); "
                             "with OpenBLAS, set OPENBLAS_CORETYPE=Haswell");
}

void relaunch_if_blas_broken(char** argv) {
    if (triangular_blas_ok() || std::getenv(kCoreVar) != nullptr)
        return;
    ::setenv(kCoreVar, "Haswell", 1);
    ::execv("/proc/self/exe", argv);
    // exec failed: carry on, solvers will report the problem
}

} // namespace dicke
