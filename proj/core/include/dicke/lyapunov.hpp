// lyapunov.hpp - Continuous-time Lyapunov equation A X + X A^T + Q = 0 via real Schur form

#pragma once

#include <Eigen/Dense>

namespace dicke {

struct SchurLyapunov {
    Eigen::MatrixXd Z;  // orthogonal Schur vectors, A = Z T Z^T
    Eigen::MatrixXd Y;  // solution in the Schur basis, X = Z Y Z^T
    Eigen::VectorXcd eigenvalues;
};

// Throws LyapunovSingular unless every eigenvalue of A has negative real part
SchurLyapunov solve_lyapunov_schur(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q);

// Same, for a diagonal Q given by its diagonal
SchurLyapunov solve_lyapunov_schur_diag(const Eigen::MatrixXd& A, const Eigen::VectorXd& q);

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q);

// T Y + Y T^T = C for upper quasi-triangular T; C is overwritten with Y
void solve_quasi_triangular_lyapunov(const Eigen::Ref<const Eigen::MatrixXd>& T,
                                     Eigen::Ref<Eigen::MatrixXd> C);

// T1 Y + Y T2^T = C for upper quasi-triangular T1, T2; C is overwritten with Y
void solve_quasi_triangular_sylvester(const Eigen::Ref<const Eigen::MatrixXd>& T1,
                                      const Eigen::Ref<const Eigen::MatrixXd>& T2,
                                      Eigen::Ref<Eigen::MatrixXd> C);

} // namespace dicke
