// blas_check.hpp - Runtime check of the triangular BLAS kernels used inside LAPACK's Schur routines

#pragma once

namespace dicke {

// True when dtrmm and dtrsm reproduce reference products on small fixed problems.
// Evaluated once per process.
bool triangular_blas_ok();

// Throws NumericalError when triangular_blas_ok() is false
void require_triangular_blas();

// For executables, call first thing in main. When the check fails and OPENBLAS_CORETYPE is
// unset, re-executes the process with OPENBLAS_CORETYPE=Haswell (portable AVX2 kernels).
// Returns normally otherwise.
void relaunch_if_blas_broken(char** argv);

} // namespace dicke
