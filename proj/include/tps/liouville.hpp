// Copyright 2026 The tps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <vector>

#include "tps/hilbert.hpp"

namespace tps {

/// Contributes (rate/2) (2 c rho c^dag - c^dag c rho - rho c^dag c).
struct LindbladChannel {
  Operator collapse;
  double rate = 0.0;
};

/// Hamiltonian, dissipators and the detected mode(s) on one space.
struct OpenSystem {
  HilbertSpace space;
  Operator hamiltonian;
  std::vector<LindbladChannel> channels;
  Operator detect;
  std::optional<Operator> detect2;

  /// Throws on negative rates, space mismatch or non-Hermitian H.
  void validate() const;
};

// Vectorization convention (column stacking): rho(i, j) sits at index
// i + D * j, so vec(A X B) = (B^T ⊗ A) vec(X). This coincides with the
// storage order of a column-major Eigen matrix.

Vector vectorize(const DenseMatrix& rho);
DenseMatrix unvectorize(const Vector& v, Index dim);

/// Superoperator of X -> A X B.
SparseMatrix sandwich(const SparseMatrix& a, const SparseMatrix& b);
/// X -> O X
SparseMatrix left_multiply(const SparseMatrix& o);
/// X -> X O
SparseMatrix right_multiply(const SparseMatrix& o);

/// Row vector t with t . vec(X) = Tr X.
Eigen::RowVectorXcd trace_functional(Index dim);
cplx trace_of(const Vector& v, Index dim);

/// Regression matrix acting on vectorized operators: d/dt vec(rho) = M vec(rho).
struct Superoperator {
  Index dim = 0;  // Hilbert-space dimension D; the matrix is D^2 x D^2
  SparseMatrix matrix;

  Index liouville_dim() const { return dim * dim; }
};

Superoperator build_liouvillian(const OpenSystem& sys);

struct SteadyState {
  DenseMatrix rho;
  double residual = 0.0;         // ||M vec(rho)||_inf on the unmodified M
  double hermiticity_error = 0.0;
  std::optional<double> min_eigenvalue;  // only computed for small D

  cplx expectation(const Operator& op) const;
};

struct SteadyStateOptions {
  double residual_tol = 1e-10;
  double hermiticity_tol = 1e-10;
  double positivity_tol = 1e-8;
  Index positivity_max_dim = 200;
  // Dense second-null-vector check below this Liouville dimension.
  Index uniqueness_max_liouville_dim = 400;
};

/// Unique steady state by replacing one row of M with the trace
/// functional and solving with sparse LU.
SteadyState steady_state(const Superoperator& m, const SteadyStateOptions& opts = {});

/// vec(rho_t) = exp(M t) vec(rho_0) by adaptive Dormand-Prince
/// integration. Oracle use only (D <= 64).
DenseMatrix evolve(const Superoperator& m, const DenseMatrix& rho0, double t, double tol = 1e-12);

}  // namespace tps
