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

#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace tps {

using cplx = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<cplx>;  // column-major
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Triplet = Eigen::Triplet<cplx>;
using Index = Eigen::Index;

/// Truncated harmonic oscillator with photon numbers 0..n_max.
struct Bosonic {
  int n_max = 1;
  bool operator==(const Bosonic&) const = default;
};

struct TwoLevel {
  bool operator==(const TwoLevel&) const = default;
};

using ModeKind = std::variant<Bosonic, TwoLevel>;

Index dimension(const ModeKind& kind);
bool is_bosonic(const ModeKind& kind);
std::string describe(const ModeKind& kind);

/// Ordered tensor product of truncated modes.
///
/// The first factor is the slowest-varying index: a basis state
/// |i_0, i_1, ..., i_{k-1}> has flat index
/// ((i_0 * d_1 + i_1) * d_2 + ...) + i_{k-1}. Every embedding in this
/// library derives from that layout.
class HilbertSpace {
 public:
  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<ModeKind> factors);

  const std::vector<ModeKind>& factors() const { return factors_; }
  std::size_t num_factors() const { return factors_.size(); }
  Index dim() const { return dim_; }
  Index factor_dim(std::size_t i) const;

  /// Space with `extra` appended as the new fastest-varying factors.
  HilbertSpace extended(const std::vector<ModeKind>& extra) const;

  /// Same factors with every bosonic truncation raised by `delta`.
  HilbertSpace with_raised_truncation(int delta) const;

  bool operator==(const HilbertSpace& other) const { return factors_ == other.factors_; }

 private:
  std::vector<ModeKind> factors_;
  Index dim_ = 1;
};

/// Sparse operator on a HilbertSpace. Immutable value type.
class Operator {
 public:
  Operator() = default;
  Operator(HilbertSpace space, SparseMatrix matrix);

  const HilbertSpace& space() const { return space_; }
  const SparseMatrix& matrix() const { return matrix_; }
  DenseMatrix dense() const { return DenseMatrix(matrix_); }
  Index dim() const { return space_.dim(); }

 private:
  HilbertSpace space_;
  SparseMatrix matrix_;
};

Operator identity(const HilbertSpace& space);
Operator zero(const HilbertSpace& space);

/// Lowering operator of factor `factor_index`: the truncated bosonic `a`
/// or the two-level `sigma`, tensored with identities elsewhere.
Operator annihilator(const HilbertSpace& space, std::size_t factor_index);

/// Number operator of a factor (a^dag a or sigma^dag sigma).
Operator number(const HilbertSpace& space, std::size_t factor_index);

/// Embeds a local matrix acting on one factor into the full space.
Operator embed(const HilbertSpace& space, std::size_t factor_index, const SparseMatrix& local);

/// Lifts `op` into `target`, whose leading factors must equal op.space().
/// The result is op ⊗ I on the trailing factors.
Operator lift(const Operator& op, const HilbertSpace& target);

Operator adjoint(const Operator& a);
Operator mul(const Operator& a, const Operator& b);
/// a + c * b
Operator add_scaled(const Operator& a, cplx c, const Operator& b);
Operator scale(cplx c, const Operator& a);
Operator commutator(const Operator& a, const Operator& b);

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(cplx c, const Operator& a);

/// Maximum absolute entry of a - b; both must share a space.
double max_abs_diff(const Operator& a, const Operator& b);
/// Largest absolute entry.
double max_abs(const SparseMatrix& m);

bool is_hermitian(const Operator& a, double rel_tol);

/// Sparse Kronecker product with A as the slow index.
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace tps
