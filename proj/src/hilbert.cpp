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

#include "tps/hilbert.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "tps/error.hpp"

namespace tps {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::space_mismatch: return "space_mismatch";
    case ErrorCode::non_hermitian: return "non_hermitian";
    case ErrorCode::no_steady_state: return "no_steady_state";
    case ErrorCode::solver_residual: return "solver_residual";
    case ErrorCode::singular_shift: return "singular_shift";
    case ErrorCode::negative_coincidence: return "negative_coincidence";
    case ErrorCode::truncation_guard: return "truncation_guard";
    case ErrorCode::epsilon_guard: return "epsilon_guard";
    case ErrorCode::size_guard: return "size_guard";
    case ErrorCode::step_size: return "step_size";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

Index dimension(const ModeKind& kind) {
  if (const auto* b = std::get_if<Bosonic>(&kind)) return b->n_max + 1;
  return 2;
}

bool is_bosonic(const ModeKind& kind) { return std::holds_alternative<Bosonic>(kind); }

std::string describe(const ModeKind& kind) {
  if (const auto* b = std::get_if<Bosonic>(&kind)) return "bosonic(n_max=" + std::to_string(b->n_max) + ")";
  return "two_level";
}

HilbertSpace::HilbertSpace(std::vector<ModeKind> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw Error(ErrorCode::invalid_argument, "HilbertSpace needs at least one factor");
  dim_ = 1;
  for (const auto& f : factors_) {
    if (const auto* b = std::get_if<Bosonic>(&f); b && b->n_max < 1)
      throw Error(ErrorCode::invalid_argument, "bosonic truncation n_max must be >= 1");
    dim_ *= dimension(f);
  }
}

Index HilbertSpace::factor_dim(std::size_t i) const {
  if (i >= factors_.size()) throw Error(ErrorCode::invalid_argument, "factor index out of range");
  return dimension(factors_[i]);
}

HilbertSpace HilbertSpace::extended(const std::vector<ModeKind>& extra) const {
  auto f = factors_;
  f.insert(f.end(), extra.begin(), extra.end());
  return HilbertSpace(std::move(f));
}

HilbertSpace HilbertSpace::with_raised_truncation(int delta) const {
  auto f = factors_;
  for (auto& k : f)
    if (auto* b = std::get_if<Bosonic>(&k)) b->n_max += delta;
  return HilbertSpace(std::move(f));
}

Operator::Operator(HilbertSpace space, SparseMatrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim())
    throw Error(ErrorCode::space_mismatch, "operator matrix does not match space dimension");
  matrix_.makeCompressed();
}

namespace {

SparseMatrix sparse_identity(Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

SparseMatrix local_lowering(const ModeKind& kind) {
  const Index d = dimension(kind);
  SparseMatrix m(d, d);
  std::vector<Triplet> t;
  // <n|a|n+1> = sqrt(n+1); for the two-level case this is |0><1|.
  for (Index n = 0; n + 1 < d; ++n) t.emplace_back(n, n + 1, std::sqrt(static_cast<double>(n + 1)));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

void require_same_space(const Operator& a, const Operator& b) {
  if (!(a.space() == b.space())) throw Error(ErrorCode::space_mismatch, "operators act on different spaces");
}

}  // namespace

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out = Eigen::kroneckerProduct(a, b);
  out.makeCompressed();
  return out;
}

Operator identity(const HilbertSpace& space) { return Operator(space, sparse_identity(space.dim())); }

Operator zero(const HilbertSpace& space) { return Operator(space, SparseMatrix(space.dim(), space.dim())); }

Operator embed(const HilbertSpace& space, std::size_t factor_index, const SparseMatrix& local) {
  if (factor_index >= space.num_factors()) throw Error(ErrorCode::invalid_argument, "factor index out of range");
  if (local.rows() != space.factor_dim(factor_index) || local.cols() != local.rows())
    throw Error(ErrorCode::space_mismatch, "local operator does not match factor dimension");
  Index before = 1, after = 1;
  for (std::size_t i = 0; i < factor_index; ++i) before *= space.factor_dim(i);
  for (std::size_t i = factor_index + 1; i < space.num_factors(); ++i) after *= space.factor_dim(i);
  SparseMatrix m = kron(kron(sparse_identity(before), local), sparse_identity(after));
  return Operator(space, std::move(m));
}

Operator annihilator(const HilbertSpace& space, std::size_t factor_index) {
  if (factor_index >= space.num_factors()) throw Error(ErrorCode::invalid_argument, "factor index out of range");
  return embed(space, factor_index, local_lowering(space.factors()[factor_index]));
}

Operator number(const HilbertSpace& space, std::size_t factor_index) {
  const auto a = annihilator(space, factor_index);
  return mul(adjoint(a), a);
}

Operator lift(const Operator& op, const HilbertSpace& target) {
  const auto& src = op.space().factors();
  const auto& dst = target.factors();
  if (src.size() > dst.size() || !std::equal(src.begin(), src.end(), dst.begin()))
    throw Error(ErrorCode::space_mismatch, "target space does not start with the operator's factors");
  const Index trailing = target.dim() / op.space().dim();
  return Operator(target, kron(op.matrix(), sparse_identity(trailing)));
}

Operator adjoint(const Operator& a) { return Operator(a.space(), SparseMatrix(a.matrix().adjoint())); }

Operator mul(const Operator& a, const Operator& b) {
  require_same_space(a, b);
  SparseMatrix m = a.matrix() * b.matrix();
  m.prune(cplx(0.0));
  return Operator(a.space(), std::move(m));
}

Operator add_scaled(const Operator& a, cplx c, const Operator& b) {
  require_same_space(a, b);
  SparseMatrix m = a.matrix() + c * b.matrix();
  m.prune(cplx(0.0));
  return Operator(a.space(), std::move(m));
}

Operator scale(cplx c, const Operator& a) { return Operator(a.space(), SparseMatrix(c * a.matrix())); }

Operator commutator(const Operator& a, const Operator& b) { return add_scaled(mul(a, b), -1.0, mul(b, a)); }

Operator operator*(const Operator& a, const Operator& b) { return mul(a, b); }
Operator operator+(const Operator& a, const Operator& b) { return add_scaled(a, 1.0, b); }
Operator operator-(const Operator& a, const Operator& b) { return add_scaled(a, -1.0, b); }
Operator operator*(cplx c, const Operator& a) { return scale(c, a); }

double max_abs(const SparseMatrix& m) {
  double out = 0.0;
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) out = std::max(out, std::abs(it.value()));
  return out;
}

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_space(a, b);
  return max_abs(SparseMatrix(a.matrix() - b.matrix()));
}

bool is_hermitian(const Operator& a, double rel_tol) {
  const double norm = max_abs(a.matrix());
  const double dev = max_abs(SparseMatrix(a.matrix() - SparseMatrix(a.matrix().adjoint())));
  return dev <= rel_tol * norm || dev == 0.0;
}

}  // namespace tps
