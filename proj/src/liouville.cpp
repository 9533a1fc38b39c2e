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

#include "tps/liouville.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <boost/numeric/odeint.hpp>

#include "tps/error.hpp"

namespace tps {

namespace {

SparseMatrix sparse_identity(Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

void require_space(const Operator& op, const HilbertSpace& space, const char* what) {
  if (!(op.space() == space)) throw Error(ErrorCode::space_mismatch, std::string(what) + " is not on the system space");
}

}  // namespace

void OpenSystem::validate() const {
  require_space(hamiltonian, space, "hamiltonian");
  require_space(detect, space, "detection operator");
  if (detect2) require_space(*detect2, space, "second detection operator");
  for (const auto& ch : channels) {
    require_space(ch.collapse, space, "collapse operator");
    if (!(ch.rate >= 0.0) || !std::isfinite(ch.rate))
      throw Error(ErrorCode::invalid_argument, "Lindblad rate must be finite and nonnegative");
  }
  if (!is_hermitian(hamiltonian, 1e-12)) throw Error(ErrorCode::non_hermitian, "hamiltonian is not Hermitian");
}

Vector vectorize(const DenseMatrix& rho) {
  if (rho.rows() != rho.cols()) throw Error(ErrorCode::invalid_argument, "vectorize expects a square matrix");
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

DenseMatrix unvectorize(const Vector& v, Index dim) {
  if (v.size() != dim * dim) throw Error(ErrorCode::invalid_argument, "vector length is not dim^2");
  return Eigen::Map<const DenseMatrix>(v.data(), dim, dim);
}

SparseMatrix sandwich(const SparseMatrix& a, const SparseMatrix& b) { return kron(SparseMatrix(b.transpose()), a); }

SparseMatrix left_multiply(const SparseMatrix& o) { return kron(sparse_identity(o.rows()), o); }

SparseMatrix right_multiply(const SparseMatrix& o) { return kron(SparseMatrix(o.transpose()), sparse_identity(o.rows())); }

Eigen::RowVectorXcd trace_functional(Index dim) {
  Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(dim * dim);
  for (Index i = 0; i < dim; ++i) t(i + dim * i) = 1.0;
  return t;
}

cplx trace_of(const Vector& v, Index dim) {
  cplx tr = 0.0;
  for (Index i = 0; i < dim; ++i) tr += v(i + dim * i);
  return tr;
}

Superoperator build_liouvillian(const OpenSystem& sys) {
  sys.validate();
  const Index d = sys.space.dim();
  const cplx i1(0.0, 1.0);
  const SparseMatrix& h = sys.hamiltonian.matrix();

  // i[rho, H] = -i H rho + i rho H
  SparseMatrix m = -i1 * left_multiply(h) + i1 * right_multiply(h);
  for (const auto& ch : sys.channels) {
    if (ch.rate == 0.0) continue;
    const SparseMatrix& c = ch.collapse.matrix();
    const SparseMatrix cdc = SparseMatrix(c.adjoint()) * c;
    m += ch.rate * sandwich(c, SparseMatrix(c.adjoint()));
    m -= (0.5 * ch.rate) * (left_multiply(cdc) + right_multiply(cdc));
  }
  m.prune(cplx(0.0));
  m.makeCompressed();
  return Superoperator{d, std::move(m)};
}

cplx SteadyState::expectation(const Operator& op) const {
  return (op.matrix() * rho).trace();
}

SteadyState steady_state(const Superoperator& m, const SteadyStateOptions& opts) {
  const Index d = m.dim;
  const Index n = m.liouville_dim();
  if (m.matrix.rows() != n || m.matrix.cols() != n) throw Error(ErrorCode::invalid_argument, "superoperator size mismatch");

  // Row 0 (the d/dt rho_00 equation) is redundant given trace preservation;
  // it is replaced by Tr rho = 1.
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(m.matrix.nonZeros() + d));
  for (Index k = 0; k < m.matrix.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m.matrix, k); it; ++it)
      if (it.row() != 0) t.emplace_back(it.row(), it.col(), it.value());
  for (Index i = 0; i < d; ++i) t.emplace_back(0, i + d * i, 1.0);
  SparseMatrix a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();

  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success)
    throw Error(ErrorCode::no_steady_state, "trace-constrained system is singular: no unique steady state / ill-conditioned");

  Vector b = Vector::Zero(n);
  b(0) = 1.0;
  Vector x = lu.solve(b);
  for (int refine = 0; refine < 2; ++refine) {
    Vector r = b - a * x;
    x += lu.solve(r);
  }

  DenseMatrix rho = unvectorize(x, d);
  rho /= rho.trace();
  SteadyState out;
  out.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace();
  out.rho = rho;
  out.residual = (m.matrix * vectorize(rho)).cwiseAbs().maxCoeff();

  if (!(out.residual < opts.residual_tol)) {
    std::ostringstream msg;
    msg << "steady-state residual " << out.residual << " exceeds " << opts.residual_tol
        << ": no unique steady state / ill-conditioned";
    throw Error(ErrorCode::solver_residual, msg.str());
  }
  if (!(out.hermiticity_error < opts.hermiticity_tol)) {
    std::ostringstream msg;
    msg << "steady state deviates from Hermitian by " << out.hermiticity_error;
    throw Error(ErrorCode::solver_residual, msg.str());
  }

  if (n <= opts.uniqueness_max_liouville_dim) {
    const DenseMatrix dense(m.matrix);
    Eigen::ComplexEigenSolver<DenseMatrix> es(dense, false);
    const double scale = std::max(1.0, dense.cwiseAbs().maxCoeff());
    int null_count = 0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i)
      if (std::abs(es.eigenvalues()(i)) < 1e-9 * scale) ++null_count;
    if (null_count > 1)
      throw Error(ErrorCode::no_steady_state,
                  "Liouvillian has " + std::to_string(null_count) + " null vectors: steady state is not unique");
  }

  if (d <= opts.positivity_max_dim) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(rho, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    if (*out.min_eigenvalue < -opts.positivity_tol) {
      std::ostringstream msg;
      msg << "steady state has negative eigenvalue " << *out.min_eigenvalue;
      throw Error(ErrorCode::solver_residual, msg.str());
    }
  }
  return out;
}

DenseMatrix evolve(const Superoperator& m, const DenseMatrix& rho0, double t, double tol) {
  namespace ode = boost::numeric::odeint;
  using State = std::vector<cplx>;
  if (m.dim > 64) throw Error(ErrorCode::size_guard, "evolve is an oracle for D <= 64");
  if (!(t >= 0.0)) throw Error(ErrorCode::invalid_argument, "evolve requires t >= 0");
  if (rho0.rows() != m.dim || rho0.cols() != m.dim) throw Error(ErrorCode::invalid_argument, "initial state size mismatch");

  const Vector v0 = vectorize(rho0);
  State x(v0.data(), v0.data() + v0.size());
  if (t == 0.0) return rho0;

  auto rhs = [&m](const State& in, State& out, double) {
    Eigen::Map<const Vector> vin(in.data(), static_cast<Index>(in.size()));
    Eigen::Map<Vector> vout(out.data(), static_cast<Index>(out.size()));
    vout = m.matrix * vin;
  };
  auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<State>>(tol, tol);
  try {
    ode::integrate_adaptive(stepper, rhs, x, 0.0, t, t / 100.0);
  } catch (const ode::odeint_error& e) {
    throw Error(ErrorCode::step_size, std::string("adaptive integration failed: ") + e.what());
  }
  Vector v = Eigen::Map<const Vector>(x.data(), static_cast<Index>(x.size()));
  return unvectorize(v, m.dim);
}

}  // namespace tps
