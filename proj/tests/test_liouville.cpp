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

#include <doctest.h>

#include <random>

#include "tps/error.hpp"
#include "tps/liouville.hpp"
#include "tps/models.hpp"

using namespace tps;

namespace {

DenseMatrix random_matrix(Index n, std::mt19937& rng) {
  std::normal_distribution<double> d;
  DenseMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = cplx(d(rng), d(rng));
  return m;
}

// Dense Lindblad generator assembled directly from
// vec(A X B) = (B^T kron A) vec(X), independently of build_liouvillian.
DenseMatrix dense_liouvillian(const OpenSystem& sys) {
  const Index d = sys.space.dim();
  const DenseMatrix id = DenseMatrix::Identity(d, d);
  auto kr = [](const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };
  const DenseMatrix h = sys.hamiltonian.dense();
  DenseMatrix m = cplx(0.0, -1.0) * (kr(id, h) - kr(h.transpose(), id));
  for (const auto& ch : sys.channels) {
    const DenseMatrix c = ch.collapse.dense();
    const DenseMatrix cdc = c.adjoint() * c;
    m += ch.rate * (kr(c.conjugate(), c) - 0.5 * kr(id, cdc) - 0.5 * kr(cdc.transpose(), id));
  }
  return m;
}

CoupledParams jc(int n_max) {
  CoupledParams p;
  p.mode1 = {Bosonic{n_max}, 0.3, 0.1, 0.02, 0.0};
  p.mode2 = {TwoLevel{}, -0.2, 0.05, 0.03, 0.01};
  p.g = 0.7;
  return p;
}

}  // namespace

TEST_CASE("vectorization is column stacking") {
  DenseMatrix rho(2, 2);
  rho << 1.0, 2.0, 3.0, 4.0;
  const Vector v = vectorize(rho);
  CHECK(v(1) == cplx(3.0));  // rho(1, 0) sits at 1 + 2 * 0
  CHECK(v(2) == cplx(2.0));  // rho(0, 1) sits at 0 + 2 * 1
  CHECK((unvectorize(v, 2) - rho).norm() == 0.0);
  CHECK_THROWS_AS(unvectorize(v, 3), Error);
}

TEST_CASE("sandwich superoperator property") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const Index n = 2 + trial;
    const DenseMatrix a = random_matrix(n, rng), b = random_matrix(n, rng), x = random_matrix(n, rng);
    const Vector lhs = sandwich(a.sparseView(), b.sparseView()) * vectorize(x);
    CHECK((lhs - vectorize(a * x * b)).norm() < 1e-12 * (1.0 + lhs.norm()));
    CHECK(((left_multiply(a.sparseView()) * vectorize(x)) - vectorize(a * x)).norm() < 1e-12 * (1.0 + lhs.norm()));
    CHECK(((right_multiply(b.sparseView()) * vectorize(x)) - vectorize(x * b)).norm() < 1e-12 * (1.0 + lhs.norm()));
    CHECK(std::abs(trace_of(vectorize(x), n) - x.trace()) < 1e-12);
  }
}

TEST_CASE("liouvillian matches a dense oracle and preserves the trace") {
  for (const OpenSystem& sys : {make_coupled(jc(3)), make_driven_tls({2.0, 0.5, 1.0, 0.1})}) {
    const Superoperator m = build_liouvillian(sys);
    const DenseMatrix oracle = dense_liouvillian(sys);
    CHECK((DenseMatrix(m.matrix) - oracle).cwiseAbs().maxCoeff() < 1e-13);
    const Eigen::RowVectorXcd t = trace_functional(m.dim) * m.matrix;
    CHECK(t.cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("steady state of pumped two-level and harmonic modes") {
  const OpenSystem tls = make_single({TwoLevel{}, 0.0, 0.9, 0.1, 0.0});
  const SteadyState s = steady_state(build_liouvillian(tls));
  CHECK(s.residual < 1e-10);
  CHECK(std::abs(s.expectation(number(tls.space, 0)).real() - 0.1) < 1e-12);

  const OpenSystem ho = make_single({Bosonic{40}, 0.0, 1.0, 0.2, 0.0});
  const SteadyState h = steady_state(build_liouvillian(ho));
  CHECK(std::abs(h.expectation(number(ho.space, 0)).real() - 0.25) < 1e-10);
  CHECK(h.hermiticity_error < 1e-10);
  REQUIRE(h.min_eigenvalue);
  CHECK(*h.min_eigenvalue > -1e-10);
}

TEST_CASE("resonantly driven two-level population") {
  const double omega = 0.7, gamma = 1.3;
  const OpenSystem sys = make_driven_tls({omega, 0.0, gamma, 0.0});
  const SteadyState s = steady_state(build_liouvillian(sys));
  CHECK(std::abs(s.expectation(number(sys.space, 0)).real() - 4 * omega * omega / (gamma * gamma + 8 * omega * omega)) <
        1e-12);
}

TEST_CASE("time evolution relaxes to the steady state") {
  const OpenSystem sys = make_coupled(jc(2));
  const Superoperator m = build_liouvillian(sys);
  const SteadyState s = steady_state(m);
  DenseMatrix rho0 = DenseMatrix::Zero(m.dim, m.dim);
  rho0(0, 0) = 1.0;
  const DenseMatrix late = evolve(m, rho0, 600.0, 1e-10);
  CHECK((late - s.rho).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(std::abs(late.trace() - 1.0) < 1e-8);
}

TEST_CASE("steady-state error paths") {
  // No dissipation: every diagonal state is stationary.
  OpenSystem closed;
  closed.space = HilbertSpace({TwoLevel{}});
  closed.hamiltonian = number(closed.space, 0);
  closed.detect = annihilator(closed.space, 0);
  CHECK_THROWS_AS(steady_state(build_liouvillian(closed)), Error);

  OpenSystem bad = closed;
  bad.channels.push_back({annihilator(bad.space, 0), -1.0});
  CHECK_THROWS_AS(bad.validate(), Error);

  OpenSystem nonherm = closed;
  nonherm.hamiltonian = annihilator(nonherm.space, 0);
  try {
    nonherm.validate();
    FAIL("expected non_hermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_hermitian);
  }

  const Superoperator big = build_liouvillian(make_single({Bosonic{70}, 0.0, 1.0, 0.0, 0.0}));
  CHECK_THROWS_AS(evolve(big, DenseMatrix::Identity(71, 71) / 71.0, 1.0), Error);
}
