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

#include "tps/error.hpp"
#include "tps/liouville.hpp"
#include "tps/models.hpp"
#include "tps/resolvent.hpp"

using namespace tps;

namespace {

SparseMatrix sample_matrix() {
  CoupledParams p;
  p.mode1 = {Bosonic{3}, 0.0, 0.2, 0.0, 0.0};
  p.mode2 = {TwoLevel{}, 0.1, 0.05, 0.01, 0.0};
  return build_liouvillian(make_coupled(p)).matrix;
}

}  // namespace

TEST_CASE("solve returns minus the resolvent applied to b") {
  const SparseMatrix m = sample_matrix();
  ResolventCache cache(m);
  const Vector b = Vector::Random(m.rows());
  const cplx z(0.3, -1.2);
  const DenseMatrix shifted = DenseMatrix(m) + z * DenseMatrix::Identity(m.rows(), m.cols());
  const Vector expected = -shifted.partialPivLu().solve(b);
  CHECK((cache.solve(z, b) - expected).norm() < 1e-11 * expected.norm());
}

TEST_CASE("factorizations are reused and evicted in LRU order") {
  const SparseMatrix m = sample_matrix();
  ResolventCache cache(m, nullptr, 2);
  const Vector b = Vector::Ones(m.rows());
  cache.solve({1.0, 0.0}, b);
  cache.solve({1.0, 0.0}, b);
  CHECK(cache.factorizations() == 1);
  cache.solve({2.0, 0.0}, b);
  cache.solve({1.0, 0.0}, b);  // refresh 1.0
  cache.solve({3.0, 0.0}, b);  // evicts 2.0
  CHECK(cache.size() == 2);
  CHECK(cache.factorizations() == 3);
  cache.solve({1.0, 0.0}, b);
  CHECK(cache.factorizations() == 3);
  cache.solve({2.0, 0.0}, b);
  CHECK(cache.factorizations() == 4);
}

TEST_CASE("a frozen parent serves lookups without being modified") {
  const SparseMatrix m = sample_matrix();
  ResolventCache parent(m);
  parent.prepare({0.5, 0.0});
  ResolventCache child(m, &parent);
  const Vector b = Vector::Ones(m.rows());
  const Vector x = child.solve({0.5, 0.0}, b);
  CHECK(child.factorizations() == 0);
  child.solve({0.7, 0.0}, b);
  CHECK(child.factorizations() == 1);
  CHECK(parent.size() == 1);
  CHECK((x - parent.solve({0.5, 0.0}, b)).norm() == 0.0);
}

TEST_CASE("cache error paths") {
  const SparseMatrix m = sample_matrix();
  const SparseMatrix other = sample_matrix();
  ResolventCache parent(other);
  CHECK_THROWS_AS(ResolventCache(m, &parent), Error);
  CHECK_THROWS_AS(ResolventCache(SparseMatrix(2, 3)), Error);
  SparseMatrix zero(4, 4);
  ResolventCache singular(zero);
  try {
    singular.solve({0.0, 0.0}, Vector::Ones(4));
    FAIL("expected singular_shift");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular_shift);
  }
}
