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

#include <doctest.h>

#include "tps/correlations.hpp"
#include "tps/error.hpp"
#include "tps/liouville.hpp"

namespace tps::testing {

// A model with its Liouvillian and steady state, for point evaluations.
struct Built {
  OpenSystem sys;
  Superoperator m;
  SteadyState ss;

  explicit Built(OpenSystem s) : sys(std::move(s)), m(build_liouvillian(sys)), ss(steady_state(m)) {}

  double g2(double w1, double w2, double gamma) const {
    return two_photon_point(m, ss, sys.detect, FilterPair::equal(w1, w2, gamma)).g2;
  }
  double spectrum(double w, double gamma) const { return one_photon_point(m, ss, sys.detect, w, gamma); }
};

// Runs f and returns the code of the tps::Error it throws.
template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected tps::Error");
  return ErrorCode::io;
}

}  // namespace tps::testing
