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

#include <cstdint>
#include <list>
#include <memory>
#include <unordered_map>

#include <Eigen/SparseLU>

#include "tps/hilbert.hpp"

namespace tps {

/// Sparse LU factorizations of M + z I keyed by the exact bit pattern of z.
///
/// A cache may point at a frozen parent (typically holding the
/// frequency-independent shifts of a sweep); lookups fall through to it
/// and never modify it, so one parent can serve many worker-local caches.
class ResolventCache {
 public:
  using Factorization = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;

  explicit ResolventCache(const SparseMatrix& m, const ResolventCache* parent = nullptr,
                          std::size_t capacity = 256);

  ResolventCache(const ResolventCache&) = delete;
  ResolventCache& operator=(const ResolventCache&) = delete;
  ResolventCache(ResolventCache&&) = default;

  /// Returns x solving (M + z I) x = -b.
  Vector solve(cplx z, const Vector& b);

  /// Factorizes M + z I now (no-op if already present here or in the parent).
  void prepare(cplx z);

  std::size_t size() const { return entries_.size(); }
  std::size_t factorizations() const { return factorizations_; }
  const SparseMatrix& matrix() const { return *m_; }

 private:
  struct Key {
    std::uint64_t re, im;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept { return std::hash<std::uint64_t>{}(k.re * 0x9E3779B97F4A7C15ull ^ k.im); }
  };
  struct Entry {
    std::unique_ptr<Factorization> lu;
    std::list<Key>::iterator lru;
  };

  static Key key_of(cplx z);
  const Factorization* find_local(const Key& k);
  const Factorization* find_frozen(const Key& k) const;
  const Factorization& get(cplx z);

  const SparseMatrix* m_;
  const ResolventCache* parent_;
  std::size_t capacity_;
  SparseMatrix identity_;
  std::unordered_map<Key, Entry, KeyHash> entries_;
  std::list<Key> order_;  // most recently used first
  std::size_t factorizations_ = 0;
};

}  // namespace tps
