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

#include "tps/resolvent.hpp"

#include <bit>
#include <sstream>

#include "tps/error.hpp"

namespace tps {

ResolventCache::ResolventCache(const SparseMatrix& m, const ResolventCache* parent, std::size_t capacity)
    : m_(&m), parent_(parent), capacity_(std::max<std::size_t>(capacity, 1)), identity_(m.rows(), m.cols()) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::invalid_argument, "resolvent needs a square matrix");
  if (parent_ && parent_->m_ != m_) throw Error(ErrorCode::invalid_argument, "parent cache is bound to another matrix");
  identity_.setIdentity();
}

ResolventCache::Key ResolventCache::key_of(cplx z) {
  return Key{std::bit_cast<std::uint64_t>(z.real()), std::bit_cast<std::uint64_t>(z.imag())};
}

const ResolventCache::Factorization* ResolventCache::find_frozen(const Key& k) const {
  if (auto it = entries_.find(k); it != entries_.end()) return it->second.lu.get();
  return parent_ ? parent_->find_frozen(k) : nullptr;
}

const ResolventCache::Factorization* ResolventCache::find_local(const Key& k) {
  auto it = entries_.find(k);
  if (it == entries_.end()) return nullptr;
  order_.splice(order_.begin(), order_, it->second.lru);
  return it->second.lu.get();
}

const ResolventCache::Factorization& ResolventCache::get(cplx z) {
  const Key k = key_of(z);
  if (const auto* lu = find_local(k)) return *lu;
  if (parent_)
    if (const auto* lu = parent_->find_frozen(k)) return *lu;

  auto lu = std::make_unique<Factorization>();
  SparseMatrix shifted = *m_ + z * identity_;
  shifted.makeCompressed();
  lu->compute(shifted);
  if (lu->info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "shifted matrix M + zI is singular at z = " << z.real() << (z.imag() < 0 ? " - " : " + ")
        << std::abs(z.imag()) << "i";
    throw Error(ErrorCode::singular_shift, msg.str());
  }
  ++factorizations_;

  if (entries_.size() >= capacity_) {
    entries_.erase(order_.back());
    order_.pop_back();
  }
  order_.push_front(k);
  auto [it, inserted] = entries_.emplace(k, Entry{std::move(lu), order_.begin()});
  return *it->second.lu;
}

void ResolventCache::prepare(cplx z) { (void)get(z); }

Vector ResolventCache::solve(cplx z, const Vector& b) {
  const auto& lu = get(z);
  Vector x = lu.solve(b);
  return -x;
}

}  // namespace tps
