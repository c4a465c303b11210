#include "shorsim/permutation.hpp"

#include <algorithm>
#include <string>

#include "shorsim/errors.hpp"

namespace shorsim {

Permutation::Permutation(std::vector<std::uint64_t> mapping) : map_(std::move(mapping)) {
  std::vector<bool> hit(map_.size(), false);
  for (auto v : map_) {
    if (v >= map_.size() || hit[v]) throw ContractViolation("permutation is not a bijection");
    hit[v] = true;
  }
}

Permutation Permutation::identity(std::uint64_t size) {
  Permutation p;
  p.map_.resize(size);
  for (std::uint64_t i = 0; i < size; ++i) p.map_[i] = i;
  return p;
}

Permutation Permutation::from_cycles(std::uint64_t size, const std::vector<Cycle>& cycles) {
  Permutation p = identity(size);
  std::vector<bool> used(size, false);
  for (const auto& c : cycles) {
    for (auto v : c) {
      if (v >= size) throw DomainError("cycle element " + std::to_string(v) + " out of range");
      if (used[v]) throw DomainError("cycles overlap at " + std::to_string(v));
      used[v] = true;
    }
    for (std::size_t i = 0; i < c.size(); ++i) p.map_[c[i]] = c[(i + 1) % c.size()];
  }
  return p;
}

bool Permutation::is_identity() const {
  for (std::uint64_t i = 0; i < map_.size(); ++i)
    if (map_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p = *this;
  for (std::uint64_t i = 0; i < map_.size(); ++i) p.map_[map_[i]] = i;
  return p;
}

Permutation Permutation::then(const Permutation& other) const {
  if (other.size() != size()) throw DomainError("permutation sizes differ");
  Permutation p = *this;
  for (auto& v : p.map_) v = other.map_[v];
  return p;
}

Permutation Permutation::power(std::uint64_t e) const {
  Permutation result = identity(size());
  Permutation base = *this;
  while (e) {
    if (e & 1) result = result.then(base);
    e >>= 1;
    if (e) base = base.then(base);
  }
  return result;
}

std::vector<Cycle> Permutation::cycles() const {
  std::vector<Cycle> out;
  std::vector<bool> seen(size(), false);
  for (std::uint64_t s = 0; s < size(); ++s) {
    if (seen[s] || map_[s] == s) continue;
    Cycle c;
    for (auto v = s; !seen[v]; v = map_[v]) {
      seen[v] = true;
      c.push_back(v);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace shorsim
