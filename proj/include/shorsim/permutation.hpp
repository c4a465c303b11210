#pragma once

#include <cstdint>
#include <vector>

namespace shorsim {

using Cycle = std::vector<std::uint64_t>;

/// Bijection on {0, ..., size-1}, stored as an image table.
class Permutation {
 public:
  Permutation() = default;
  /// Throws ContractViolation unless `mapping` is a bijection.
  explicit Permutation(std::vector<std::uint64_t> mapping);

  static Permutation identity(std::uint64_t size);
  /// Each cycle [c0, c1, ...] sends c_i to c_{i+1} and the last back to c0.
  /// Overlapping or out-of-range cycles throw DomainError.
  static Permutation from_cycles(std::uint64_t size, const std::vector<Cycle>& cycles);

  std::uint64_t size() const { return map_.size(); }
  std::uint64_t operator()(std::uint64_t w) const { return map_[w]; }
  const std::vector<std::uint64_t>& mapping() const { return map_; }

  bool is_identity() const;
  Permutation inverse() const;
  /// (this then other): w -> other(this(w)).
  Permutation then(const Permutation& other) const;
  Permutation power(std::uint64_t p) const;
  /// Nontrivial cycles, each starting at its smallest element, sorted.
  std::vector<Cycle> cycles() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::uint64_t> map_;
};

}  // namespace shorsim
