#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace imreg {

/// A bijection on {0, ..., n-1}. Indices are 0-based throughout.
class Permutation {
 public:
  /// Validates that `mapping` is a bijection; throws ValidationError.
  explicit Permutation(std::vector<std::size_t> mapping);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return mapping_.size(); }
  std::size_t operator()(std::size_t i) const noexcept { return mapping_[i]; }
  const std::vector<std::size_t>& mapping() const noexcept { return mapping_; }

  bool is_identity() const noexcept;
  std::size_t fixed_point_count() const noexcept;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> mapping_;
};

/// (a o b)(i) = a(b(i)). Throws ShapeError on size mismatch.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);

/// mapping(i) = (i + k) mod n. Throws ShapeError unless n >= 1 and k < n.
Permutation cyclic_shift(std::size_t n, std::size_t k);

struct CycleDecomposition {
  // Each cycle lists i, a(i), a(a(i)), ... starting from its smallest index.
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t num_cycles = 0;
  std::vector<std::size_t> fixed_points;
  // Fixed-point free; a derangement may consist of several cycles.
  bool is_derangement = false;
};

CycleDecomposition cycle_decomposition(const Permutation& a);

/// Ordered set of permutations on a common n. The order is the search order
/// of the threshold decoder.
class TransformationFamily {
 public:
  /// Throws ValidationError if members are empty, of mixed size, or repeated.
  explicit TransformationFamily(std::vector<Permutation> members);

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t n() const noexcept { return members_.front().size(); }
  const Permutation& operator[](std::size_t i) const noexcept { return members_[i]; }
  const std::vector<Permutation>& members() const noexcept { return members_; }
  bool contains_identity() const noexcept { return identity_index_.has_value(); }
  std::optional<std::size_t> identity_index() const noexcept { return identity_index_; }

  /// Position of `a` in the family, if present.
  std::optional<std::size_t> index_of(const Permutation& a) const;

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

 private:
  std::vector<Permutation> members_;
  std::optional<std::size_t> identity_index_;
};

/// {shift(n,0), ..., shift(n,n-1)}.
TransformationFamily cyclic_family(std::size_t n);

/// The order-m subgroup {shift(n, j n/m) : j < m} of the cyclic shifts.
/// Throws ShapeError unless m divides n.
TransformationFamily cyclic_subgroup(std::size_t n, std::size_t m);

struct FamilyViolation {
  std::string property;  // "closure", "commutativity", "identity", "inverse"
  std::size_t first = 0;
  std::optional<std::size_t> second;
};

struct FamilyReport {
  bool closed = true;
  bool commutative = true;
  bool has_identity = true;
  bool has_inverses = true;
  std::vector<FamilyViolation> violations;

  bool ok() const noexcept { return closed && commutative && has_identity && has_inverses; }
};

/// Checks the commutative-group assumptions. Each violated property carries
/// the first witness found in family order.
FamilyReport validate_family(const TransformationFamily& family);

/// Non-identity member with the most fixed points; ties go to the earliest
/// member. Throws PreconditionError when the family holds only the identity.
const Permutation& worst_case_transform(const TransformationFamily& family);

/// Three-class partition of a derangement's indices with class(i) !=
/// class(a(i)) for every i and every class of size >= floor(n/3).
/// Throws PreconditionError if `a` has a fixed point.
std::array<std::vector<std::size_t>, 3> derangement_coloring(const Permutation& a);

/// Two-class split with class(i) != class(a(i)) when every cycle of `a` has
/// even length; both classes then have size n/2. Empty otherwise.
std::optional<std::array<std::vector<std::size_t>, 2>> even_cycle_coloring(const Permutation& a);

}  // namespace imreg
