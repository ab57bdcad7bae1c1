#include "imreg/permutations.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "imreg/errors.hpp"

namespace imreg {

Permutation::Permutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (std::size_t v : mapping_) {
    if (v >= mapping_.size() || seen[v]) {
      throw ValidationError("permutation mapping is not a bijection on [0, " +
                            std::to_string(mapping_.size()) + ")");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return Permutation(std::move(m));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    if (mapping_[i] != i) return false;
  }
  return true;
}

std::size_t Permutation::fixed_point_count() const noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < mapping_.size(); ++i) count += (mapping_[i] == i);
  return count;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw ShapeError("compose: permutation sizes differ");
  std::vector<std::size_t> m(a.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = a(b(i));
  return Permutation(std::move(m));
}

Permutation inverse(const Permutation& a) {
  std::vector<std::size_t> m(a.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[a(i)] = i;
  return Permutation(std::move(m));
}

Permutation cyclic_shift(std::size_t n, std::size_t k) {
  if (n == 0) throw ShapeError("cyclic_shift: n must be >= 1");
  if (k >= n) throw ShapeError("cyclic_shift: shift " + std::to_string(k) + " out of range");
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = (i + k) % n;
  return Permutation(std::move(m));
}

CycleDecomposition cycle_decomposition(const Permutation& a) {
  CycleDecomposition out;
  std::vector<bool> visited(a.size(), false);
  for (std::size_t start = 0; start < a.size(); ++start) {
    if (visited[start]) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t i = start; !visited[i]; i = a(i)) {
      visited[i] = true;
      cycle.push_back(i);
    }
    if (cycle.size() == 1) out.fixed_points.push_back(start);
    out.cycles.push_back(std::move(cycle));
  }
  out.num_cycles = out.cycles.size();
  out.is_derangement = out.fixed_points.empty();
  return out;
}

TransformationFamily::TransformationFamily(std::vector<Permutation> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw ValidationError("transformation family is empty");
  const std::size_t n = members_.front().size();
  std::map<std::vector<std::size_t>, std::size_t> seen;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].size() != n) {
      throw ValidationError("transformation family members act on different n");
    }
    if (!seen.emplace(members_[i].mapping(), i).second) {
      throw ValidationError("transformation family member " + std::to_string(i) +
                            " duplicates an earlier member");
    }
    if (!identity_index_ && members_[i].is_identity()) identity_index_ = i;
  }
}

std::optional<std::size_t> TransformationFamily::index_of(const Permutation& a) const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] == a) return i;
  }
  return std::nullopt;
}

TransformationFamily cyclic_family(std::size_t n) {
  std::vector<Permutation> members;
  members.reserve(n);
  for (std::size_t k = 0; k < n; ++k) members.push_back(cyclic_shift(n, k));
  return TransformationFamily(std::move(members));
}

TransformationFamily cyclic_subgroup(std::size_t n, std::size_t m) {
  if (m == 0 || n == 0 || n % m != 0) {
    throw ShapeError("cyclic_subgroup: order " + std::to_string(m) + " must divide n = " +
                     std::to_string(n));
  }
  std::vector<Permutation> members;
  members.reserve(m);
  for (std::size_t j = 0; j < m; ++j) members.push_back(cyclic_shift(n, j * (n / m)));
  return TransformationFamily(std::move(members));
}

FamilyReport validate_family(const TransformationFamily& family) {
  FamilyReport report;
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < family.size(); ++i) index.emplace(family[i].mapping(), i);

  if (!family.contains_identity()) {
    report.has_identity = false;
    report.violations.push_back({"identity", 0, std::nullopt});
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!report.has_inverses) break;
    if (!index.contains(inverse(family[i]).mapping())) {
      report.has_inverses = false;
      report.violations.push_back({"inverse", i, std::nullopt});
    }
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < family.size(); ++j) {
      const Permutation ij = compose(family[i], family[j]);
      if (report.closed && !index.contains(ij.mapping())) {
        report.closed = false;
        report.violations.push_back({"closure", i, j});
      }
      if (report.commutative && j > i && !(ij == compose(family[j], family[i]))) {
        report.commutative = false;
        report.violations.push_back({"commutativity", i, j});
      }
    }
  }
  return report;
}

const Permutation& worst_case_transform(const TransformationFamily& family) {
  const Permutation* best = nullptr;
  std::size_t best_fixed = 0;
  for (const auto& member : family) {
    if (member.is_identity()) continue;
    const std::size_t fixed = member.fixed_point_count();
    if (best == nullptr || fixed > best_fixed) {
      best = &member;
      best_fixed = fixed;
    }
  }
  if (best == nullptr) {
    throw PreconditionError("worst_case_transform: family has no non-identity member");
  }
  return *best;
}

std::array<std::vector<std::size_t>, 3> derangement_coloring(const Permutation& a) {
  const CycleDecomposition dec = cycle_decomposition(a);
  if (!dec.is_derangement) {
    throw PreconditionError("derangement_coloring: permutation has a fixed point");
  }
  // Each cycle is walked with colors o, o+1, o+2, ... (mod 3). A cycle of
  // length 3m+1 recolors its last vertex to o+1. Every class then receives
  // floor(L/3) vertices of the cycle and the one or two leftovers go to the
  // currently smallest classes, so class sizes never differ by more than one.
  std::array<std::size_t, 3> count{0, 0, 0};
  std::vector<std::size_t> color(a.size(), 0);
  auto smallest = [&count](std::optional<std::size_t> exclude) {
    std::size_t best = 3;
    for (std::size_t c = 0; c < 3; ++c) {
      if (exclude && *exclude == c) continue;
      if (best == 3 || count[c] < count[best]) best = c;
    }
    return best;
  };
  for (const auto& cycle : dec.cycles) {
    const std::size_t len = cycle.size();
    std::size_t offset = 0;
    if (len % 3 == 1) {
      offset = (smallest(std::nullopt) + 2) % 3;
    } else if (len % 3 == 2) {
      const std::size_t lo = smallest(std::nullopt);
      const std::size_t next = smallest(lo);
      offset = ((lo + 1) % 3 == next) ? lo : next;
    }
    for (std::size_t j = 0; j < len; ++j) color[cycle[j]] = (offset + j) % 3;
    if (len % 3 == 1) color[cycle[len - 1]] = (offset + 1) % 3;
    for (std::size_t v : cycle) ++count[color[v]];
  }
  std::array<std::vector<std::size_t>, 3> classes;
  for (std::size_t i = 0; i < a.size(); ++i) classes[color[i]].push_back(i);
  return classes;
}

std::optional<std::array<std::vector<std::size_t>, 2>> even_cycle_coloring(const Permutation& a) {
  const CycleDecomposition dec = cycle_decomposition(a);
  std::array<std::vector<std::size_t>, 2> classes;
  for (const auto& cycle : dec.cycles) {
    if (cycle.size() % 2 != 0) return std::nullopt;
    for (std::size_t j = 0; j < cycle.size(); ++j) classes[j % 2].push_back(cycle[j]);
  }
  for (auto& c : classes) std::sort(c.begin(), c.end());
  return classes;
}

}  // namespace imreg
