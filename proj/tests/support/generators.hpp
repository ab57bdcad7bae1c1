#pragma once

// Hand-rolled random generators for property tests. Everything is driven by
// an explicit std::mt19937_64 so failures reproduce from the printed seed.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "imreg/info_measures.hpp"
#include "imreg/permutations.hpp"

namespace imreg::testing {

using Gen = std::mt19937_64;

inline std::size_t uniform_size(Gen& g, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(g);
}

inline double uniform_real(Gen& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

/// Full-support pmf with every cell at least `floor` before normalization.
inline JointPMF random_joint(Gen& g, std::size_t xs, std::size_t ys, double floor = 0.02) {
  std::vector<double> w(xs * ys);
  for (auto& v : w) v = floor + uniform_real(g, 0.0, 1.0);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= total;
  // Fold the rounding residue into the largest cell so the mass is exactly 1.
  const double residue = 1.0 - std::accumulate(w.begin(), w.end(), 0.0);
  *std::max_element(w.begin(), w.end()) += residue;
  return JointPMF(xs, ys, w);
}

/// Pmf with some zero cells but non-zero marginals.
inline JointPMF random_sparse_joint(Gen& g, std::size_t xs, std::size_t ys) {
  for (;;) {
    std::vector<double> w(xs * ys);
    for (auto& v : w) v = uniform_real(g, 0.0, 1.0) < 0.3 ? 0.0 : uniform_real(g, 0.05, 1.0);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (total <= 0.0) continue;
    for (auto& v : w) v /= total;
    const double residue = 1.0 - std::accumulate(w.begin(), w.end(), 0.0);
    *std::max_element(w.begin(), w.end()) += residue;
    JointPMF p(xs, ys, w);
    bool ok = true;
    for (double m : p.marginal_x()) ok = ok && m > 0.0;
    for (double m : p.marginal_y()) ok = ok && m > 0.0;
    if (ok) return p;
  }
}

inline SymbolSeq random_sequence(Gen& g, std::size_t n, std::size_t r) {
  SymbolSeq s(n);
  for (auto& v : s) v = static_cast<Symbol>(uniform_size(g, 0, r - 1));
  return s;
}

inline Permutation random_permutation(Gen& g, std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  std::shuffle(m.begin(), m.end(), g);
  return Permutation(m);
}

/// Uniform derangement by rejection; n >= 2.
inline Permutation random_derangement(Gen& g, std::size_t n) {
  for (;;) {
    Permutation p = random_permutation(g, n);
    if (p.fixed_point_count() == 0) return p;
  }
}

/// Family of distinct random permutations, identity first.
inline TransformationFamily random_family(Gen& g, std::size_t n, std::size_t m) {
  std::vector<Permutation> members{Permutation::identity(n)};
  while (members.size() < m) {
    Permutation p = random_permutation(g, n);
    if (std::find(members.begin(), members.end(), p) == members.end()) members.push_back(p);
  }
  return TransformationFamily(members);
}

}  // namespace imreg::testing
