#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corrcert/util.hpp"

namespace corrcert {

/// A finite set of atoms. Atoms are opaque labels; all numeric code works
/// with atom indices 0..size()-1 in the stored order.
struct FiniteSpace {
  std::vector<std::string> atoms;

  int size() const { return static_cast<int>(atoms.size()); }
  void validate() const;  // nonempty, labels distinct

  /// Atoms "0", "1", ..., "q-1" (the canonical identification with Z_q).
  static FiniteSpace integers(int q);
  /// Atoms "-1", "+1" in that order, so index x carries the value 2x-1.
  static FiniteSpace signs();
};

/// A probability distribution on a FiniteSpace.
class Distribution {
 public:
  Distribution(FiniteSpace space, std::vector<double> mass, double tol = 1e-9);

  const FiniteSpace& space() const { return space_; }
  int size() const { return space_.size(); }
  double mass(int atom) const { return mass_.at(atom); }
  const std::vector<double>& masses() const { return mass_; }
  bool is_uniform(double tol = 1e-9) const;

  static Distribution uniform(FiniteSpace space);

 private:
  FiniteSpace space_;
  std::vector<double> mass_;
};

/// Minimum nonzero atom probability. A point mass returns 1.
double min_atom_alpha(const Distribution& nu);

/// Joint law of one column of the random matrix, stored sparsely over its
/// support. Construction merges duplicate tuples by adding mass and sorts
/// the support lexicographically, so iteration order is deterministic.
class JointDistribution {
 public:
  JointDistribution(std::vector<FiniteSpace> components,
                    std::vector<std::pair<std::vector<int>, double>> support,
                    double tol = 1e-9);

  int arity() const { return static_cast<int>(components_.size()); }
  const std::vector<FiniteSpace>& components() const { return components_; }
  const std::vector<std::pair<std::vector<int>, double>>& support() const {
    return support_;
  }
  std::vector<int> alphabet_sizes() const;

  Distribution marginal(int i) const;

  /// Joint marginal on the listed coordinates, in the listed order
  /// (coordinates may repeat; masses of coinciding projections add up).
  JointDistribution project(std::span<const int> coords) const;

  /// Exhaustive factorization check over every r-subset of coordinates.
  bool is_r_wise_independent(int r, double tol = 1e-9) const;

 private:
  std::vector<FiniteSpace> components_;
  std::vector<std::pair<std::vector<int>, double>> support_;
};

JointDistribution product_distribution(const std::vector<Distribution>& marginals);

/// Law of ((1x+y) mod p, ..., (kx+y) mod p) for uniform x, y in Z_p.
/// Requires p prime and 3 <= k <= p. Pairwise independent, balanced.
JointDistribution ap_distribution(int p, int k);

/// The 2^d Gowers-cube coordinates over Z_p: component s (subsets of [d]
/// ordered by binary encoding, bit i set iff direction i+1 in S) carries
/// x + sum_{i not in S} y_i mod p for uniform seeds (x, y_1..y_d).
JointDistribution gowers_cube_distribution(int p, int d);

/// Uniform over the four triples in {-1,+1}^3 with product +1.
JointDistribution xor_triple_distribution();

/// First m coordinates are uniform bits; each listed subset (0-based,
/// nonempty, distinct) appends the mod-2 sum of those bits.
JointDistribution xor_subset_distribution(int m, const std::vector<std::vector<int>>& subsets);

/// Convex mixture of two joint laws over the same component spaces. Mixing
/// distributions with equal marginals preserves pairwise independence; used
/// to generate randomized pairwise-independent instances.
JointDistribution mix(const JointDistribution& a, const JointDistribution& b, double lambda);

}  // namespace corrcert
