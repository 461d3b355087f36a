#include "corrcert/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace corrcert {

void FiniteSpace::validate() const {
  if (atoms.empty()) throw std::invalid_argument("FiniteSpace: no atoms");
  std::set<std::string> seen(atoms.begin(), atoms.end());
  if (seen.size() != atoms.size()) throw std::invalid_argument("FiniteSpace: duplicate atom labels");
}

FiniteSpace FiniteSpace::integers(int q) {
  if (q < 1) throw std::invalid_argument("FiniteSpace::integers: q must be >= 1");
  FiniteSpace s;
  s.atoms.reserve(q);
  for (int i = 0; i < q; ++i) s.atoms.push_back(std::to_string(i));
  return s;
}

FiniteSpace FiniteSpace::signs() {
  return FiniteSpace{{"-1", "+1"}};
}

Distribution::Distribution(FiniteSpace space, std::vector<double> mass, double tol)
    : space_(std::move(space)), mass_(std::move(mass)) {
  space_.validate();
  if (static_cast<int>(mass_.size()) != space_.size())
    throw std::invalid_argument("Distribution: mass count != atom count");
  double sum = 0.0;
  for (double m : mass_) {
    if (m < -tol) throw std::invalid_argument("Distribution: negative mass");
    sum += m;
  }
  if (std::abs(sum - 1.0) > tol) throw std::invalid_argument("Distribution: masses do not sum to 1");
}

bool Distribution::is_uniform(double tol) const {
  double u = 1.0 / size();
  return std::all_of(mass_.begin(), mass_.end(),
                     [&](double m) { return std::abs(m - u) <= tol; });
}

Distribution Distribution::uniform(FiniteSpace space) {
  int q = static_cast<int>(space.atoms.size());
  return Distribution(std::move(space), std::vector<double>(q, 1.0 / q));
}

double min_atom_alpha(const Distribution& nu) {
  double alpha = 1.0;
  for (double m : nu.masses())
    if (m > 0.0) alpha = std::min(alpha, m);
  return alpha;
}

JointDistribution::JointDistribution(std::vector<FiniteSpace> components,
                                     std::vector<std::pair<std::vector<int>, double>> support,
                                     double tol)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("JointDistribution: no components");
  for (const auto& c : components_) c.validate();

  std::map<std::vector<int>, double> merged;
  double sum = 0.0;
  for (auto& [tuple, mass] : support) {
    if (static_cast<int>(tuple.size()) != arity())
      throw std::invalid_argument("JointDistribution: tuple arity mismatch");
    for (int i = 0; i < arity(); ++i)
      if (tuple[i] < 0 || tuple[i] >= components_[i].size())
        throw std::invalid_argument("JointDistribution: atom index out of range");
    if (mass < -tol) throw std::invalid_argument("JointDistribution: negative mass");
    sum += mass;
    merged[tuple] += mass;
  }
  if (std::abs(sum - 1.0) > tol) throw std::invalid_argument("JointDistribution: masses do not sum to 1");
  support_.assign(merged.begin(), merged.end());
}

std::vector<int> JointDistribution::alphabet_sizes() const {
  std::vector<int> q(arity());
  for (int i = 0; i < arity(); ++i) q[i] = components_[i].size();
  return q;
}

Distribution JointDistribution::marginal(int i) const {
  if (i < 0 || i >= arity()) throw std::out_of_range("marginal: index out of range");
  std::vector<double> mass(components_[i].size(), 0.0);
  for (const auto& [tuple, m] : support_) mass[tuple[i]] += m;
  return Distribution(components_[i], std::move(mass));
}

JointDistribution JointDistribution::project(std::span<const int> coords) const {
  if (coords.empty()) throw std::invalid_argument("project: empty coordinate list");
  std::vector<FiniteSpace> comps;
  comps.reserve(coords.size());
  for (int c : coords) {
    if (c < 0 || c >= arity()) throw std::out_of_range("project: coordinate out of range");
    comps.push_back(components_[c]);
  }
  std::vector<std::pair<std::vector<int>, double>> supp;
  supp.reserve(support_.size());
  for (const auto& [tuple, m] : support_) {
    std::vector<int> proj(coords.size());
    for (std::size_t j = 0; j < coords.size(); ++j) proj[j] = tuple[coords[j]];
    supp.emplace_back(std::move(proj), m);
  }
  return JointDistribution(std::move(comps), std::move(supp));
}

bool JointDistribution::is_r_wise_independent(int r, double tol) const {
  int k = arity();
  if (r < 1 || r > k) throw std::invalid_argument("is_r_wise_independent: need 1 <= r <= k");

  std::vector<Distribution> margs;
  margs.reserve(k);
  for (int i = 0; i < k; ++i) margs.push_back(marginal(i));

  // Iterate over r-subsets of coordinates in ascending combination order.
  std::vector<int> subset(r);
  for (int i = 0; i < r; ++i) subset[i] = i;
  while (true) {
    std::vector<int> sizes(r);
    for (int j = 0; j < r; ++j) sizes[j] = components_[subset[j]].size();
    std::vector<double> joint(table_size(sizes), 0.0);
    for (const auto& [tuple, m] : support_) {
      std::vector<int> proj(r);
      for (int j = 0; j < r; ++j) proj[j] = tuple[subset[j]];
      joint[flatten(proj, sizes)] += m;
    }
    std::vector<int> point(r, 0);
    std::int64_t flat = 0;
    do {
      double expected = 1.0;
      for (int j = 0; j < r; ++j) expected *= margs[subset[j]].mass(point[j]);
      if (std::abs(joint[flat] - expected) > tol) return false;
      ++flat;
    } while (next_point(point, sizes));

    // next combination
    int j = r - 1;
    while (j >= 0 && subset[j] == k - r + j) --j;
    if (j < 0) break;
    ++subset[j];
    for (int l = j + 1; l < r; ++l) subset[l] = subset[l - 1] + 1;
  }
  return true;
}

JointDistribution product_distribution(const std::vector<Distribution>& marginals) {
  if (marginals.empty()) throw std::invalid_argument("product_distribution: no marginals");
  std::vector<FiniteSpace> comps;
  std::vector<int> sizes;
  for (const auto& m : marginals) {
    comps.push_back(m.space());
    sizes.push_back(m.size());
  }
  std::vector<std::pair<std::vector<int>, double>> supp;
  std::vector<int> point(marginals.size(), 0);
  do {
    double mass = 1.0;
    for (std::size_t i = 0; i < marginals.size(); ++i) mass *= marginals[i].mass(point[i]);
    if (mass > 0.0) supp.emplace_back(point, mass);
  } while (next_point(point, sizes));
  return JointDistribution(std::move(comps), std::move(supp));
}

JointDistribution ap_distribution(int p, int k) {
  if (!is_prime(p)) throw std::invalid_argument("ap_distribution: p must be prime");
  if (k < 3 || k > p) throw std::invalid_argument("ap_distribution: need 3 <= k <= p");
  std::vector<FiniteSpace> comps(k, FiniteSpace::integers(p));
  std::vector<std::pair<std::vector<int>, double>> supp;
  supp.reserve(static_cast<std::size_t>(p) * p);
  double mass = 1.0 / (static_cast<double>(p) * p);
  for (int x = 0; x < p; ++x)
    for (int y = 0; y < p; ++y) {
      std::vector<int> tuple(k);
      for (int i = 1; i <= k; ++i) tuple[i - 1] = static_cast<int>((static_cast<long long>(i) * x + y) % p);
      supp.emplace_back(std::move(tuple), mass);
    }
  return JointDistribution(std::move(comps), std::move(supp));
}

JointDistribution gowers_cube_distribution(int p, int d) {
  if (!is_prime(p)) throw std::invalid_argument("gowers_cube_distribution: p must be prime");
  if (d < 1) throw std::invalid_argument("gowers_cube_distribution: need d >= 1");
  int k = 1 << d;
  std::vector<FiniteSpace> comps(k, FiniteSpace::integers(p));
  std::vector<std::pair<std::vector<int>, double>> supp;
  std::vector<int> seed_sizes(d + 1, p);
  std::vector<int> seed(d + 1, 0);  // (x, y_1, ..., y_d)
  double mass = 1.0 / static_cast<double>(table_size(seed_sizes));
  do {
    std::vector<int> tuple(k);
    for (int s = 0; s < k; ++s) {
      int v = seed[0];
      for (int i = 0; i < d; ++i)
        if (!(s & (1 << i))) v += seed[1 + i];
      tuple[s] = v % p;
    }
    supp.emplace_back(std::move(tuple), mass);
  } while (next_point(seed, seed_sizes));
  return JointDistribution(std::move(comps), std::move(supp));
}

JointDistribution xor_triple_distribution() {
  std::vector<FiniteSpace> comps(3, FiniteSpace::signs());
  // Index 0 is the atom "-1", index 1 is "+1"; product of values must be +1,
  // i.e. an even number of "-1" entries.
  std::vector<std::pair<std::vector<int>, double>> supp;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        if ((2 * x - 1) * (2 * y - 1) * (2 * z - 1) == 1)
          supp.push_back({{x, y, z}, 0.25});
  return JointDistribution(std::move(comps), std::move(supp));
}

JointDistribution xor_subset_distribution(int m, const std::vector<std::vector<int>>& subsets) {
  if (m < 1) throw std::invalid_argument("xor_subset_distribution: need m >= 1");
  std::set<std::vector<int>> seen;
  for (auto s : subsets) {
    if (s.empty()) throw std::invalid_argument("xor_subset_distribution: empty subset");
    std::sort(s.begin(), s.end());
    for (int b : s)
      if (b < 0 || b >= m) throw std::invalid_argument("xor_subset_distribution: bit index out of range");
    if (!seen.insert(s).second) throw std::invalid_argument("xor_subset_distribution: duplicate subset");
  }
  int k = m + static_cast<int>(subsets.size());
  std::vector<FiniteSpace> comps(k, FiniteSpace::integers(2));
  std::vector<std::pair<std::vector<int>, double>> supp;
  double mass = 1.0 / static_cast<double>(1 << m);
  for (int bits = 0; bits < (1 << m); ++bits) {
    std::vector<int> tuple(k);
    for (int i = 0; i < m; ++i) tuple[i] = (bits >> i) & 1;
    for (std::size_t t = 0; t < subsets.size(); ++t) {
      int v = 0;
      for (int b : subsets[t]) v ^= (bits >> b) & 1;
      tuple[m + static_cast<int>(t)] = v;
    }
    supp.emplace_back(std::move(tuple), mass);
  }
  return JointDistribution(std::move(comps), std::move(supp));
}

JointDistribution mix(const JointDistribution& a, const JointDistribution& b, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("mix: lambda outside [0,1]");
  if (a.arity() != b.arity()) throw std::invalid_argument("mix: arity mismatch");
  for (int i = 0; i < a.arity(); ++i)
    if (a.components()[i].size() != b.components()[i].size())
      throw std::invalid_argument("mix: component size mismatch");
  std::vector<std::pair<std::vector<int>, double>> supp;
  for (const auto& [tuple, m] : a.support()) supp.emplace_back(tuple, lambda * m);
  for (const auto& [tuple, m] : b.support()) supp.emplace_back(tuple, (1.0 - lambda) * m);
  return JointDistribution(a.components(), std::move(supp));
}

}  // namespace corrcert
