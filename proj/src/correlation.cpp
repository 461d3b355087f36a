#include "corrcert/correlation.hpp"

#include <cmath>

#include "corrcert/rng.hpp"

namespace corrcert {

Complex ColumnMomentTensor::at(std::span<const int> digits) const {
  return moments[flatten(digits, alphabet_sizes)];
}

ColumnMomentTensor build_column_moment_tensor(const JointDistribution& mu,
                                              std::span<const OrthonormalBasis> bases,
                                              std::int64_t entry_cap) {
  int k = mu.arity();
  if (static_cast<int>(bases.size()) != k)
    throw std::invalid_argument("build_column_moment_tensor: one basis per component required");
  std::vector<int> sizes = mu.alphabet_sizes();
  for (int i = 0; i < k; ++i)
    if (bases[i].size() != sizes[i])
      throw std::invalid_argument("build_column_moment_tensor: basis size != component size");
  std::int64_t entries = table_size(sizes);
  if (entries > entry_cap)
    throw EnumerationCapExceeded("build_column_moment_tensor: tensor exceeds entry cap");

  std::vector<Complex> m(entries, Complex(0, 0));
  std::vector<int> digits(k, 0);
  std::int64_t flat = 0;
  do {
    Complex acc = 0.0;
    for (const auto& [tuple, mass] : mu.support()) {
      Complex prod = mass;
      for (int i = 0; i < k; ++i) prod *= bases[i].value(digits[i], tuple[i]);
      acc += prod;
    }
    m[flat++] = acc;
  } while (next_point(digits, sizes));
  return ColumnMomentTensor{std::move(sizes), std::move(m)};
}

namespace {

// Row point of function i for a given column assignment: the i-th entries
// of the support tuples chosen for columns 1..n.
void check_nip_shapes(std::size_t k, std::span<const int> component_sizes,
                      auto&& dims_of, auto&& alphabet_of) {
  if (k == 0) throw std::invalid_argument("nip: empty function list");
  int n = dims_of(0);
  for (std::size_t i = 0; i < k; ++i) {
    if (dims_of(i) != n) throw std::invalid_argument("nip: functions disagree on n");
    for (int j = 0; j < dims_of(i); ++j)
      if (alphabet_of(i, j) != component_sizes[i])
        throw std::invalid_argument("nip: function alphabet != component alphabet");
  }
}

}  // namespace

NipResult nip_bruteforce(std::span<const DenseFunction> fs, const JointDistribution& mu,
                         std::int64_t eval_cap) {
  std::vector<int> comp_sizes = mu.alphabet_sizes();
  if (fs.size() != static_cast<std::size_t>(mu.arity()))
    throw std::invalid_argument("nip_bruteforce: need one function per component");
  check_nip_shapes(
      fs.size(), comp_sizes, [&](std::size_t i) { return fs[i].dimension(); },
      [&](std::size_t i, int j) { return fs[i].alphabet_sizes()[j]; });

  int k = mu.arity();
  int n = fs[0].dimension();
  std::int64_t supp = static_cast<std::int64_t>(mu.support().size());
  double total = std::pow(static_cast<double>(supp), n);
  if (total > static_cast<double>(eval_cap))
    throw EnumerationCapExceeded("nip_bruteforce: |support|^n exceeds cap");

  // Odometer over column assignments in lexicographic support-index order.
  std::vector<int> columns(n, 0);
  std::vector<std::vector<int>> rows(k, std::vector<int>(n, 0));
  Complex acc = 0.0;
  while (true) {
    double mass = 1.0;
    for (int j = 0; j < n; ++j) mass *= mu.support()[columns[j]].second;
    for (int j = 0; j < n; ++j) {
      const auto& tuple = mu.support()[columns[j]].first;
      for (int i = 0; i < k; ++i) rows[i][j] = tuple[i];
    }
    Complex prod = mass;
    for (int i = 0; i < k; ++i) prod *= fs[i].at(rows[i]);
    acc += prod;

    int j = n - 1;
    while (j >= 0 && columns[j] == static_cast<int>(supp) - 1) columns[j--] = 0;
    if (j < 0) break;
    ++columns[j];
  }
  return NipResult{acc, NipMethod::bruteforce, std::nullopt};
}

NipResult nip_fourier(std::span<const FourierRepresentation> fs, const ColumnMomentTensor& m) {
  if (fs.size() != static_cast<std::size_t>(m.arity()))
    throw std::invalid_argument("nip_fourier: need one representation per component");
  check_nip_shapes(
      fs.size(), m.alphabet_sizes, [&](std::size_t i) { return fs[i].dimension(); },
      [&](std::size_t i, int j) { return fs[i].alphabet_sizes()[j]; });

  int k = static_cast<int>(fs.size());
  int n = fs[0].dimension();

  using Iter = std::map<MultiIndex, Complex>::const_iterator;
  std::vector<Iter> its(k), ends(k);
  for (int i = 0; i < k; ++i) {
    its[i] = fs[i].coefficients().begin();
    ends[i] = fs[i].coefficients().end();
    if (its[i] == ends[i]) return NipResult{Complex(0, 0), NipMethod::fourier, std::nullopt};
  }

  // Enumerate the sparse cross-product of stored coefficients; per tuple the
  // weight is prod_j M[sigma_1j, ..., sigma_kj], with an early exit as soon
  // as one column moment is exactly zero.
  Complex acc = 0.0;
  std::vector<int> digits(k);
  while (true) {
    Complex term = 1.0;
    for (int i = 0; i < k; ++i) term *= its[i]->second;
    for (int j = 0; j < n && term != Complex(0, 0); ++j) {
      for (int i = 0; i < k; ++i) digits[i] = its[i]->first[j];
      Complex mm = m.at(digits);
      if (mm == Complex(0, 0)) {
        term = 0.0;
        break;
      }
      term *= mm;
    }
    acc += term;

    int i = k - 1;
    while (i >= 0 && ++its[i] == ends[i]) {
      its[i] = fs[i].coefficients().begin();
      --i;
    }
    if (i < 0) break;
  }
  return NipResult{acc, NipMethod::fourier, std::nullopt};
}

Complex noise_correlation(std::span<const FourierRepresentation> fs, const ColumnMomentTensor& m) {
  Complex nip = nip_fourier(fs, m).value;
  Complex means = 1.0;
  for (const auto& f : fs) means *= f.mean();
  return nip - means;
}

Complex noise_correlation(std::span<const FourierRepresentation> fs, const JointDistribution& mu,
                          std::span<const OrthonormalBasis> bases) {
  return noise_correlation(fs, build_column_moment_tensor(mu, bases));
}

NipResult nip_montecarlo(std::span<const DenseFunction> fs, const JointDistribution& mu,
                         std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("nip_montecarlo: samples must be >= 1");
  std::vector<int> comp_sizes = mu.alphabet_sizes();
  if (fs.size() != static_cast<std::size_t>(mu.arity()))
    throw std::invalid_argument("nip_montecarlo: need one function per component");
  check_nip_shapes(
      fs.size(), comp_sizes, [&](std::size_t i) { return fs[i].dimension(); },
      [&](std::size_t i, int j) { return fs[i].alphabet_sizes()[j]; });

  int k = mu.arity();
  int n = fs[0].dimension();
  std::vector<double> cdf;
  cdf.reserve(mu.support().size());
  double run = 0.0;
  for (const auto& [tuple, mass] : mu.support()) {
    run += mass;
    cdf.push_back(run);
  }

  Rng rng(seed);
  std::vector<std::vector<int>> rows(k, std::vector<int>(n, 0));
  std::vector<Complex> draws;
  draws.reserve(static_cast<std::size_t>(samples));
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int j = 0; j < n; ++j) {
      double u = rng.u01();
      std::size_t c = 0;
      while (c + 1 < cdf.size() && u >= cdf[c]) ++c;
      const auto& tuple = mu.support()[c].first;
      for (int i = 0; i < k; ++i) rows[i][j] = tuple[i];
    }
    Complex prod = 1.0;
    for (int i = 0; i < k; ++i) prod *= fs[i].at(rows[i]);
    draws.push_back(prod);
  }

  Complex mean = 0.0;
  for (Complex v : draws) mean += v;
  mean /= static_cast<double>(samples);
  double var = 0.0;
  for (Complex v : draws) var += std::norm(v - mean);
  double sd = (samples > 1) ? std::sqrt(var / static_cast<double>(samples - 1)) : 0.0;
  return NipResult{mean, NipMethod::montecarlo, sd / std::sqrt(static_cast<double>(samples))};
}

}  // namespace corrcert
