#include "corrcert/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace corrcert {

int Degree::value() const {
  if (!value_) throw std::logic_error("Degree: bottom has no integer value");
  return *value_;
}

bool operator<(const Degree& a, const Degree& b) {
  if (a.is_bottom()) return !b.is_bottom();
  if (b.is_bottom()) return false;
  return a.value() < b.value();
}

Degree operator+(const Degree& a, const Degree& b) {
  if (a.is_bottom() || b.is_bottom()) return Degree::bottom();
  return Degree(a.value() + b.value());
}

std::string Degree::to_string() const {
  return value_ ? std::to_string(*value_) : std::string("-inf");
}

void OrthonormalBasis::validate(double tol) const {
  int q = size();
  if (q != space.size() || q != measure.size())
    throw std::invalid_argument("OrthonormalBasis: size mismatch");
  for (int x = 0; x < q; ++x)
    if (std::abs(functions[0][x] - Complex(1.0, 0.0)) > tol)
      throw std::invalid_argument("OrthonormalBasis: chi_0 must be identically 1");
  for (int a = 0; a < q; ++a)
    for (int b = a; b < q; ++b) {
      Complex ip = 0.0;
      for (int x = 0; x < q; ++x)
        ip += measure.mass(x) * functions[a][x] * std::conj(functions[b][x]);
      Complex want = (a == b) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      if (std::abs(ip - want) > tol)
        throw std::invalid_argument("OrthonormalBasis: not orthonormal");
    }
  double bound = 1.0 / std::sqrt(min_atom_alpha(measure)) + tol;
  for (int a = 0; a < q; ++a)
    for (int x = 0; x < q; ++x)
      if (std::abs(functions[a][x]) > bound)
        throw std::invalid_argument("OrthonormalBasis: sup-norm bound violated");
}

OrthonormalBasis gram_schmidt_basis(const Distribution& nu) {
  // Strip zero-mass atoms; the basis lives on the reduced space.
  FiniteSpace space;
  std::vector<double> mass;
  for (int x = 0; x < nu.size(); ++x)
    if (nu.mass(x) > 0.0) {
      space.atoms.push_back(nu.space().atoms[x]);
      mass.push_back(nu.mass(x));
    }
  if (space.atoms.empty()) throw std::invalid_argument("gram_schmidt_basis: empty support");
  Distribution measure(space, mass);
  int q = space.size();

  auto inner = [&](const std::vector<Complex>& f, const std::vector<Complex>& g) {
    Complex ip = 0.0;
    for (int x = 0; x < q; ++x) ip += measure.mass(x) * f[x] * std::conj(g[x]);
    return ip;
  };

  std::vector<std::vector<Complex>> funcs;
  funcs.push_back(std::vector<Complex>(q, Complex(1.0, 0.0)));
  // Orthonormalize atom indicators in atom order; the residual of the last
  // indicator is linearly dependent and is skipped automatically.
  for (int a = 0; a < q && static_cast<int>(funcs.size()) < q; ++a) {
    std::vector<Complex> v(q, Complex(0.0, 0.0));
    v[a] = 1.0;
    for (const auto& u : funcs) {
      Complex proj = inner(v, u);
      for (int x = 0; x < q; ++x) v[x] -= proj * u[x];
    }
    double norm = std::sqrt(inner(v, v).real());
    if (norm < 1e-12) continue;
    for (int x = 0; x < q; ++x) v[x] /= norm;
    // Phase convention: last nonzero value real positive.
    for (int x = q - 1; x >= 0; --x) {
      if (std::abs(v[x]) > 1e-12) {
        Complex phase = std::conj(v[x]) / std::abs(v[x]);
        for (int y = 0; y < q; ++y) v[y] *= phase;
        break;
      }
    }
    funcs.push_back(std::move(v));
  }
  if (static_cast<int>(funcs.size()) != q)
    throw std::logic_error("gram_schmidt_basis: rank deficiency");

  OrthonormalBasis basis{std::move(space), std::move(measure), std::move(funcs), false};
  basis.validate();
  return basis;
}

OrthonormalBasis standard_fourier_basis(int q) {
  if (q < 1) throw std::invalid_argument("standard_fourier_basis: q must be >= 1");
  FiniteSpace space = FiniteSpace::integers(q);
  Distribution measure = Distribution::uniform(space);
  std::vector<std::vector<Complex>> funcs(q, std::vector<Complex>(q));
  for (int y = 0; y < q; ++y)
    for (int x = 0; x < q; ++x) {
      double theta = 2.0 * std::numbers::pi * x * y / q;
      funcs[y][x] = Complex(std::cos(theta), std::sin(theta));
    }
  // Exact values at half-period multiples keep q = 2 tables integral.
  for (int y = 0; y < q; ++y)
    for (int x = 0; x < q; ++x) {
      long long num = 2LL * x * y;
      if (num % q == 0) funcs[y][x] = ((num / q) % 2 == 0) ? Complex(1, 0) : Complex(-1, 0);
    }
  OrthonormalBasis basis{std::move(space), std::move(measure), std::move(funcs), true};
  basis.validate();
  return basis;
}

OrthonormalBasis basis_for(const Distribution& nu, bool force_real) {
  if (!force_real && nu.is_uniform()) return standard_fourier_basis(nu.size());
  return gram_schmidt_basis(nu);
}

std::vector<OrthonormalBasis> replicate(const OrthonormalBasis& basis, int n) {
  return std::vector<OrthonormalBasis>(static_cast<std::size_t>(n), basis);
}

std::vector<Distribution> measures_of(std::span<const OrthonormalBasis> bases) {
  std::vector<Distribution> out;
  out.reserve(bases.size());
  for (const auto& b : bases) out.push_back(b.measure);
  return out;
}

int weight(const MultiIndex& sigma) {
  return static_cast<int>(std::count_if(sigma.begin(), sigma.end(), [](int d) { return d > 0; }));
}

std::vector<int> support_coords(const MultiIndex& sigma) {
  std::vector<int> s;
  for (std::size_t j = 0; j < sigma.size(); ++j)
    if (sigma[j] > 0) s.push_back(static_cast<int>(j));
  return s;
}

DenseFunction::DenseFunction(std::vector<int> alphabet_sizes, std::vector<Complex> values)
    : sizes_(std::move(alphabet_sizes)), values_(std::move(values)) {
  if (static_cast<std::int64_t>(values_.size()) != table_size(sizes_))
    throw std::invalid_argument("DenseFunction: value count != product of alphabet sizes");
}

DenseFunction DenseFunction::zeros(std::vector<int> alphabet_sizes) {
  std::int64_t n = table_size(alphabet_sizes);
  return DenseFunction(std::move(alphabet_sizes), std::vector<Complex>(n, Complex(0, 0)));
}

DenseFunction DenseFunction::constant(std::vector<int> alphabet_sizes, Complex c) {
  std::int64_t n = table_size(alphabet_sizes);
  return DenseFunction(std::move(alphabet_sizes), std::vector<Complex>(n, c));
}

Complex DenseFunction::at(std::span<const int> point) const {
  return values_[flatten(point, sizes_)];
}

FourierRepresentation::FourierRepresentation(std::vector<int> alphabet_sizes)
    : sizes_(std::move(alphabet_sizes)) {
  table_size(sizes_);  // validates
}

Complex FourierRepresentation::coefficient(const MultiIndex& sigma) const {
  auto it = coeffs_.find(sigma);
  return it == coeffs_.end() ? Complex(0, 0) : it->second;
}

void FourierRepresentation::set_coefficient(const MultiIndex& sigma, Complex c, double drop_tol) {
  if (sigma.size() != sizes_.size())
    throw std::invalid_argument("set_coefficient: multi-index dimension mismatch");
  for (std::size_t j = 0; j < sigma.size(); ++j)
    if (sigma[j] < 0 || sigma[j] >= sizes_[j])
      throw std::invalid_argument("set_coefficient: digit out of range");
  if (std::abs(c) <= drop_tol)
    coeffs_.erase(sigma);
  else
    coeffs_[sigma] = c;
}

Degree FourierRepresentation::degree() const {
  Degree d = Degree::bottom();
  for (const auto& [sigma, c] : coeffs_) {
    Degree w{weight(sigma)};
    if (d < w) d = w;
  }
  return d;
}

double FourierRepresentation::sup_coefficient(bool include_zero) const {
  double best = 0.0;
  for (const auto& [sigma, c] : coeffs_) {
    if (!include_zero && weight(sigma) == 0) continue;
    best = std::max(best, std::abs(c));
  }
  return best;
}

double FourierRepresentation::l2_norm() const {
  double s = 0.0;
  for (const auto& [sigma, c] : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

Complex FourierRepresentation::mean() const {
  return coefficient(MultiIndex(sizes_.size(), 0));
}

FourierRepresentation FourierRepresentation::scaled(Complex factor) const {
  FourierRepresentation out(sizes_);
  for (const auto& [sigma, c] : coeffs_) out.set_coefficient(sigma, factor * c, 0.0);
  return out;
}

FourierRepresentation FourierRepresentation::mean_zero_part() const {
  FourierRepresentation out = *this;
  out.coeffs_.erase(MultiIndex(sizes_.size(), 0));
  return out;
}

FourierRepresentation truncate(const FourierRepresentation& f, TruncateMode mode, int d) {
  FourierRepresentation out(f.alphabet_sizes());
  for (const auto& [sigma, c] : f.coefficients()) {
    int w = weight(sigma);
    bool keep = false;
    switch (mode) {
      case TruncateMode::le: keep = w <= d; break;
      case TruncateMode::lt: keep = w < d; break;
      case TruncateMode::eq: keep = w == d; break;
      case TruncateMode::gt: keep = w > d; break;
      case TruncateMode::ge: keep = w >= d; break;
    }
    if (keep) out.set_coefficient(sigma, c, 0.0);
  }
  return out;
}

namespace {

void check_bases(std::span<const int> sizes, std::span<const OrthonormalBasis> bases) {
  if (bases.size() != sizes.size())
    throw std::invalid_argument("transform: one basis per coordinate required");
  for (std::size_t j = 0; j < sizes.size(); ++j)
    if (bases[j].size() != sizes[j])
      throw std::invalid_argument("transform: basis size != alphabet size");
}

}  // namespace

FourierRepresentation transform(const DenseFunction& f,
                                std::span<const OrthonormalBasis> bases,
                                double drop_tol) {
  const auto& sizes = f.alphabet_sizes();
  check_bases(sizes, bases);
  int n = f.dimension();
  std::vector<Complex> work(f.values());

  // Contract one axis at a time:
  // g(..., a, ...) = sum_x mass(x) g(..., x, ...) conj(chi_a(x)).
  std::int64_t stride = f.size();
  for (int axis = 0; axis < n; ++axis) {
    int q = sizes[axis];
    stride /= q;
    std::int64_t blocks = f.size() / (static_cast<std::int64_t>(q) * stride);
    std::vector<Complex> slot(q);
    for (std::int64_t b = 0; b < blocks; ++b) {
      std::int64_t base = b * q * stride;
      for (std::int64_t s = 0; s < stride; ++s) {
        for (int x = 0; x < q; ++x) slot[x] = work[base + static_cast<std::int64_t>(x) * stride + s];
        for (int a = 0; a < q; ++a) {
          Complex acc = 0.0;
          for (int x = 0; x < q; ++x)
            acc += bases[axis].measure.mass(x) * slot[x] * std::conj(bases[axis].value(a, x));
          work[base + static_cast<std::int64_t>(a) * stride + s] = acc;
        }
      }
    }
  }

  FourierRepresentation out(sizes);
  std::vector<int> sigma(n, 0);
  std::int64_t flat = 0;
  if (f.size() == 0) return out;
  do {
    if (std::abs(work[flat]) > drop_tol) out.set_coefficient(sigma, work[flat], 0.0);
    ++flat;
  } while (next_point(sigma, sizes));
  return out;
}

DenseFunction inverse_transform(const FourierRepresentation& f,
                                std::span<const OrthonormalBasis> bases) {
  const auto& sizes = f.alphabet_sizes();
  check_bases(sizes, bases);
  DenseFunction out = DenseFunction::zeros(sizes);
  std::vector<int> point(sizes.size(), 0);
  if (f.coefficients().empty()) return out;
  std::int64_t flat = 0;
  do {
    Complex acc = 0.0;
    for (const auto& [sigma, c] : f.coefficients()) {
      Complex chi = 1.0;
      for (std::size_t j = 0; j < sizes.size(); ++j) chi *= bases[j].value(sigma[j], point[j]);
      acc += c * chi;
    }
    out[flat++] = acc;
  } while (next_point(point, sizes));
  return out;
}

DenseFunction character_function(std::span<const OrthonormalBasis> bases, const MultiIndex& sigma) {
  std::vector<int> sizes(bases.size());
  for (std::size_t j = 0; j < bases.size(); ++j) sizes[j] = bases[j].size();
  FourierRepresentation rep(sizes);
  rep.set_coefficient(sigma, Complex(1.0, 0.0), 0.0);
  return inverse_transform(rep, bases);
}

double lp_norm(const DenseFunction& f, double p, std::span<const Distribution> measures) {
  if (measures.size() != static_cast<std::size_t>(f.dimension()))
    throw std::invalid_argument("lp_norm: one measure per coordinate required");
  const auto& sizes = f.alphabet_sizes();
  for (std::size_t j = 0; j < measures.size(); ++j)
    if (measures[j].size() != sizes[j])
      throw std::invalid_argument("lp_norm: measure size != alphabet size");
  if (std::isinf(p)) {
    double best = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) best = std::max(best, std::abs(f[i]));
    return best;
  }
  if (p <= 0.0) throw std::invalid_argument("lp_norm: p must be positive or infinity");
  double acc = 0.0;
  std::vector<int> point(sizes.size(), 0);
  std::int64_t flat = 0;
  do {
    double w = 1.0;
    for (std::size_t j = 0; j < measures.size(); ++j) w *= measures[j].mass(point[j]);
    acc += w * std::pow(std::abs(f[flat]), p);
    ++flat;
  } while (next_point(point, sizes));
  return std::pow(acc, 1.0 / p);
}

FourierRepresentation unit_character(std::vector<int> alphabet_sizes, const MultiIndex& sigma) {
  FourierRepresentation rep(std::move(alphabet_sizes));
  rep.set_coefficient(sigma, Complex(1.0, 0.0), 0.0);
  return rep;
}

std::vector<MultiIndex> multi_indices_up_to_weight(std::span<const int> sizes, int d) {
  std::vector<MultiIndex> out;
  MultiIndex sigma(sizes.size(), 0);
  if (sizes.empty()) {
    out.push_back(sigma);
    return out;
  }
  do {
    if (weight(sigma) <= d) out.push_back(sigma);
  } while (next_point(sigma, sizes));
  return out;
}

}  // namespace corrcert
