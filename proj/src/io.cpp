#include "corrcert/io.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace corrcert {

void write_joint_distribution(std::ostream& os, const JointDistribution& mu) {
  os << mu.arity() << "\n";
  const auto sizes = mu.alphabet_sizes();
  for (int i = 0; i < mu.arity(); ++i) os << (i ? " " : "") << sizes[i];
  os << "\n";
  for (const auto& [tuple, mass] : mu.support()) {
    for (int a : tuple) os << a << " ";
    os << format_double(mass) << "\n";
  }
}

JointDistribution read_joint_distribution(std::istream& is) {
  int k = 0;
  if (!(is >> k) || k < 1) throw std::invalid_argument("distribution file: bad arity");
  std::vector<int> sizes(k);
  std::vector<FiniteSpace> comps;
  for (int i = 0; i < k; ++i) {
    if (!(is >> sizes[i]) || sizes[i] < 1)
      throw std::invalid_argument("distribution file: bad alphabet size");
    comps.push_back(FiniteSpace::integers(sizes[i]));
  }
  std::vector<std::pair<std::vector<int>, double>> supp;
  double sum = 0.0;
  while (true) {
    std::vector<int> tuple(k);
    if (!(is >> tuple[0])) break;
    for (int i = 1; i < k; ++i)
      if (!(is >> tuple[i])) throw std::invalid_argument("distribution file: truncated tuple");
    double mass = 0.0;
    if (!(is >> mass)) throw std::invalid_argument("distribution file: missing mass");
    sum += mass;
    supp.emplace_back(std::move(tuple), mass);
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw std::invalid_argument("distribution file: masses do not sum to 1");
  return JointDistribution(std::move(comps), std::move(supp), 1e-6);
}

void write_dense_function(std::ostream& os, const DenseFunction& f) {
  os << f.dimension() << "\n";
  for (int j = 0; j < f.dimension(); ++j) os << (j ? " " : "") << f.alphabet_sizes()[j];
  os << "\n";
  for (std::int64_t i = 0; i < f.size(); ++i) os << format_complex(f[i]) << "\n";
}

DenseFunction read_dense_function(std::istream& is) {
  int n = 0;
  if (!(is >> n) || n < 0) throw std::invalid_argument("function file: bad dimension");
  std::vector<int> sizes(n);
  for (int j = 0; j < n; ++j)
    if (!(is >> sizes[j]) || sizes[j] < 1)
      throw std::invalid_argument("function file: bad alphabet size");
  std::int64_t count = table_size(sizes);
  std::vector<Complex> values(count);
  for (std::int64_t i = 0; i < count; ++i) {
    double re = 0.0, im = 0.0;
    if (!(is >> re >> im)) throw std::invalid_argument("function file: truncated values");
    values[i] = Complex(re, im);
  }
  return DenseFunction(std::move(sizes), std::move(values));
}

void write_sparse_coefficients(std::ostream& os, const FourierRepresentation& f) {
  for (const auto& [sigma, c] : f.coefficients()) {
    for (int s : sigma) os << s << " ";
    os << format_complex(c) << "\n";
  }
}

FourierRepresentation read_sparse_coefficients(std::istream& is, std::vector<int> alphabet_sizes) {
  FourierRepresentation rep(std::move(alphabet_sizes));
  int n = rep.dimension();
  while (true) {
    MultiIndex sigma(n);
    if (n > 0) {
      if (!(is >> sigma[0])) break;
      for (int j = 1; j < n; ++j)
        if (!(is >> sigma[j])) throw std::invalid_argument("coefficient file: truncated index");
    }
    double re = 0.0, im = 0.0;
    if (!(is >> re >> im)) {
      if (n > 0) throw std::invalid_argument("coefficient file: missing value");
      break;
    }
    rep.set_coefficient(sigma, Complex(re, im), 0.0);
    if (n == 0) break;
  }
  return rep;
}

std::string certificate_record(const BoundCertificate& cert) {
  std::ostringstream os;
  os << cert.name << " " << format_double(cert.lhs) << " " << format_double(cert.rhs) << " "
     << (cert.holds ? 1 : 0) << " " << format_double(cert.slack) << " "
     << format_double(cert.constants.C) << " " << cert.constants.D.to_string() << " "
     << format_double(cert.constants.delta) << " " << format_double(cert.tol);
  return os.str();
}

std::string witness_record(const Witness& w) {
  std::ostringstream os;
  os << w.index + 1;
  for (int s : w.sigma) os << " " << s;
  os << " " << format_double(w.coeff_mag) << " " << format_double(w.corr_mag) << " "
     << format_double(w.delta) << " " << format_double(w.C) << " " << w.D.to_string();
  return os.str();
}

std::string family_record(const WitnessFamily& fam) {
  std::ostringstream os;
  os << "I";
  for (int i : fam.indices) os << " " << i + 1;
  os << " ;";
  for (int i : fam.indices) {
    os << " sigma(" << i + 1 << ")";
    for (int s : fam.sigma.at(i)) os << " " << s;
    os << " ;";
  }
  os << " coverage";
  for (const auto& [coord, mult] : fam.coverage) os << " " << coord + 1 << ":" << mult;
  os << " ; nip " << format_double(std::abs(fam.family_nip));
  os << " ; schedule";
  for (double dr : fam.schedule) os << " " << format_double(dr);
  return os.str();
}

}  // namespace corrcert
