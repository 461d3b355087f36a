#include "corrcert/util.hpp"

#include <cstdio>

namespace corrcert {

std::int64_t table_size(std::span<const int> sizes) {
  std::int64_t n = 1;
  for (int q : sizes) {
    if (q < 1) throw std::invalid_argument("alphabet size must be >= 1");
    n *= q;
  }
  return n;
}

std::int64_t flatten(std::span<const int> point, std::span<const int> sizes) {
  if (point.size() != sizes.size()) throw std::invalid_argument("flatten: dimension mismatch");
  std::int64_t idx = 0;
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    if (point[j] < 0 || point[j] >= sizes[j]) throw std::out_of_range("flatten: digit out of range");
    idx = idx * sizes[j] + point[j];
  }
  return idx;
}

void unflatten(std::int64_t flat, std::span<const int> sizes, std::span<int> out) {
  for (std::size_t j = sizes.size(); j-- > 0;) {
    out[j] = static_cast<int>(flat % sizes[j]);
    flat /= sizes[j];
  }
}

bool next_point(std::span<int> point, std::span<const int> sizes) {
  for (std::size_t j = point.size(); j-- > 0;) {
    if (++point[j] < sizes[j]) return true;
    point[j] = 0;
  }
  return false;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  return format_double(z.real()) + " " + format_double(z.imag());
}

}  // namespace corrcert
