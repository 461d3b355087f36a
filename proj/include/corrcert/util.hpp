#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace corrcert {

using Complex = std::complex<double>;

/// Thrown when an exact-enumeration route would exceed its evaluation cap.
/// Callers are expected to fall back to a cheaper route.
class EnumerationCapExceeded : public std::runtime_error {
 public:
  explicit EnumerationCapExceeded(const std::string& what)
      : std::runtime_error(what) {}
};

/// Thrown when a theorem-backed procedure cannot complete even though its
/// hypotheses are met. This is build-failing: it means either the inputs
/// violate a stated precondition or the implementation is wrong.
class TheoremViolation : public std::runtime_error {
 public:
  explicit TheoremViolation(const std::string& what)
      : std::runtime_error(what) {}
};

// Row-major (lexicographic) indexing over a product of finite alphabets.
// Point (x_1, ..., x_n) maps to x_1 * (q_2 ... q_n) + ... + x_n.

std::int64_t table_size(std::span<const int> sizes);
std::int64_t flatten(std::span<const int> point, std::span<const int> sizes);
void unflatten(std::int64_t flat, std::span<const int> sizes, std::span<int> out);

/// Next point in lexicographic order; returns false after the last one.
bool next_point(std::span<int> point, std::span<const int> sizes);

bool is_prime(int p);

/// Fixed 17-significant-digit rendering so reports are byte-stable.
std::string format_double(double x);
std::string format_complex(Complex z);

}  // namespace corrcert
