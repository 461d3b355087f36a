#pragma once

#include <iosfwd>
#include <string>

#include "corrcert/certify.hpp"
#include "corrcert/extract.hpp"
#include "corrcert/fourier.hpp"
#include "corrcert/spaces.hpp"

namespace corrcert {

// Text formats. Distribution: line 1 k, line 2 the k alphabet sizes, then
// one line "a_1 ... a_k mass" per support point with 0-based atom indices.
// Parsers reject mass sums outside 1 +/- 1e-6.
// Function: line 1 n, line 2 the n alphabet sizes, then prod q_j lines
// "re im" in lexicographic point order.
// Sparse coefficients: lines "s_1 ... s_n re im".

void write_joint_distribution(std::ostream& os, const JointDistribution& mu);
JointDistribution read_joint_distribution(std::istream& is);

void write_dense_function(std::ostream& os, const DenseFunction& f);
DenseFunction read_dense_function(std::istream& is);

void write_sparse_coefficients(std::ostream& os, const FourierRepresentation& f);
FourierRepresentation read_sparse_coefficients(std::istream& is, std::vector<int> alphabet_sizes);

/// Flat record: name lhs rhs holds slack C D delta tol (D is "-inf" for bottom).
std::string certificate_record(const BoundCertificate& cert);

/// Flat record: i sigma-digits coeff_mag corr_mag delta C D.
std::string witness_record(const Witness& w);

std::string family_record(const WitnessFamily& fam);

}  // namespace corrcert
