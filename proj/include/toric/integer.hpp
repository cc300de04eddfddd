#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Malformed or out-of-contract input supplied by a caller.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation contradicted one of its own certified invariants.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

IntVector make_vector(std::initializer_list<long> values);

Integer gcd(const IntVector& v);
Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const IntVector& a, const RationalVector& b);
bool is_zero(const IntVector& v);
bool is_zero(const RationalVector& v);

IntVector add(const IntVector& a, const IntVector& b);
IntVector scale(const Integer& k, const IntVector& v);
IntVector negate(const IntVector& v);

RationalVector to_rational(const IntVector& v);

/// Least common denominator of the entries, and the scaled integer vector.
Integer common_denominator(const RationalVector& v);

std::string to_string(const IntVector& v);
std::string to_string(const RationalVector& v);

}  // namespace toric
