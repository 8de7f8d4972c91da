#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace patsort {

// Counting results (avoider counts, matrix counts, tree counts) overflow
// 64 bits quickly, so they are returned as arbitrary-precision integers.
using BigInt = boost::multiprecision::cpp_int;

BigInt bigint_pow(BigInt base, unsigned exp);

} // namespace patsort
