#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace abq {

using RationalMatrix = std::vector<std::vector<mpq_class>>;
using IntegerMatrix = std::vector<std::vector<std::int64_t>>;

// Rank over Q by Gaussian elimination on exact rationals.
int rational_rank(RationalMatrix rows);
int integer_rank(const IntegerMatrix& rows);

}  // namespace abq
