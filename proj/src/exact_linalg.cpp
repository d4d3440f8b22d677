#include "abqlab/exact_linalg.hpp"

#include <stdexcept>
#include <utility>

namespace abq {

int rational_rank(RationalMatrix rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("rational_rank: ragged matrix");
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const mpq_class f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

int integer_rank(const IntegerMatrix& rows) {
  RationalMatrix q;
  q.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<mpq_class> row;
    row.reserve(r.size());
    for (auto v : r) row.emplace_back(static_cast<long>(v));
    q.push_back(std::move(row));
  }
  return rational_rank(std::move(q));
}

}  // namespace abq
