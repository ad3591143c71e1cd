#include "epistemo/kernels.hpp"

#include <omp.h>

namespace epistemo::kernels {
namespace {

constexpr std::size_t kParallelWork = std::size_t{1} << 16;

bool better(double score, const std::string& id, double best_score, const std::string& best_id) {
  return score > best_score || (score == best_score && id < best_id);
}

bool intersects(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace serial {

void inner_products(MatrixView m, std::span<const double> query, std::span<double> out) {
  const std::size_t rows = m.rows();
  for (std::size_t r = 0; r < rows; ++r) out[r] = dot(m.row(r), query);
}

ArgMax argmax_inner_product(MatrixView m, std::span<const double> query,
                            std::span<const std::string> ids) {
  ArgMax best{0, dot(m.row(0), query)};
  for (std::size_t r = 1; r < m.rows(); ++r) {
    const double s = dot(m.row(r), query);
    if (better(s, ids[r], best.score, ids[best.row])) best = {r, s};
  }
  return best;
}

std::vector<std::pair<std::size_t, std::size_t>> shared_keyword_pairs(
    std::span<const std::vector<std::string>> sets) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (intersects(sets[i], sets[j])) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace serial

namespace omp {

void inner_products(MatrixView m, std::span<const double> query, std::span<double> out) {
  const auto rows = static_cast<std::ptrdiff_t>(m.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    out[static_cast<std::size_t>(r)] = dot(m.row(static_cast<std::size_t>(r)), query);
  }
}

ArgMax argmax_inner_product(MatrixView m, std::span<const double> query,
                            std::span<const std::string> ids) {
  const auto rows = static_cast<std::ptrdiff_t>(m.rows());
  ArgMax best{0, dot(m.row(0), query)};
#pragma omp parallel
  {
    ArgMax local = best;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t r = 1; r < rows; ++r) {
      const auto row = static_cast<std::size_t>(r);
      const double s = dot(m.row(row), query);
      if (better(s, ids[row], local.score, ids[local.row])) local = {row, s};
    }
#pragma omp critical(epistemo_argmax_merge)
    {
      if (better(local.score, ids[local.row], best.score, ids[best.row])) best = local;
    }
  }
  return best;
}

std::vector<std::pair<std::size_t, std::size_t>> shared_keyword_pairs(
    std::span<const std::vector<std::string>> sets) {
  const auto n = static_cast<std::ptrdiff_t>(sets.size());
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> rows(sets.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto a = static_cast<std::size_t>(i);
    for (std::size_t b = a + 1; b < sets.size(); ++b) {
      if (intersects(sets[a], sets[b])) rows[a].emplace_back(a, b);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace omp

void inner_products(MatrixView m, std::span<const double> query, std::span<double> out) {
  if (m.data.size() >= kParallelWork) omp::inner_products(m, query, out);
  else serial::inner_products(m, query, out);
}

ArgMax argmax_inner_product(MatrixView m, std::span<const double> query,
                            std::span<const std::string> ids) {
  if (m.data.size() >= kParallelWork) return omp::argmax_inner_product(m, query, ids);
  return serial::argmax_inner_product(m, query, ids);
}

std::vector<std::pair<std::size_t, std::size_t>> shared_keyword_pairs(
    std::span<const std::vector<std::string>> sets) {
  if (sets.size() * sets.size() >= kParallelWork / 4) return omp::shared_keyword_pairs(sets);
  return serial::shared_keyword_pairs(sets);
}

}  // namespace epistemo::kernels
