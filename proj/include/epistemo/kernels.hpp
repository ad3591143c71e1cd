#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an OpenMP
// variant; both must produce identical results (same summation order per row,
// deterministic tie-breaks and merge order).

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace epistemo::kernels {

/// Row-major `rows() x dim` matrix.
struct MatrixView {
  std::span<const double> data;
  std::size_t dim = 0;
  std::size_t rows() const noexcept { return dim == 0 ? 0 : data.size() / dim; }
  std::span<const double> row(std::size_t r) const { return data.subspan(r * dim, dim); }
};

struct ArgMax {
  std::size_t row = 0;
  double score = 0.0;
};

double dot(std::span<const double> a, std::span<const double> b);

namespace serial {

void inner_products(MatrixView m, std::span<const double> query, std::span<double> out);

// Largest inner product; equal scores resolve to the lexicographically smallest
// id (ids.size() == m.rows()). Requires m.rows() > 0.
ArgMax argmax_inner_product(MatrixView m, std::span<const double> query,
                            std::span<const std::string> ids);

// All (i, j), i < j, whose sorted keyword sets intersect. Output sorted.
std::vector<std::pair<std::size_t, std::size_t>> shared_keyword_pairs(
    std::span<const std::vector<std::string>> sorted_sets);

}  // namespace serial

namespace omp {

void inner_products(MatrixView m, std::span<const double> query, std::span<double> out);
ArgMax argmax_inner_product(MatrixView m, std::span<const double> query,
                            std::span<const std::string> ids);
std::vector<std::pair<std::size_t, std::size_t>> shared_keyword_pairs(
    std::span<const std::vector<std::string>> sorted_sets);

}  // namespace omp

// Dispatchers used by the library: OpenMP above a size threshold, serial below.
void inner_products(MatrixView m, std::span<const double> query, std::span<double> out);
ArgMax argmax_inner_product(MatrixView m, std::span<const double> query,
                            std::span<const std::string> ids);
std::vector<std::pair<std::size_t, std::size_t>> shared_keyword_pairs(
    std::span<const std::vector<std::string>> sorted_sets);

}  // namespace epistemo::kernels
