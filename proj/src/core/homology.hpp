#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "complex.hpp"

namespace plsplit {

/// Sparse integer matrix stored by columns: column j maps row -> coefficient.
using SparseColumns = std::vector<std::map<int, long>>;

/// Cellular boundary maps d1 (edges -> vertices), d2 (faces -> edges),
/// d3 (tets -> faces) of a triangulation.
struct ChainComplex {
  std::array<int, 4> dims{};
  SparseColumns d1, d2, d3;
};

ChainComplex chain_complex(const Triangulation& tri);

/// Rank of a sparse integer matrix over F_p, p = 2^31 - 1.
int rank_mod_p(const SparseColumns& cols);

/// Betti numbers b0..b3 over F_p.
std::array<int, 4> betti_numbers(const Triangulation& tri);

}  // namespace plsplit
