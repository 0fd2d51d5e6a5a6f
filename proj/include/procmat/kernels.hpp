#pragma once

#include <vector>

#include "procmat/spaces.hpp"

// Dense tensor-basis kernels. A basis index over factors of dimensions
// (d_0, ..., d_{K-1}) is flattened row-major with the first factor most
// significant: r = ((i_0 * d_1 + i_1) * d_2 + i_2) * ...
//
// Every kernel exists twice: the default entry points parallelize with
// OpenMP above a size threshold, and procmat::kernels::serial holds the
// plain-loop reference used by the parity tests and the benchmark.

namespace procmat::kernels {

// Rows below this stay on the serial path even in the parallel entry points.
inline constexpr Index kParallelThreshold = 256;

using Dims = std::vector<Index>;

// Kronecker product: out((i*nb + k), (j*nb + l)) = a(i,j) * b(k,l).
void kron(const Matrix& a, const Matrix& b, Matrix& out);

// Trace over the factors with keep[k] == false. `out` has the product of
// the kept dimensions.
void partial_trace(const Matrix& in, const Dims& dims,
                   const std::vector<bool>& keep, Matrix& out);

// Relabel the tensor factors: factor k of the output is factor perm[k] of
// the input. Applies the induced basis permutation to rows and columns.
void permute(const Matrix& in, const Dims& dims, const std::vector<int>& perm,
             Matrix& out);

// Transpose the factors with flip[k] == true in the computational basis
// (partial transposition); an involution for fixed flags.
void partial_transpose(const Matrix& in, const Dims& dims,
                       const std::vector<bool>& flip, Matrix& out);

// tr(a * b) without forming the product.
Complex trace_product(const Matrix& a, const Matrix& b);

namespace serial {

void kron(const Matrix& a, const Matrix& b, Matrix& out);
void partial_trace(const Matrix& in, const Dims& dims,
                   const std::vector<bool>& keep, Matrix& out);
void permute(const Matrix& in, const Dims& dims, const std::vector<int>& perm,
             Matrix& out);
void partial_transpose(const Matrix& in, const Dims& dims,
                       const std::vector<bool>& flip, Matrix& out);
Complex trace_product(const Matrix& a, const Matrix& b);

} // namespace serial

namespace detail {

// Compressed index over the selected factors -> flat index with those
// digits placed at their positions and all other digits zero. Flat indices
// split additively: r = expand_keep[rk] + expand_rest[t].
std::vector<Index> expand_map(const Dims& dims, const std::vector<bool>& mask);

// Flat index -> its selected-digit part left in place (unselected digits
// zeroed), so r == part(r, mask) + part(r, ~mask).
std::vector<Index> part_map(const Dims& dims, const std::vector<bool>& mask);

// Flat index -> flat index under a factor permutation.
std::vector<Index> permutation_map(const Dims& dims,
                                   const std::vector<int>& perm);

Index product(const Dims& dims);

} // namespace detail

} // namespace procmat::kernels
