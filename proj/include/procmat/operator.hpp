#pragma once

#include <initializer_list>
#include <vector>

#include "procmat/spaces.hpp"

namespace procmat {

// A complex square matrix over an ordered tensor product of labeled spaces.
// The layout order fixes the computational-basis ordering: the first label
// is the most significant tensor digit. Immutable after construction.
class Operator {
public:
    // Throws layout_error if entry dimensions do not match the layout
    // product or two labels address the same site.
    Operator(Layout layout, Matrix entries);

    static Operator identity(Layout layout);

    const Layout& layout() const { return layout_; }
    const Matrix& entries() const { return entries_; }
    Index dim() const { return entries_.rows(); }

    Complex trace() const { return entries_.trace(); }
    bool is_hermitian(double tol = kHermitianTol) const;

    // Entrywise linear structure; layouts must agree exactly.
    Operator operator+(const Operator& o) const;
    Operator operator-(const Operator& o) const;
    Operator operator*(Complex scale) const;

    // Matrix product; the right factor may carry the same layout in any
    // order and is aligned first.
    Operator operator*(const Operator& o) const;

    Operator adjoint() const;

    // Same entries under fresh labels (dimensions must match).
    Operator relabeled(Layout new_layout) const;

    Dims factor_dims() const;

private:
    Layout layout_;
    Matrix entries_;
};

// ----------------------- tensor-algebra operations --------------------------

// Kronecker product; layouts concatenate. Duplicate sites are an error.
Operator tensor(const Operator& a, const Operator& b);

// Trace out the listed sites; the result keeps the remaining labels in
// layout order. Unknown sites are an error.
Operator partial_trace(const Operator& op, const Layout& discard);

// Partial transposition of the targeted sites in the computational basis.
Operator transpose_subsystem(const Operator& op, const Layout& targets);

// True iff op is Hermitian within tol and its minimum eigenvalue is
// >= -tol. Throws validation_error when Hermiticity fails beyond tol.
bool is_psd(const Operator& op, double tol = kPsdTol);

// Permute the layout; entries follow the induced basis permutation.
Operator reorder(const Operator& op, const Layout& new_layout);

// Eigenvalues of a Hermitian operator, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Operator& op,
                                      double tol = kHermitianTol);
double min_eigenvalue(const Operator& op, double tol = kHermitianTol);

double frobenius_distance(const Operator& a, const Operator& b);

} // namespace procmat
