#include "procmat/operator.hpp"

#include <Eigen/Eigenvalues>

#include "procmat/kernels.hpp"

namespace procmat {

Operator::Operator(Layout layout, Matrix entries)
    : layout_(std::move(layout)), entries_(std::move(entries)) {
    check_distinct_sites(layout_);
    const Index n = total_dimension(layout_);
    if (entries_.rows() != n || entries_.cols() != n)
        throw layout_error("entries are " + std::to_string(entries_.rows()) +
                           "x" + std::to_string(entries_.cols()) +
                           " but layout " + to_string(layout_) +
                           " requires " + std::to_string(n) + "x" +
                           std::to_string(n));
}

Operator Operator::identity(Layout layout) {
    const Index n = total_dimension(layout);
    return Operator(std::move(layout), Matrix::Identity(n, n));
}

bool Operator::is_hermitian(double tol) const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

static void check_same_layout(const Layout& a, const Layout& b) {
    if (a != b)
        throw layout_error("layout mismatch: " + to_string(a) + " vs " +
                           to_string(b));
}

Operator Operator::operator+(const Operator& o) const {
    check_same_layout(layout_, o.layout_);
    return Operator(layout_, entries_ + o.entries_);
}

Operator Operator::operator-(const Operator& o) const {
    check_same_layout(layout_, o.layout_);
    return Operator(layout_, entries_ - o.entries_);
}

Operator Operator::operator*(Complex scale) const {
    return Operator(layout_, entries_ * scale);
}

Operator Operator::operator*(const Operator& o) const {
    const Operator aligned =
        o.layout_ == layout_ ? o : procmat::reorder(o, layout_);
    return Operator(layout_, entries_ * aligned.entries_);
}

Operator Operator::adjoint() const {
    return Operator(layout_, entries_.adjoint());
}

Operator Operator::relabeled(Layout new_layout) const {
    if (total_dimension(new_layout) != dim())
        throw layout_error("relabeled layout has wrong total dimension");
    return Operator(std::move(new_layout), entries_);
}

Dims Operator::factor_dims() const {
    Dims dims;
    dims.reserve(layout_.size());
    for (const SpaceLabel& l : layout_) dims.push_back(l.dimension);
    return dims;
}

Operator tensor(const Operator& a, const Operator& b) {
    Layout layout = a.layout();
    layout.insert(layout.end(), b.layout().begin(), b.layout().end());
    check_distinct_sites(layout);
    total_dimension(layout);
    Matrix out;
    kernels::kron(a.entries(), b.entries(), out);
    return Operator(std::move(layout), std::move(out));
}

// Sites listed in `targets` become `true` in the returned mask; every
// target must be present.
static std::vector<bool> site_mask(const Layout& layout, const Layout& targets,
                                   const char* what) {
    std::vector<bool> mask(layout.size(), false);
    for (const SpaceLabel& t : targets) {
        const int k = find_site(layout, t);
        if (k < 0)
            throw layout_error(std::string(what) + ": unknown space label " +
                               to_string(t));
        if (mask[static_cast<std::size_t>(k)])
            throw layout_error(std::string(what) + ": duplicate target " +
                               to_string(t));
        mask[static_cast<std::size_t>(k)] = true;
    }
    return mask;
}

Operator partial_trace(const Operator& op, const Layout& discard) {
    const std::vector<bool> drop =
        site_mask(op.layout(), discard, "partial_trace");
    std::vector<bool> keep(drop.size());
    Layout kept;
    for (std::size_t k = 0; k < drop.size(); ++k) {
        keep[k] = !drop[k];
        if (keep[k]) kept.push_back(op.layout()[k]);
    }
    Matrix out;
    kernels::partial_trace(op.entries(), op.factor_dims(), keep, out);
    return Operator(std::move(kept), std::move(out));
}

Operator transpose_subsystem(const Operator& op, const Layout& targets) {
    const std::vector<bool> flip =
        site_mask(op.layout(), targets, "transpose_subsystem");
    Matrix out;
    kernels::partial_transpose(op.entries(), op.factor_dims(), flip, out);
    return Operator(op.layout(), std::move(out));
}

bool is_psd(const Operator& op, double tol) {
    return min_eigenvalue(op, tol) >= -tol;
}

Operator reorder(const Operator& op, const Layout& new_layout) {
    if (!is_permutation_of(new_layout, op.layout()))
        throw layout_error("reorder: " + to_string(new_layout) +
                           " is not a permutation of " +
                           to_string(op.layout()));
    if (new_layout == op.layout()) return op;

    // perm[k] = position in the old layout of the k-th new factor.
    std::vector<int> perm(new_layout.size());
    std::vector<bool> used(new_layout.size(), false);
    for (std::size_t k = 0; k < new_layout.size(); ++k) {
        for (std::size_t j = 0; j < op.layout().size(); ++j) {
            if (!used[j] && op.layout()[j] == new_layout[k]) {
                perm[k] = static_cast<int>(j);
                used[j] = true;
                break;
            }
        }
    }
    Matrix out;
    kernels::permute(op.entries(), op.factor_dims(), perm, out);
    return Operator(new_layout, std::move(out));
}

Eigen::VectorXd hermitian_eigenvalues(const Operator& op, double tol) {
    if (!op.is_hermitian(tol))
        throw validation_error("operator on " + to_string(op.layout()) +
                               " is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(op.entries(),
                                                 Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw numerical_error("Hermitian eigensolve failed");
    return solver.eigenvalues();
}

double min_eigenvalue(const Operator& op, double tol) {
    return hermitian_eigenvalues(op, tol)(0);
}

double frobenius_distance(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim())
        throw layout_error("frobenius_distance: dimension mismatch");
    return (a.entries() - b.entries()).norm();
}

} // namespace procmat
