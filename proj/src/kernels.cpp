#include "procmat/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace procmat::kernels {

void kron(const Matrix& a, const Matrix& b, Matrix& out) {
    const Index na = a.rows();
    const Index nb = b.rows();
    const Index rows = na * nb;
    if (rows < kParallelThreshold) {
        serial::kron(a, b, out);
        return;
    }
    out.resize(rows, a.cols() * b.cols());
#pragma omp parallel for schedule(static)
    for (Index r = 0; r < rows; ++r) {
        const Index i = r / nb;
        const Index k = r % nb;
        for (Index j = 0; j < a.cols(); ++j)
            for (Index l = 0; l < b.cols(); ++l)
                out(r, j * b.cols() + l) = a(i, j) * b(k, l);
    }
}

void partial_trace(const Matrix& in, const Dims& dims,
                   const std::vector<bool>& keep, Matrix& out) {
    std::vector<bool> traced(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) traced[k] = !keep[k];
    const auto kept_exp = detail::expand_map(dims, keep);
    const auto traced_exp = detail::expand_map(dims, traced);
    const Index nk = static_cast<Index>(kept_exp.size());

    if (nk < kParallelThreshold) {
        serial::partial_trace(in, dims, keep, out);
        return;
    }
    out.setZero(nk, nk);
#pragma omp parallel for schedule(static)
    for (Index r = 0; r < nk; ++r) {
        const Index rk = kept_exp[static_cast<std::size_t>(r)];
        for (Index c = 0; c < nk; ++c) {
            const Index ck = kept_exp[static_cast<std::size_t>(c)];
            Complex sum = 0.0;
            for (Index t : traced_exp) sum += in(rk + t, ck + t);
            out(r, c) = sum;
        }
    }
}

void permute(const Matrix& in, const Dims& dims, const std::vector<int>& perm,
             Matrix& out) {
    const Index n = in.rows();
    if (n < kParallelThreshold) {
        serial::permute(in, dims, perm, out);
        return;
    }
    const auto map = detail::permutation_map(dims, perm);
    out.resize(n, n);
#pragma omp parallel for schedule(static)
    for (Index r = 0; r < n; ++r) {
        const Index rm = map[static_cast<std::size_t>(r)];
        for (Index c = 0; c < n; ++c)
            out(rm, map[static_cast<std::size_t>(c)]) = in(r, c);
    }
}

void partial_transpose(const Matrix& in, const Dims& dims,
                       const std::vector<bool>& flip, Matrix& out) {
    const Index n = in.rows();
    if (n < kParallelThreshold) {
        serial::partial_transpose(in, dims, flip, out);
        return;
    }
    const auto fpart = detail::part_map(dims, flip);
    out.resize(n, n);
#pragma omp parallel for schedule(static)
    for (Index r = 0; r < n; ++r) {
        const Index rf = fpart[static_cast<std::size_t>(r)];
        for (Index c = 0; c < n; ++c) {
            const Index cf = fpart[static_cast<std::size_t>(c)];
            out(r - rf + cf, c - cf + rf) = in(r, c);
        }
    }
}

Complex trace_product(const Matrix& a, const Matrix& b) {
    const Index n = a.rows();
    if (n < kParallelThreshold) return serial::trace_product(a, b);

    // Per-thread partial sums combined in thread order so the result does
    // not depend on scheduling.
    int n_threads = 1;
#ifdef _OPENMP
    n_threads = omp_get_max_threads();
#endif
    std::vector<Complex> partial(static_cast<std::size_t>(n_threads), 0.0);
#pragma omp parallel num_threads(n_threads)
    {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        Complex local = 0.0;
#pragma omp for schedule(static)
        for (Index r = 0; r < n; ++r)
            for (Index c = 0; c < a.cols(); ++c) local += a(r, c) * b(c, r);
        partial[static_cast<std::size_t>(tid)] = local;
    }
    Complex sum = 0.0;
    for (const Complex& p : partial) sum += p;
    return sum;
}

} // namespace procmat::kernels
