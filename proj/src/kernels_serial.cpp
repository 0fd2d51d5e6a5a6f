#include "procmat/kernels.hpp"

namespace procmat::kernels {

namespace detail {

Index product(const Dims& dims) {
    Index n = 1;
    for (Index d : dims) n *= d;
    return n;
}

static Dims strides_of(const Dims& dims) {
    Dims strides(dims.size(), 1);
    for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
        strides[k] = strides[k + 1] * dims[k + 1];
    return strides;
}

std::vector<Index> expand_map(const Dims& dims, const std::vector<bool>& mask) {
    const Dims strides = strides_of(dims);
    Dims sel_dims;
    Dims sel_strides;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (mask[k]) {
            sel_dims.push_back(dims[k]);
            sel_strides.push_back(strides[k]);
        }
    }
    const Index n = product(sel_dims);
    std::vector<Index> map(static_cast<std::size_t>(n));
    for (Index r = 0; r < n; ++r) {
        Index rest = r;
        Index placed = 0;
        for (int k = static_cast<int>(sel_dims.size()) - 1; k >= 0; --k) {
            placed += (rest % sel_dims[k]) * sel_strides[k];
            rest /= sel_dims[k];
        }
        map[static_cast<std::size_t>(r)] = placed;
    }
    return map;
}

std::vector<Index> part_map(const Dims& dims, const std::vector<bool>& mask) {
    const Dims strides = strides_of(dims);
    const Index n = product(dims);
    std::vector<Index> map(static_cast<std::size_t>(n));
    for (Index r = 0; r < n; ++r) {
        Index part = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (mask[k]) part += ((r / strides[k]) % dims[k]) * strides[k];
        }
        map[static_cast<std::size_t>(r)] = part;
    }
    return map;
}

std::vector<Index> permutation_map(const Dims& dims,
                                   const std::vector<int>& perm) {
    const Dims strides = strides_of(dims);
    Dims new_dims(dims.size());
    for (std::size_t k = 0; k < perm.size(); ++k)
        new_dims[k] = dims[static_cast<std::size_t>(perm[k])];
    const Dims new_strides = strides_of(new_dims);

    const Index n = product(dims);
    std::vector<Index> map(static_cast<std::size_t>(n));
    for (Index r = 0; r < n; ++r) {
        Index mapped = 0;
        for (std::size_t k = 0; k < perm.size(); ++k) {
            const std::size_t old_k = static_cast<std::size_t>(perm[k]);
            const Index digit = (r / strides[old_k]) % dims[old_k];
            mapped += digit * new_strides[k];
        }
        map[static_cast<std::size_t>(r)] = mapped;
    }
    return map;
}

} // namespace detail

namespace serial {

void kron(const Matrix& a, const Matrix& b, Matrix& out) {
    const Index na = a.rows();
    const Index nb = b.rows();
    out.resize(na * nb, a.cols() * b.cols());
    for (Index i = 0; i < na; ++i)
        for (Index k = 0; k < nb; ++k)
            for (Index j = 0; j < a.cols(); ++j)
                for (Index l = 0; l < b.cols(); ++l)
                    out(i * nb + k, j * b.cols() + l) = a(i, j) * b(k, l);
}

void partial_trace(const Matrix& in, const Dims& dims,
                   const std::vector<bool>& keep, Matrix& out) {
    std::vector<bool> traced(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) traced[k] = !keep[k];
    const auto kept_exp = detail::expand_map(dims, keep);
    const auto traced_exp = detail::expand_map(dims, traced);
    const Index nk = static_cast<Index>(kept_exp.size());

    out.setZero(nk, nk);
    for (Index r = 0; r < nk; ++r)
        for (Index c = 0; c < nk; ++c) {
            Complex sum = 0.0;
            for (Index t : traced_exp)
                sum += in(kept_exp[static_cast<std::size_t>(r)] + t,
                          kept_exp[static_cast<std::size_t>(c)] + t);
            out(r, c) = sum;
        }
}

void permute(const Matrix& in, const Dims& dims, const std::vector<int>& perm,
             Matrix& out) {
    const auto map = detail::permutation_map(dims, perm);
    const Index n = in.rows();
    out.resize(n, n);
    for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c)
            out(map[static_cast<std::size_t>(r)],
                map[static_cast<std::size_t>(c)]) = in(r, c);
}

void partial_transpose(const Matrix& in, const Dims& dims,
                       const std::vector<bool>& flip, Matrix& out) {
    const auto fpart = detail::part_map(dims, flip);
    const Index n = in.rows();
    out.resize(n, n);
    for (Index r = 0; r < n; ++r) {
        const Index rf = fpart[static_cast<std::size_t>(r)];
        for (Index c = 0; c < n; ++c) {
            const Index cf = fpart[static_cast<std::size_t>(c)];
            out(r - rf + cf, c - cf + rf) = in(r, c);
        }
    }
}

Complex trace_product(const Matrix& a, const Matrix& b) {
    Complex sum = 0.0;
    for (Index r = 0; r < a.rows(); ++r)
        for (Index c = 0; c < a.cols(); ++c) sum += a(r, c) * b(c, r);
    return sum;
}

} // namespace serial

} // namespace procmat::kernels
