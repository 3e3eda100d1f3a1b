#include "invlab/complex_tensor.hpp"

#include <algorithm>

namespace invlab {

namespace {

// Odometer step over a mixed-radix index vector; returns false on wrap-around.
bool advance(std::vector<std::int64_t>& idx, const std::vector<std::int64_t>& dims) {
    for (std::size_t i = idx.size(); i-- > 0;) {
        if (++idx[i] < dims[i]) return true;
        idx[i] = 0;
    }
    return false;
}

}  // namespace

ComplexTensor contract(const ComplexTensor& a, const ComplexTensor& b,
                       const std::vector<std::pair<int, int>>& pairs) {
    std::vector<bool> a_used(a.rank(), false), b_used(b.rank(), false);
    for (auto [pa, pb] : pairs) {
        if (pa < 0 || pa >= static_cast<int>(a.rank()) || pb < 0 ||
            pb >= static_cast<int>(b.rank()))
            throw ValidationError("contract: axis out of range");
        if (a_used[pa] || b_used[pb]) throw ValidationError("contract: repeated axis");
        if (a.shape[pa] != b.shape[pb])
            throw ValidationError("contract: paired axes have different dimensions");
        a_used[pa] = b_used[pb] = true;
    }

    std::vector<int> a_free, b_free;
    std::vector<std::int64_t> out_shape, sum_dims;
    for (std::size_t i = 0; i < a.rank(); ++i)
        if (!a_used[i]) {
            a_free.push_back(static_cast<int>(i));
            out_shape.push_back(a.shape[i]);
        }
    for (std::size_t i = 0; i < b.rank(); ++i)
        if (!b_used[i]) {
            b_free.push_back(static_cast<int>(i));
            out_shape.push_back(b.shape[i]);
        }
    for (auto [pa, pb] : pairs) sum_dims.push_back(a.shape[pa]);

    auto out = ComplexTensor::zeros(out_shape.empty() ? std::vector<std::int64_t>{1}
                                                      : out_shape);
    const bool scalar = out_shape.empty();
    const auto sa = a.strides(), sb = b.strides();

    std::vector<std::int64_t> oidx(out_shape.size(), 0), sidx(pairs.size(), 0);
    std::size_t opos = 0;
    do {
        // base offsets from free axes
        std::size_t abase = 0, bbase = 0;
        for (std::size_t i = 0; i < a_free.size(); ++i)
            abase += sa[a_free[i]] * static_cast<std::size_t>(oidx[i]);
        for (std::size_t i = 0; i < b_free.size(); ++i)
            bbase += sb[b_free[i]] * static_cast<std::size_t>(oidx[a_free.size() + i]);

        cxd acc(0.0, 0.0);
        std::fill(sidx.begin(), sidx.end(), 0);
        if (pairs.empty()) {
            acc = a.data[abase] * b.data[bbase];
        } else {
            do {
                std::size_t ao = abase, bo = bbase;
                for (std::size_t i = 0; i < pairs.size(); ++i) {
                    ao += sa[pairs[i].first] * static_cast<std::size_t>(sidx[i]);
                    bo += sb[pairs[i].second] * static_cast<std::size_t>(sidx[i]);
                }
                acc += a.data[ao] * b.data[bo];
            } while (advance(sidx, sum_dims));
        }
        out.data[opos++] = acc;
        if (scalar) break;
    } while (!out_shape.empty() && advance(oidx, out_shape));
    return out;
}

ComplexTensor permute_axes(const ComplexTensor& a, const std::vector<int>& perm) {
    if (perm.size() != a.rank()) throw ValidationError("permute_axes: rank mismatch");
    std::vector<bool> seen(perm.size(), false);
    for (int p : perm) {
        if (p < 0 || p >= static_cast<int>(perm.size()) || seen[p])
            throw ValidationError("permute_axes: perm is not a bijection on axes");
        seen[p] = true;
    }
    std::vector<std::int64_t> out_shape(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) out_shape[k] = a.shape[perm[k]];
    auto out = ComplexTensor::zeros(out_shape);
    const auto sa = a.strides();

    std::vector<std::int64_t> oidx(perm.size(), 0);
    std::size_t opos = 0;
    do {
        std::size_t ao = 0;
        for (std::size_t k = 0; k < perm.size(); ++k)
            ao += sa[perm[k]] * static_cast<std::size_t>(oidx[k]);
        out.data[opos++] = a.data[ao];
    } while (advance(oidx, out_shape));
    return out;
}

ComplexTensor kron(const std::vector<ComplexTensor>& ops) {
    if (ops.empty()) throw ValidationError("kron: empty operand list");
    for (const auto& m : ops)
        if (!m.is_square_matrix()) throw ValidationError("kron: operand is not square");

    ComplexTensor acc = ops[0];
    for (std::size_t k = 1; k < ops.size(); ++k) {
        const auto& b = ops[k];
        const std::int64_t ra = acc.shape[0], rb = b.shape[0];
        auto out = ComplexTensor::zeros({ra * rb, ra * rb});
        for (std::int64_t i = 0; i < ra; ++i)
            for (std::int64_t j = 0; j < ra; ++j) {
                const cxd aij = acc.data[static_cast<std::size_t>(i * ra + j)];
                if (aij == cxd(0.0, 0.0)) continue;
                for (std::int64_t p = 0; p < rb; ++p)
                    for (std::int64_t q = 0; q < rb; ++q)
                        out.data[static_cast<std::size_t>((i * rb + p) * ra * rb + j * rb + q)] =
                            aij * b.data[static_cast<std::size_t>(p * rb + q)];
            }
        acc = std::move(out);
    }
    return acc;
}

ComplexTensor partial_trace(const ComplexTensor& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
    if (keep.empty()) throw ValidationError("partial_trace: empty keep set");
    std::int64_t D = 1;
    for (int d : dims) {
        if (d <= 0) throw ValidationError("partial_trace: bad party dimension");
        D *= d;
    }
    if (!rho.is_square_matrix() || rho.shape[0] != D)
        throw ValidationError("partial_trace: matrix dimension does not match dims");
    std::vector<bool> kept(dims.size(), false);
    for (int k : keep) {
        if (k < 0 || k >= static_cast<int>(dims.size()) || kept[k])
            throw ValidationError("partial_trace: bad keep subset");
        kept[k] = true;
    }

    std::vector<int> traced;
    std::int64_t Dk = 1, Dt = 1;
    std::vector<int> keep_sorted;
    for (std::size_t p = 0; p < dims.size(); ++p) {
        if (kept[p]) {
            keep_sorted.push_back(static_cast<int>(p));
            Dk *= dims[p];
        } else {
            traced.push_back(static_cast<int>(p));
            Dt *= dims[p];
        }
    }

    auto out = ComplexTensor::zeros({Dk, Dk});
    const std::size_t n = dims.size();
    std::vector<std::int64_t> full_dims(dims.begin(), dims.end());
    std::vector<std::size_t> pstr(n, 1);
    for (std::size_t i = n; i-- > 1;) pstr[i - 1] = pstr[i] * static_cast<std::size_t>(dims[i]);

    std::vector<std::int64_t> ki(keep_sorted.size(), 0), kj(keep_sorted.size(), 0),
        ti(traced.size(), 0);
    std::vector<std::int64_t> kdims, tdims;
    for (int p : keep_sorted) kdims.push_back(dims[p]);
    for (int p : traced) tdims.push_back(dims[p]);

    std::size_t opos = 0;
    do {
        std::size_t kj_done = 0;
        std::fill(kj.begin(), kj.end(), 0);
        do {
            cxd acc(0.0, 0.0);
            std::fill(ti.begin(), ti.end(), 0);
            do {
                std::size_t row = 0, col = 0;
                for (std::size_t i = 0; i < keep_sorted.size(); ++i) {
                    row += pstr[keep_sorted[i]] * static_cast<std::size_t>(ki[i]);
                    col += pstr[keep_sorted[i]] * static_cast<std::size_t>(kj[i]);
                }
                for (std::size_t i = 0; i < traced.size(); ++i) {
                    row += pstr[traced[i]] * static_cast<std::size_t>(ti[i]);
                    col += pstr[traced[i]] * static_cast<std::size_t>(ti[i]);
                }
                acc += rho.data[row * static_cast<std::size_t>(D) + col];
            } while (!tdims.empty() && advance(ti, tdims));
            out.data[opos++] = acc;
            ++kj_done;
        } while (advance(kj, kdims));
        (void)kj_done;
    } while (advance(ki, kdims));
    return out;
}

cxd trace(const ComplexTensor& m) {
    if (!m.is_square_matrix()) throw ValidationError("trace: not a square matrix");
    cxd t(0.0, 0.0);
    const std::int64_t d = m.shape[0];
    for (std::int64_t i = 0; i < d; ++i) t += m.data[static_cast<std::size_t>(i * d + i)];
    return t;
}

ComplexTensor matmul(const ComplexTensor& a, const ComplexTensor& b) {
    if (a.rank() != 2 || b.rank() != 2 || a.shape[1] != b.shape[0])
        throw ValidationError("matmul: shape mismatch");
    auto out = ComplexTensor::zeros({a.shape[0], b.shape[1]});
    const std::int64_t n = a.shape[0], k = a.shape[1], m = b.shape[1];
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t l = 0; l < k; ++l) {
            const cxd ail = a.data[static_cast<std::size_t>(i * k + l)];
            if (ail == cxd(0.0, 0.0)) continue;
            for (std::int64_t j = 0; j < m; ++j)
                out.data[static_cast<std::size_t>(i * m + j)] +=
                    ail * b.data[static_cast<std::size_t>(l * m + j)];
        }
    return out;
}

ComplexTensor dagger(const ComplexTensor& m) {
    if (m.rank() != 2) throw ValidationError("dagger: not a matrix");
    auto out = ComplexTensor::zeros({m.shape[1], m.shape[0]});
    for (std::int64_t i = 0; i < m.shape[0]; ++i)
        for (std::int64_t j = 0; j < m.shape[1]; ++j)
            out.data[static_cast<std::size_t>(j * m.shape[0] + i)] =
                std::conj(m.data[static_cast<std::size_t>(i * m.shape[1] + j)]);
    return out;
}

ComplexTensor axpy(const ComplexTensor& a, cxd s, const ComplexTensor& b) {
    if (a.shape != b.shape) throw ValidationError("axpy: shape mismatch");
    ComplexTensor out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += s * b.data[i];
    return out;
}

double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b) {
    if (a.shape != b.shape) throw ValidationError("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

}  // namespace invlab
