#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace invlab {

using cxd = std::complex<double>;

/// Thrown on contract violations (bad shapes, bad arguments). CLI maps it to exit 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical guard trips (dimension cap, escalated negativity).
/// CLI maps it to exit 3.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense complex tensor, row-major, first axis most significant.
class ComplexTensor {
  public:
    ComplexTensor() = default;

    ComplexTensor(std::vector<std::int64_t> shape_, std::vector<cxd> data_)
        : shape(std::move(shape_)), data(std::move(data_)) {
        std::size_t n = 1;
        for (auto d : shape) {
            if (d <= 0) throw ValidationError("tensor axis dimension must be positive");
            n *= static_cast<std::size_t>(d);
        }
        if (n != data.size())
            throw ValidationError("tensor data length does not match shape product");
    }

    static ComplexTensor zeros(std::vector<std::int64_t> shape_) {
        std::size_t n = 1;
        for (auto d : shape_) {
            if (d <= 0) throw ValidationError("tensor axis dimension must be positive");
            n *= static_cast<std::size_t>(d);
        }
        return ComplexTensor(std::move(shape_), std::vector<cxd>(n, cxd(0.0, 0.0)));
    }

    /// d x d identity matrix-tensor.
    static ComplexTensor identity(std::int64_t d) {
        auto t = zeros({d, d});
        for (std::int64_t i = 0; i < d; ++i) t.data[static_cast<std::size_t>(i * d + i)] = 1.0;
        return t;
    }

    std::size_t rank() const { return shape.size(); }
    std::size_t size() const { return data.size(); }

    /// Row-major strides (in elements).
    std::vector<std::size_t> strides() const {
        std::vector<std::size_t> s(shape.size(), 1);
        for (std::size_t i = shape.size(); i-- > 1;)
            s[i - 1] = s[i] * static_cast<std::size_t>(shape[i]);
        return s;
    }

    std::size_t flat_index(const std::vector<std::int64_t>& idx) const {
        if (idx.size() != shape.size()) throw ValidationError("multi-index rank mismatch");
        std::size_t f = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] < 0 || idx[i] >= shape[i]) throw ValidationError("multi-index out of range");
            f = f * static_cast<std::size_t>(shape[i]) + static_cast<std::size_t>(idx[i]);
        }
        return f;
    }

    cxd at(const std::vector<std::int64_t>& idx) const { return data[flat_index(idx)]; }
    cxd& at(const std::vector<std::int64_t>& idx) { return data[flat_index(idx)]; }

    bool is_square_matrix() const { return shape.size() == 2 && shape[0] == shape[1]; }

    std::vector<std::int64_t> shape;
    std::vector<cxd> data;
};

/// Sum over paired axes. Result shape: uncontracted axes of `a` then of `b`.
ComplexTensor contract(const ComplexTensor& a, const ComplexTensor& b,
                       const std::vector<std::pair<int, int>>& pairs);

/// numpy-transpose semantics: result axis k is input axis perm[k].
ComplexTensor permute_axes(const ComplexTensor& a, const std::vector<int>& perm);

/// Kronecker product of square matrix-tensors, in operand order.
ComplexTensor kron(const std::vector<ComplexTensor>& ops);

/// Reduced matrix on `keep` parties of a (prod dims) x (prod dims) matrix-tensor.
ComplexTensor partial_trace(const ComplexTensor& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep);

cxd trace(const ComplexTensor& m);
ComplexTensor matmul(const ComplexTensor& a, const ComplexTensor& b);
ComplexTensor dagger(const ComplexTensor& m);

/// a + s*b elementwise, shapes must match.
ComplexTensor axpy(const ComplexTensor& a, cxd s, const ComplexTensor& b);

double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b);

}  // namespace invlab
