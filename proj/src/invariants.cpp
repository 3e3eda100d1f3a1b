#include "invlab/invariants.hpp"

#include <bit>
#include <sstream>

#include "invlab/parallel.hpp"

namespace invlab {

namespace {

std::vector<int> inverse_perm(const std::vector<int>& p) {
    std::vector<int> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
    return inv;
}

// Multi-party strides of the amplitude tensor (row-major over parties).
std::vector<std::size_t> party_strides(const std::vector<int>& dims) {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;)
        s[i - 1] = s[i] * static_cast<std::size_t>(dims[i]);
    return s;
}

void check_state_match(const PermutationTuple& spec, const std::vector<int>& dims,
                       Mode expected) {
    validate_tuple(spec);
    if (spec.mode != expected) throw ValidationError("invariant mode mismatch");
    if (spec.parties() != static_cast<int>(dims.size()))
        throw ValidationError("invariant party count does not match the state");
    if (expected == Mode::SLOCC)
        for (int d : dims)
            if (d != 2) throw ValidationError("SLOCC invariants need qubit parties");
}

// Enumeration context for the delta-contracted (LU) sums. Dummy digits are
// ordered party-major, slot-minor; the counter's least significant digit is
// the last slot of the last party.
struct LuCtx {
    int n, r;
    std::vector<int> dims;                    // per party
    std::vector<std::size_t> stride;          // per party, into the amplitude tensor
    const std::vector<std::vector<int>>* perms;
    std::uint64_t total = 1;

    LuCtx(const std::vector<int>& dims_, const PermutationTuple& spec)
        : n(static_cast<int>(dims_.size())), r(spec.r), dims(dims_),
          stride(party_strides(dims_)), perms(&spec.perms) {
        for (int p = 0; p < n; ++p)
            for (int s = 0; s < r; ++s) total *= static_cast<std::uint64_t>(dims[p]);
    }

    // Decode counter into x[p][s] (party-major, slot-minor, last digit fastest).
    void decode(std::uint64_t u, std::vector<int>& x) const {
        for (int p = n; p-- > 0;)
            for (int s = r; s-- > 0;) {
                const auto d = static_cast<std::uint64_t>(dims[p]);
                x[static_cast<std::size_t>(p * r + s)] = static_cast<int>(u % d);
                u /= d;
            }
    }

    std::size_t flat(const std::vector<int>& x, int c, bool conj_side) const {
        std::size_t f = 0;
        for (int p = 0; p < n; ++p) {
            const int slot = conj_side ? (*perms)[p][c] : c;
            f += stride[p] * static_cast<std::size_t>(x[static_cast<std::size_t>(p * r + slot)]);
        }
        return f;
    }
};

template <typename TermFn>
cxd sum_serial(std::uint64_t total, TermFn&& term) {
    cxd acc(0.0, 0.0);
    for (std::uint64_t u = 0; u < total; ++u) acc += term(u);
    return acc;
}

cxd lu_pure_term(const LuCtx& ctx, const PureState& psi, std::uint64_t u,
                 std::vector<int>& x) {
    ctx.decode(u, x);
    cxd t(1.0, 0.0);
    for (int c = 0; c < ctx.r; ++c) t *= psi.amplitudes.data[ctx.flat(x, c, false)];
    for (int c = 0; c < ctx.r; ++c) t *= std::conj(psi.amplitudes.data[ctx.flat(x, c, true)]);
    return t;
}

cxd lu_mixed_term(const LuCtx& ctx, const DensityMatrix& rho, std::uint64_t u,
                  std::vector<int>& x) {
    ctx.decode(u, x);
    const auto D = static_cast<std::size_t>(rho.total_dim());
    cxd t(1.0, 0.0);
    for (int c = 0; c < ctx.r; ++c)
        t *= rho.matrix.data[ctx.flat(x, c, false) * D + ctx.flat(x, c, true)];
    return t;
}

// eps-constrained enumeration for the SLOCC sums: one bit per (party, pair);
// bit 0 encodes the (0,1) assignment with weight +1, bit 1 the (1,0)
// assignment with weight -1. Bits are ordered party-major, pair-minor, with
// the last pair of the last party fastest, matching the nonzero terms of a
// naive odometer over all index assignments.
struct SloccCtx {
    int n, r, pairs;
    std::vector<std::size_t> stride;
    std::vector<std::vector<int>> inv;  // sigma_p^{-1}, maps slot -> copy (used by diagram)
    const std::vector<std::vector<int>>* perms;

    SloccCtx(const std::vector<int>& dims_, const PermutationTuple& spec)
        : n(static_cast<int>(dims_.size())), r(spec.r), pairs(spec.r / 2),
          stride(party_strides(dims_)), perms(&spec.perms) {}

    // x[p][s] for family encoded in mask (bit (p,t) at position
    // (n*pairs - 1) - (p*pairs + t), so that the counter's low bit is the last
    // pair of the last party).
    int slot_value(std::uint64_t mask, int p, int s) const {
        const int t = s / 2;
        const int bitpos = n * pairs - 1 - (p * pairs + t);
        const int bit = static_cast<int>((mask >> bitpos) & 1ULL);
        return (s % 2 == 0) ? bit : 1 - bit;
    }

    std::size_t flat(std::uint64_t mask, int c) const {
        std::size_t f = 0;
        for (int p = 0; p < n; ++p)
            f += stride[p] * static_cast<std::size_t>(slot_value(mask, p, (*perms)[p][c]));
        return f;
    }

    double sign(std::uint64_t mask) const {
        return (std::popcount(mask) % 2 == 0) ? 1.0 : -1.0;
    }
};

cxd slocc_pure_term(const SloccCtx& ctx, const PureState& psi, std::uint64_t u) {
    cxd t(ctx.sign(u), 0.0);
    for (int c = 0; c < ctx.r; ++c) t *= psi.amplitudes.data[ctx.flat(u, c)];
    return t;
}

cxd slocc_mixed_term(const SloccCtx& ctx, const DensityMatrix& rho, std::uint64_t u) {
    // Upper-family bits are the high half of the counter, lower-family the low
    // half, so the naive enumeration (all upper dummies before all lower ones)
    // is reproduced.
    const int half = ctx.n * ctx.pairs;
    const std::uint64_t up = u >> half;
    const std::uint64_t lo = u & ((1ULL << half) - 1ULL);
    const auto D = static_cast<std::size_t>(rho.total_dim());
    cxd t(ctx.sign(up) * ctx.sign(lo), 0.0);
    for (int c = 0; c < ctx.r; ++c)
        t *= rho.matrix.data[ctx.flat(up, c) * D + ctx.flat(lo, c)];
    return t;
}

}  // namespace

void validate_tuple(const PermutationTuple& spec) {
    if (spec.r < 1) throw ValidationError("degree r must be >= 1");
    if (spec.perms.empty()) throw ValidationError("tuple needs at least one party");
    for (const auto& p : spec.perms) {
        if (static_cast<int>(p.size()) != spec.r)
            throw ValidationError("permutation length does not match degree r");
        std::vector<bool> seen(p.size(), false);
        for (int v : p) {
            if (v < 0 || v >= spec.r || seen[v])
                throw ValidationError("permutation is not a bijection on {1..r}");
            seen[v] = true;
        }
    }
    if (spec.mode == Mode::SLOCC && spec.r % 2 != 0)
        throw ValidationError("SLOCC invariants need even degree r");
}

PermutationTuple canonical_form(const PermutationTuple& spec) {
    validate_tuple(spec);
    const auto inv0 = inverse_perm(spec.perms[0]);
    PermutationTuple out = spec;
    for (int p = 0; p < spec.parties(); ++p)
        for (int c = 0; c < spec.r; ++c) out.perms[p][c] = spec.perms[p][inv0[c]];
    return out;
}

cxd eval_lu_pure(const PureState& psi, const PermutationTuple& spec) {
    check_state_match(spec, psi.dims, Mode::LU);
    LuCtx ctx(psi.dims, spec);
    return chunked_sum_c(ctx.total, [&](std::uint64_t u) {
        thread_local std::vector<int> x;
        x.assign(static_cast<std::size_t>(ctx.n * ctx.r), 0);
        return lu_pure_term(ctx, psi, u, x);
    });
}

cxd eval_lu_pure_serial(const PureState& psi, const PermutationTuple& spec) {
    check_state_match(spec, psi.dims, Mode::LU);
    LuCtx ctx(psi.dims, spec);
    std::vector<int> x(static_cast<std::size_t>(ctx.n * ctx.r), 0);
    return sum_serial(ctx.total, [&](std::uint64_t u) { return lu_pure_term(ctx, psi, u, x); });
}

cxd eval_lu_mixed(const DensityMatrix& rho, const PermutationTuple& spec) {
    check_state_match(spec, rho.dims, Mode::LU);
    LuCtx ctx(rho.dims, spec);
    return chunked_sum_c(ctx.total, [&](std::uint64_t u) {
        thread_local std::vector<int> x;
        x.assign(static_cast<std::size_t>(ctx.n * ctx.r), 0);
        return lu_mixed_term(ctx, rho, u, x);
    });
}

cxd eval_lu_mixed_serial(const DensityMatrix& rho, const PermutationTuple& spec) {
    check_state_match(spec, rho.dims, Mode::LU);
    LuCtx ctx(rho.dims, spec);
    std::vector<int> x(static_cast<std::size_t>(ctx.n * ctx.r), 0);
    return sum_serial(ctx.total, [&](std::uint64_t u) { return lu_mixed_term(ctx, rho, u, x); });
}

cxd eval_slocc_pure(const PureState& psi, const PermutationTuple& spec) {
    check_state_match(spec, psi.dims, Mode::SLOCC);
    SloccCtx ctx(psi.dims, spec);
    const std::uint64_t total = 1ULL << (ctx.n * ctx.pairs);
    return chunked_sum_c(total, [&](std::uint64_t u) { return slocc_pure_term(ctx, psi, u); });
}

cxd eval_slocc_pure_serial(const PureState& psi, const PermutationTuple& spec) {
    check_state_match(spec, psi.dims, Mode::SLOCC);
    SloccCtx ctx(psi.dims, spec);
    const std::uint64_t total = 1ULL << (ctx.n * ctx.pairs);
    return sum_serial(total, [&](std::uint64_t u) { return slocc_pure_term(ctx, psi, u); });
}

double eval_slocc_modsq_mixed(const DensityMatrix& rho, const PermutationTuple& spec) {
    check_state_match(spec, rho.dims, Mode::SLOCC);
    SloccCtx ctx(rho.dims, spec);
    const std::uint64_t total = 1ULL << (2 * ctx.n * ctx.pairs);
    const cxd v = chunked_sum_c(total,
                                [&](std::uint64_t u) { return slocc_mixed_term(ctx, rho, u); });
    return v.real();
}

double eval_slocc_modsq_mixed_serial(const DensityMatrix& rho, const PermutationTuple& spec) {
    check_state_match(spec, rho.dims, Mode::SLOCC);
    SloccCtx ctx(rho.dims, spec);
    const std::uint64_t total = 1ULL << (2 * ctx.n * ctx.pairs);
    return sum_serial(total, [&](std::uint64_t u) { return slocc_mixed_term(ctx, rho, u); })
        .real();
}

namespace {

std::vector<int> identity_perm(int r) {
    std::vector<int> p(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) p[static_cast<std::size_t>(i)] = i;
    return p;
}

// Parses "name" or "name(k)".
bool parse_arg(const std::string& s, const std::string& head, int& arg, bool& has_arg) {
    if (s == head) {
        has_arg = false;
        return true;
    }
    if (s.size() > head.size() + 2 && s.compare(0, head.size(), head) == 0 &&
        s[head.size()] == '(' && s.back() == ')') {
        try {
            arg = std::stoi(s.substr(head.size() + 1, s.size() - head.size() - 2));
        } catch (...) {
            return false;
        }
        has_arg = true;
        return true;
    }
    return false;
}

}  // namespace

PermutationTuple named_invariant(const std::string& name) {
    int arg = 0;
    bool has_arg = false;
    if (parse_arg(name, "norm", arg, has_arg)) {
        const int n = has_arg ? arg : 2;
        if (n < 1) throw ValidationError("norm(n) needs n >= 1");
        PermutationTuple t{1, std::vector<std::vector<int>>(static_cast<std::size_t>(n), {0}),
                           Mode::LU, "norm"};
        return t;
    }
    if (name == "two_qubit_quartic") {
        return PermutationTuple{2, {{0, 1}, {1, 0}}, Mode::LU, name};
    }
    if (name == "slocc_quadratic") {
        return PermutationTuple{2, {{0, 1}, {0, 1}}, Mode::SLOCC, name};
    }
    if (name == "three_tangle") {
        // The eps pairs of the tau_3 formula: party A and B contract copies
        // (1,3) and (2,4), party C contracts (1,4) and (2,3).
        return PermutationTuple{4, {{0, 2, 1, 3}, {0, 2, 1, 3}, {0, 2, 3, 1}}, Mode::SLOCC,
                                name};
    }
    if (parse_arg(name, "moment", arg, has_arg) && has_arg) {
        if (arg < 1 || arg > 4) throw ValidationError("moment(m) needs m in 1..4");
        const int r = 2 * arg;
        return PermutationTuple{r, {identity_perm(r), identity_perm(r)}, Mode::SLOCC,
                                "moment(" + std::to_string(arg) + ")"};
    }
    throw ValidationError("unknown invariant name: " + name);
}

std::string diagram(const PermutationTuple& spec) {
    validate_tuple(spec);
    std::ostringstream os;
    const std::string gname = spec.name.empty() ? "invariant" : spec.name;
    std::string clean;
    for (char c : gname) clean += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    os << "graph " << clean << " {\n";
    os << "  // mode=" << (spec.mode == Mode::LU ? "lu" : "slocc") << " r=" << spec.r
       << " parties=" << spec.parties() << "\n";
    for (int c = 1; c <= spec.r; ++c) os << "  t" << c << " [kind=term];\n";
    if (spec.mode == Mode::LU) {
        for (int c = 1; c <= spec.r; ++c) os << "  c" << c << " [kind=conjugate];\n";
        // Dummy slot s joins term s with conjugate term sigma_p^{-1}(s).
        for (int p = 0; p < spec.parties(); ++p) {
            const auto inv = inverse_perm(spec.perms[p]);
            for (int s = 0; s < spec.r; ++s)
                os << "  t" << (s + 1) << " -- c" << (inv[s] + 1) << " [label=\"p" << (p + 1)
                   << ":delta\"];\n";
        }
    } else {
        // eps pair t joins the copies carrying slots 2t-1 and 2t.
        for (int p = 0; p < spec.parties(); ++p) {
            const auto inv = inverse_perm(spec.perms[p]);
            for (int t = 0; t < spec.r / 2; ++t)
                os << "  t" << (inv[2 * t] + 1) << " -- t" << (inv[2 * t + 1] + 1)
                   << " [label=\"p" << (p + 1) << ":eps\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace invlab
