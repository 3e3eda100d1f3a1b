#include "invlab/io.hpp"

#include <fstream>
#include <sstream>

namespace invlab {

namespace {

njson complex_list(const std::vector<cxd>& v) {
    njson out = njson::array();
    for (const auto& x : v) out.push_back(njson::array({x.real(), x.imag()}));
    return out;
}

std::vector<cxd> complex_list_from(const njson& j, const char* field) {
    if (!j.is_array()) throw ValidationError(std::string(field) + " must be a list");
    std::vector<cxd> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ValidationError(std::string(field) + " entries must be [re, im] pairs");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

std::vector<int> dims_from(const njson& j) {
    if (!j.contains("dims") || !j["dims"].is_array())
        throw ValidationError("state JSON needs a dims list");
    std::vector<int> dims;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer() || d.get<int>() < 1)
            throw ValidationError("dims entries must be positive integers");
        dims.push_back(d.get<int>());
    }
    return dims;
}

}  // namespace

njson state_to_json(const PureState& psi) {
    njson j;
    j["dims"] = psi.dims;
    j["type"] = "pure";
    j["amplitudes"] = complex_list(psi.amplitudes.data);
    return j;
}

njson state_to_json(const DensityMatrix& rho) {
    njson j;
    j["dims"] = rho.dims;
    j["type"] = "mixed";
    j["matrix"] = complex_list(rho.matrix.data);
    return j;
}

AnyState state_from_json(const njson& j) {
    const auto dims = dims_from(j);
    if (!j.contains("type") || !j["type"].is_string())
        throw ValidationError("state JSON needs a type field");
    const std::string type = j["type"].get<std::string>();
    if (type == "pure") {
        if (!j.contains("amplitudes")) throw ValidationError("pure state needs amplitudes");
        return make_pure(complex_list_from(j["amplitudes"], "amplitudes"), dims);
    }
    if (type == "mixed") {
        if (!j.contains("matrix")) throw ValidationError("mixed state needs a matrix");
        auto data = complex_list_from(j["matrix"], "matrix");
        std::int64_t D = 1;
        for (int d : dims) D *= d;
        if (static_cast<std::int64_t>(data.size()) != D * D)
            throw ValidationError("matrix length does not match dims");
        return make_density(ComplexTensor({D, D}, std::move(data)), dims);
    }
    throw ValidationError("state type must be \"pure\" or \"mixed\"");
}

njson spec_to_json(const PermutationTuple& spec) {
    njson j;
    j["mode"] = spec.mode == Mode::LU ? "lu" : "slocc";
    j["r"] = spec.r;
    njson perms = njson::array();
    for (const auto& p : spec.perms) {
        njson row = njson::array();
        for (int v : p) row.push_back(v + 1);
        perms.push_back(row);
    }
    j["perms"] = perms;
    return j;
}

PermutationTuple spec_from_json(const njson& j) {
    PermutationTuple spec;
    if (!j.contains("mode") || !j["mode"].is_string())
        throw ValidationError("spec JSON needs a mode field");
    const std::string mode = j["mode"].get<std::string>();
    if (mode == "lu") {
        spec.mode = Mode::LU;
    } else if (mode == "slocc") {
        spec.mode = Mode::SLOCC;
    } else {
        throw ValidationError("spec mode must be \"lu\" or \"slocc\"");
    }
    if (!j.contains("r") || !j["r"].is_number_integer())
        throw ValidationError("spec JSON needs an integer r");
    spec.r = j["r"].get<int>();
    if (!j.contains("perms") || !j["perms"].is_array())
        throw ValidationError("spec JSON needs a perms list");
    for (const auto& row : j["perms"]) {
        if (!row.is_array()) throw ValidationError("perms entries must be lists");
        std::vector<int> p;
        for (const auto& v : row) {
            if (!v.is_number_integer())
                throw ValidationError("perm entries must be 1-indexed integers");
            p.push_back(v.get<int>() - 1);
        }
        spec.perms.push_back(std::move(p));
    }
    validate_tuple(spec);
    return spec;
}

njson report_to_json(const EstimationReport& rep) {
    njson j;
    j["protocol"] = rep.protocol;
    j["estimate"] = rep.estimate;
    j["exact_expectation"] = rep.exact_expectation;
    if (rep.has_sampling) {
        j["predicted_variance"] = rep.predicted_variance;
        j["empirical_variance"] = rep.empirical_variance;
        j["shots"] = rep.shots;
    }
    j["copies"] = rep.copies;
    j["flags"] = rep.flags;
    j["seed"] = rep.seed;
    return j;
}

njson comparison_to_json(const HaarComparison& hc) {
    njson j;
    j["samples"] = hc.samples;
    j["epsilon"] = hc.budget.epsilon;
    j["ratio"] = hc.ratio;
    if (hc.interval_defined) j["std_error"] = hc.std_error;
    j["mean_network_copies"] = hc.budget.copies_network;
    j["mean_tomography_copies"] = hc.budget.copies_tomography;
    if (hc.kind == Comparison::SLOCC)
        j["min_network_over_tomography"] = hc.min_network_over_tomography;
    j["flags"] = hc.flags;
    return j;
}

njson bloch_to_json(const BlochDecomposition& bd) {
    njson j;
    j["a"] = bd.a;
    j["b"] = bd.b;
    njson r = njson::array();
    for (const auto& row : bd.R) r.push_back(row);
    j["R"] = r;
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string file_digest(const std::string& path) {
    const std::string bytes = read_text_file(path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace invlab
