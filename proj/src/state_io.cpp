#include "emt/state_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace emt {

namespace {

using nlohmann::json;

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("state file: complex entries must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

void write_state(std::ostream& out, const State& state) {
    json j;
    if (const auto* psi = std::get_if<PureState>(&state)) {
        j["kind"] = "pure";
        j["n_qubits"] = psi->n_qubits();
        json data = json::array();
        for (const cplx& a : psi->amplitudes()) data.push_back(complex_to_json(a));
        j["data"] = std::move(data);
    } else {
        const auto& rho = std::get<DensityMatrix>(state);
        j["kind"] = "mixed";
        j["n_qubits"] = rho.n_qubits();
        json data = json::array();
        for (std::size_t r = 0; r < rho.dim(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < rho.dim(); ++c)
                row.push_back(complex_to_json(rho.matrix()(r, c)));
            data.push_back(std::move(row));
        }
        j["data"] = std::move(data);
    }
    out << j.dump() << "\n";
}

void write_state_file(const std::string& path, const State& state) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    write_state(out, state);
}

State read_state(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("state file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j.contains("n_qubits") || !j.contains("data"))
        throw std::invalid_argument("state file: missing kind/n_qubits/data");
    const std::string kind = j["kind"].get<std::string>();
    if (!j["n_qubits"].is_number_unsigned())
        throw std::invalid_argument("state file: n_qubits must be a positive integer");
    const std::size_t n = j["n_qubits"].get<std::size_t>();
    if (n == 0) throw std::invalid_argument("state file: n_qubits must be >= 1");
    const std::size_t d = std::size_t{1} << n;
    const json& data = j["data"];

    if (kind == "pure") {
        if (!data.is_array() || data.size() != d)
            throw std::invalid_argument("state file: pure data must hold 2^n amplitudes");
        std::vector<cplx> amps(d);
        for (std::size_t i = 0; i < d; ++i) amps[i] = complex_from_json(data[i]);
        return PureState(n, std::move(amps));
    }
    if (kind == "mixed") {
        if (!data.is_array() || data.size() != d)
            throw std::invalid_argument("state file: mixed data must be a 2^n x 2^n matrix");
        ComplexMatrix m(d);
        for (std::size_t r = 0; r < d; ++r) {
            if (!data[r].is_array() || data[r].size() != d)
                throw std::invalid_argument("state file: mixed data must be a 2^n x 2^n matrix");
            for (std::size_t c = 0; c < d; ++c) m(r, c) = complex_from_json(data[r][c]);
        }
        return DensityMatrix(n, std::move(m));
    }
    throw std::invalid_argument("state file: kind must be \"pure\" or \"mixed\"");
}

State read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open state file '" + path + "'");
    return read_state(in);
}

State load_state(const std::string& name_or_path) {
    const bool looks_like_file =
        name_or_path.find('/') != std::string::npos || name_or_path.ends_with(".json");
    if (!looks_like_file) {
        try {
            return named_state(name_or_path);
        } catch (const std::invalid_argument&) {
            // fall through to the file path interpretation
        }
    }
    return read_state_file(name_or_path);
}

}  // namespace emt
