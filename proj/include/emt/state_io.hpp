// State file format:
//   { "kind": "pure"|"mixed", "n_qubits": n, "data": [...] }
// Complex numbers are two-element arrays [re, im]; pure data is a flat
// amplitude list, mixed data is a row-major matrix.

#pragma once

#include <iosfwd>
#include <string>

#include "emt/states.hpp"

namespace emt {

void write_state(std::ostream& out, const State& state);
void write_state_file(const std::string& path, const State& state);

State read_state(std::istream& in);
State read_state_file(const std::string& path);

// Either a named family spec ("ghz:3", "werner:0.5", ...) or a file path.
State load_state(const std::string& name_or_path);

}  // namespace emt
