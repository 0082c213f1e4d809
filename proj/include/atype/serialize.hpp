#pragma once

#include <filesystem>
#include <string>

#include "atype/machine.hpp"

namespace atype {

inline constexpr int kMachineFormatVersion = 1;

/// JSON document with fields version, mode, num_inputs, num_outputs,
/// nodes: [{in1, in2, start, fn}, ...]. Save/load round-trips exactly.
std::string machine_to_json(const Machine& m);

/// Throws std::runtime_error with a description of the first problem
/// found (bad JSON, wrong version, missing field, invalid structure).
Machine machine_from_json(const std::string& text);

void save_machine(const Machine& m, const std::filesystem::path& path);
Machine load_machine(const std::filesystem::path& path);

}  // namespace atype
