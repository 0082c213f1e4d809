#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atype/rng.hpp"

namespace atype {

/// The six two-input node functions. Nand alone gives the classic
/// unorganised-machine behaviour; the full set gives RBN mode.
enum class BoolFn : uint8_t { And, Nand, Or, Nor, Xor, Xnor };

inline constexpr int kNumBoolFns = 6;

uint8_t eval_fn(BoolFn f, uint8_t a, uint8_t b);

/// Bitwise variant: evaluates 64 independent lanes at once.
uint64_t eval_fn_word(BoolFn f, uint64_t a, uint64_t b);

std::string_view to_string(BoolFn f);
std::optional<BoolFn> fn_from_string(std::string_view s);

/// Non-empty subset of the six node functions, kept sorted.
class FunctionSet {
 public:
  FunctionSet(std::initializer_list<BoolFn> fns);

  static FunctionSet nand_only() { return FunctionSet{BoolFn::Nand}; }
  static FunctionSet all_six() {
    return FunctionSet{BoolFn::And, BoolFn::Nand, BoolFn::Or,
                       BoolFn::Nor, BoolFn::Xor, BoolFn::Xnor};
  }

  bool contains(BoolFn f) const;
  int size() const { return static_cast<int>(fns_.size()); }
  BoolFn at(int i) const { return fns_[static_cast<size_t>(i)]; }

  BoolFn pick(Rng& rng) const;
  /// Uniform over the set minus {f}; requires size() >= 2.
  BoolFn pick_other(BoolFn f, Rng& rng) const;

  bool operator==(const FunctionSet&) const = default;

 private:
  std::vector<BoolFn> fns_;
};

/// One node: two input connections, a start state, and a function tag.
struct NodeGene {
  int in1 = 0;
  int in2 = 0;
  uint8_t start = 0;
  BoolFn fn = BoolFn::Nand;

  bool operator==(const NodeGene&) const = default;
};

enum class MachineMode : uint8_t { Pure, Task };

inline constexpr int kMaxMachineSize = 100;

/// A recurrent network of two-input Boolean nodes updating synchronously.
///
/// Task machines reserve a fixed low-index block that survives the size
/// operators: nodes [0, I) are inputs, node I is the constant-True line,
/// node I+1 the constant-False line, and nodes [I+2, I+2+O) are outputs.
/// Pure machines have no reserved nodes and take no external input.
struct Machine {
  MachineMode mode = MachineMode::Pure;
  int num_inputs = 0;
  int num_outputs = 0;
  std::vector<NodeGene> genes;

  int size() const { return static_cast<int>(genes.size()); }

  /// Smallest legal size: the reserved block for task machines.
  int min_size() const {
    return mode == MachineMode::Task ? num_inputs + num_outputs + 2 : 1;
  }

  int const_true() const { return num_inputs; }
  int const_false() const { return num_inputs + 1; }
  int output_node(int k) const { return num_inputs + 2 + k; }

  bool is_input(int i) const {
    return mode == MachineMode::Task && i < num_inputs;
  }
  bool is_constant(int i) const {
    return mode == MachineMode::Task &&
           (i == const_true() || i == const_false());
  }

  bool operator==(const Machine&) const = default;
};

/// Task machine of size I+O+2+extra with uniformly random connections,
/// start states, and functions drawn from `fns`.
Machine random_machine(int num_inputs, int num_outputs, int extra,
                       const FunctionSet& fns, Rng& rng);

/// Unconstrained machine with no reserved nodes.
Machine random_pure_machine(int size, const FunctionSet& fns, Rng& rng);

/// Checks every structural invariant and returns all violations found
/// (empty means valid). `allowed` restricts node functions; pass
/// FunctionSet::nand_only() to check a machine as a plain A-type.
std::vector<std::string> validate(const Machine& m,
                                  const FunctionSet& allowed = FunctionSet::all_six(),
                                  int max_size = kMaxMachineSize);

}  // namespace atype
