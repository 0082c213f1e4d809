#include "atype/machine.hpp"

#include <algorithm>
#include <stdexcept>

namespace atype {

uint8_t eval_fn(BoolFn f, uint8_t a, uint8_t b) {
  switch (f) {
    case BoolFn::And:  return static_cast<uint8_t>(a & b);
    case BoolFn::Nand: return static_cast<uint8_t>(1 - (a & b));
    case BoolFn::Or:   return static_cast<uint8_t>(a | b);
    case BoolFn::Nor:  return static_cast<uint8_t>(1 - (a | b));
    case BoolFn::Xor:  return static_cast<uint8_t>(a ^ b);
    case BoolFn::Xnor: return static_cast<uint8_t>(1 - (a ^ b));
  }
  throw std::logic_error("eval_fn: bad function tag");
}

uint64_t eval_fn_word(BoolFn f, uint64_t a, uint64_t b) {
  switch (f) {
    case BoolFn::And:  return a & b;
    case BoolFn::Nand: return ~(a & b);
    case BoolFn::Or:   return a | b;
    case BoolFn::Nor:  return ~(a | b);
    case BoolFn::Xor:  return a ^ b;
    case BoolFn::Xnor: return ~(a ^ b);
  }
  throw std::logic_error("eval_fn_word: bad function tag");
}

std::string_view to_string(BoolFn f) {
  switch (f) {
    case BoolFn::And:  return "AND";
    case BoolFn::Nand: return "NAND";
    case BoolFn::Or:   return "OR";
    case BoolFn::Nor:  return "NOR";
    case BoolFn::Xor:  return "XOR";
    case BoolFn::Xnor: return "XNOR";
  }
  return "?";
}

std::optional<BoolFn> fn_from_string(std::string_view s) {
  if (s == "AND") return BoolFn::And;
  if (s == "NAND") return BoolFn::Nand;
  if (s == "OR") return BoolFn::Or;
  if (s == "NOR") return BoolFn::Nor;
  if (s == "XOR") return BoolFn::Xor;
  if (s == "XNOR") return BoolFn::Xnor;
  return std::nullopt;
}

FunctionSet::FunctionSet(std::initializer_list<BoolFn> fns) : fns_(fns) {
  std::sort(fns_.begin(), fns_.end());
  fns_.erase(std::unique(fns_.begin(), fns_.end()), fns_.end());
  if (fns_.empty()) throw std::invalid_argument("FunctionSet: empty set");
}

bool FunctionSet::contains(BoolFn f) const {
  return std::binary_search(fns_.begin(), fns_.end(), f);
}

BoolFn FunctionSet::pick(Rng& rng) const {
  return fns_[rng.below(fns_.size())];
}

BoolFn FunctionSet::pick_other(BoolFn f, Rng& rng) const {
  if (size() < 2) throw std::invalid_argument("pick_other: set too small");
  size_t i = rng.below(fns_.size() - (contains(f) ? 1 : 0));
  for (BoolFn g : fns_) {
    if (g == f) continue;
    if (i == 0) return g;
    --i;
  }
  return fns_.back();
}

namespace {

NodeGene random_gene(int size, const FunctionSet& fns, Rng& rng) {
  NodeGene g;
  g.in1 = rng.below_int(size);
  g.in2 = rng.below_int(size);
  g.start = rng.bit();
  g.fn = fns.pick(rng);
  return g;
}

}  // namespace

Machine random_machine(int num_inputs, int num_outputs, int extra,
                       const FunctionSet& fns, Rng& rng) {
  if (num_inputs < 1 || num_outputs < 1 || extra < 0)
    throw std::invalid_argument("random_machine: bad interface");
  Machine m;
  m.mode = MachineMode::Task;
  m.num_inputs = num_inputs;
  m.num_outputs = num_outputs;
  const int size = num_inputs + num_outputs + 2 + extra;
  m.genes.reserve(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) m.genes.push_back(random_gene(size, fns, rng));
  return m;
}

Machine random_pure_machine(int size, const FunctionSet& fns, Rng& rng) {
  if (size < 1) throw std::invalid_argument("random_pure_machine: size < 1");
  Machine m;
  m.mode = MachineMode::Pure;
  m.genes.reserve(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) m.genes.push_back(random_gene(size, fns, rng));
  return m;
}

std::vector<std::string> validate(const Machine& m, const FunctionSet& allowed,
                                  int max_size) {
  std::vector<std::string> violations;
  const int n = m.size();
  if (n < m.min_size()) {
    violations.push_back("size " + std::to_string(n) + " below minimum " +
                         std::to_string(m.min_size()));
  }
  if (m.mode == MachineMode::Task && n > max_size) {
    violations.push_back("size " + std::to_string(n) + " above maximum " +
                         std::to_string(max_size));
  }
  for (int i = 0; i < n; ++i) {
    const NodeGene& g = m.genes[static_cast<size_t>(i)];
    if (g.in1 < 0 || g.in1 >= n)
      violations.push_back("node " + std::to_string(i) +
                           ": connection 1 out of range (" +
                           std::to_string(g.in1) + ")");
    if (g.in2 < 0 || g.in2 >= n)
      violations.push_back("node " + std::to_string(i) +
                           ": connection 2 out of range (" +
                           std::to_string(g.in2) + ")");
    if (g.start > 1)
      violations.push_back("node " + std::to_string(i) + ": start state not a bit");
    if (!allowed.contains(g.fn))
      violations.push_back("node " + std::to_string(i) + ": function " +
                           std::string(to_string(g.fn)) + " not in allowed set");
  }
  return violations;
}

}  // namespace atype
