#pragma once

#include <vector>

#include "atype/machine.hpp"

namespace testutil {

inline atype::Machine pure_machine(std::vector<atype::NodeGene> genes) {
  atype::Machine m;
  m.mode = atype::MachineMode::Pure;
  m.genes = std::move(genes);
  return m;
}

inline atype::Machine task_machine(int inputs, int outputs,
                                   std::vector<atype::NodeGene> genes) {
  atype::Machine m;
  m.mode = atype::MachineMode::Task;
  m.num_inputs = inputs;
  m.num_outputs = outputs;
  m.genes = std::move(genes);
  return m;
}

/// The two-node machine used across tests: node 0 reads (1,1), node 1
/// reads (0,0), both NAND, both starting 0. From (0,0) it alternates
/// with (1,1) forever.
inline atype::Machine period_two_pair() {
  return pure_machine({{1, 1, 0, atype::BoolFn::Nand},
                       {0, 0, 0, atype::BoolFn::Nand}});
}

}  // namespace testutil
