#include "atype/serialize.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace atype {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("machine document: " + what);
}

}  // namespace

std::string machine_to_json(const Machine& m) {
  ordered_json doc;
  doc["version"] = kMachineFormatVersion;
  doc["mode"] = m.mode == MachineMode::Task ? "task" : "pure";
  doc["num_inputs"] = m.num_inputs;
  doc["num_outputs"] = m.num_outputs;
  ordered_json nodes = ordered_json::array();
  for (const NodeGene& g : m.genes) {
    nodes.push_back({{"in1", g.in1},
                     {"in2", g.in2},
                     {"start", static_cast<int>(g.start)},
                     {"fn", to_string(g.fn)}});
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

Machine machine_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) fail("top level is not an object");
  if (!doc.contains("version") || !doc["version"].is_number_integer())
    fail("missing integer field 'version'");
  if (doc["version"].get<int>() != kMachineFormatVersion)
    fail("unsupported version " + doc["version"].dump());
  for (const char* field : {"mode", "num_inputs", "num_outputs", "nodes"})
    if (!doc.contains(field)) fail(std::string("missing field '") + field + "'");

  Machine m;
  const std::string mode = doc["mode"].get<std::string>();
  if (mode == "task")
    m.mode = MachineMode::Task;
  else if (mode == "pure")
    m.mode = MachineMode::Pure;
  else
    fail("mode must be \"pure\" or \"task\", got \"" + mode + "\"");
  m.num_inputs = doc["num_inputs"].get<int>();
  m.num_outputs = doc["num_outputs"].get<int>();
  if (!doc["nodes"].is_array()) fail("'nodes' is not an array");
  size_t index = 0;
  for (const auto& node : doc["nodes"]) {
    NodeGene g;
    for (const char* field : {"in1", "in2", "start", "fn"})
      if (!node.contains(field))
        fail("node " + std::to_string(index) + ": missing field '" + field + "'");
    g.in1 = node["in1"].get<int>();
    g.in2 = node["in2"].get<int>();
    const int start = node["start"].get<int>();
    if (start != 0 && start != 1)
      fail("node " + std::to_string(index) + ": start must be 0 or 1");
    g.start = static_cast<uint8_t>(start);
    const auto fn = fn_from_string(node["fn"].get<std::string>());
    if (!fn)
      fail("node " + std::to_string(index) + ": unknown function \"" +
           node["fn"].get<std::string>() + "\"");
    g.fn = *fn;
    m.genes.push_back(g);
    ++index;
  }
  const auto violations = validate(m);
  if (!violations.empty()) fail("invalid machine: " + violations.front());
  return m;
}

void save_machine(const Machine& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << machine_to_json(m);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Machine load_machine(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return machine_from_json(text);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace atype
