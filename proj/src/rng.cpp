#include "atype/rng.hpp"

namespace atype {

uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> path) {
  uint64_t x = master;
  for (uint64_t word : path) {
    SplitMix64 sm(x ^ (word + 0x9e3779b97f4a7c15ULL));
    x = sm.next();
  }
  SplitMix64 sm(x);
  return sm.next();
}

uint64_t hash_name(std::string_view name) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace atype
