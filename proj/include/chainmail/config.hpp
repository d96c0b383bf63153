#pragma once

#include <cstddef>
#include <string>

#include "chainmail/error.hpp"

namespace chainmail {

// Size caps. Every construction here is exponential in the worst case, so
// each builder checks the relevant cap before materializing anything.
struct Budget {
  std::size_t poset_size = 24;          // validated input posets
  std::size_t derived_size = 1U << 16;  // D(G), S(L) and other derived carriers
  std::size_t ground_points = 5;        // graphs, topologies, connectivity spaces
  std::size_t enumeration_n = 10;       // isomorph-free generation
};

inline void require_within(std::size_t value, std::size_t cap, const std::string& what) {
  if (value > cap)
    throw Error(ErrorKind::size_budget_exceeded,
                what + " needs " + std::to_string(value) + " > cap " + std::to_string(cap));
}

}  // namespace chainmail
