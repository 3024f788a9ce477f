#ifndef HTMDOC_BITVECTOR_HPP
#define HTMDOC_BITVECTOR_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "htmdoc/error.hpp"

namespace htmdoc {

// Fixed-width binary pattern stored as a sorted list of active indices.
struct BitVector {
  uint32_t width = 0;
  std::vector<uint32_t> ones;  // sorted, unique, each < width

  BitVector() = default;
  BitVector(uint32_t w, std::vector<uint32_t> active)
      : width(w), ones(std::move(active)) {
    std::sort(ones.begin(), ones.end());
    ones.erase(std::unique(ones.begin(), ones.end()), ones.end());
    if (!ones.empty() && ones.back() >= width)
      throw ContractError("BitVector: index out of range");
  }

  bool test(uint32_t i) const {
    return std::binary_search(ones.begin(), ones.end(), i);
  }

  // Number of positions active in both.
  static uint32_t overlap(const BitVector& a, const BitVector& b) {
    uint32_t n = 0;
    auto ia = a.ones.begin();
    auto ib = b.ones.begin();
    while (ia != a.ones.end() && ib != b.ones.end()) {
      if (*ia < *ib)
        ++ia;
      else if (*ib < *ia)
        ++ib;
      else {
        ++n;
        ++ia;
        ++ib;
      }
    }
    return n;
  }

  bool operator==(const BitVector&) const = default;
};

}  // namespace htmdoc

#endif
