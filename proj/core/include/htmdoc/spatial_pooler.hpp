#ifndef HTMDOC_SPATIAL_POOLER_HPP
#define HTMDOC_SPATIAL_POOLER_HPP

#include <cstdint>
#include <vector>

#include "htmdoc/bitvector.hpp"

namespace htmdoc {

struct SpatialPoolerParams {
  uint32_t input_dimensions = 400;
  uint32_t column_dimensions = 20000;
  uint32_t potential_radius = 200;
  double potential_pct = 0.5;
  uint32_t num_active_columns = 100;
  float syn_perm_active_inc = 0.01f;
  float syn_perm_inactive_dec = 0.008f;
  float syn_perm_connected = 0.10f;
  uint32_t stimulus_threshold = 0;
  uint64_t seed = 0;

  void validate() const;

  bool operator==(const SpatialPoolerParams&) const = default;
};

// Sparse Distributed Representation over pooler columns.
struct SDR {
  uint32_t width = 0;
  std::vector<uint32_t> active;  // sorted column indices

  bool operator==(const SDR&) const = default;
};

// Three-phase Spatial Pooler (overlap, inhibition, learning) with global
// inhibition. State is fully determined by (params, seed, input history).
class SpatialPooler {
public:
  SpatialPooler() = default;  // empty shell, filled by deserialization
  explicit SpatialPooler(const SpatialPoolerParams& params);

  // Rebuild from serialized state.
  static SpatialPooler restore(const SpatialPoolerParams& params,
                               std::vector<std::vector<uint32_t>> pools,
                               std::vector<std::vector<float>> permanences);

  // Overlap score per column: active input bits in the column's pool whose
  // synapse permanence exceeds the connection threshold. Scores below the
  // stimulus threshold are reported as 0.
  std::vector<uint32_t> compute_overlaps(const BitVector& input) const;

  // Global winner-take-all: the num_active highest-overlap columns with
  // positive overlap meeting the stimulus threshold. Ties at the cutoff go
  // to the lower column index.
  static SDR inhibit(const std::vector<uint32_t>& overlaps,
                     uint32_t num_active, uint32_t stimulus_threshold);

  // Permanence update on active columns only: +inc for synapses on active
  // input bits, -dec otherwise, clipped to [0,1].
  void learn(const BitVector& input, const SDR& active);

  // Overlap -> inhibition -> (learning when enabled).
  SDR compute(const BitVector& input, bool learning);

  const SpatialPoolerParams& params() const { return params_; }
  const std::vector<uint32_t>& pool(uint32_t column) const {
    return potential_pools_[column];
  }
  const std::vector<float>& permanences(uint32_t column) const {
    return permanences_[column];
  }
  std::vector<float>& mutable_permanences(uint32_t column) {
    return permanences_[column];
  }

  bool operator==(const SpatialPooler&) const = default;

private:
  SpatialPoolerParams params_;
  std::vector<std::vector<uint32_t>> potential_pools_;  // sorted indices
  std::vector<std::vector<float>> permanences_;         // aligned to pools
};

}  // namespace htmdoc

#endif
