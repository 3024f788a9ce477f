#include "htmdoc/spatial_pooler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "htmdoc/error.hpp"
#include "htmdoc/rng.hpp"

namespace htmdoc {

void SpatialPoolerParams::validate() const {
  if (input_dimensions == 0 || column_dimensions == 0)
    throw ContractError("SpatialPoolerParams: zero dimensions");
  if (num_active_columns == 0 || num_active_columns > column_dimensions)
    throw ContractError("SpatialPoolerParams: bad num_active_columns");
  if (!(potential_pct > 0.0 && potential_pct <= 1.0))
    throw ContractError("SpatialPoolerParams: potential_pct must be in (0,1]");
  auto in_unit = [](float v) { return v >= 0.0f && v <= 1.0f; };
  if (!in_unit(syn_perm_active_inc) || !in_unit(syn_perm_inactive_dec) ||
      !in_unit(syn_perm_connected))
    throw ContractError("SpatialPoolerParams: permanence values outside [0,1]");
}

SpatialPooler::SpatialPooler(const SpatialPoolerParams& params)
    : params_(params) {
  params_.validate();
  const uint32_t n_in = params_.input_dimensions;
  const uint32_t n_col = params_.column_dimensions;
  potential_pools_.resize(n_col);
  permanences_.resize(n_col);
  Rng rng(params_.seed);
  for (uint32_t c = 0; c < n_col; ++c) {
    // linear center mapping, clipped radius (no wraparound)
    const uint32_t center = static_cast<uint32_t>(
        static_cast<uint64_t>(c) * n_in / n_col);
    const uint32_t lo =
        center >= params_.potential_radius ? center - params_.potential_radius
                                           : 0;
    const uint32_t hi =
        std::min<uint32_t>(n_in - 1, center + params_.potential_radius);
    const uint32_t n_candidates = hi - lo + 1;
    const uint32_t pool_size = static_cast<uint32_t>(
        std::ceil(params_.potential_pct * n_candidates));
    auto sample = rng.sample_without_replacement(n_candidates, pool_size);
    auto& pool = potential_pools_[c];
    pool.reserve(pool_size);
    for (uint32_t offset : sample) pool.push_back(lo + offset);
    auto& perms = permanences_[c];
    perms.reserve(pool_size);
    for (uint32_t i = 0; i < pool_size; ++i) {
      const float p = static_cast<float>(
          rng.uniform(params_.syn_perm_connected - 0.05,
                      params_.syn_perm_connected + 0.05));
      perms.push_back(std::clamp(p, 0.0f, 1.0f));
    }
  }
}

SpatialPooler SpatialPooler::restore(
    const SpatialPoolerParams& params,
    std::vector<std::vector<uint32_t>> pools,
    std::vector<std::vector<float>> permanences) {
  params.validate();
  if (pools.size() != params.column_dimensions ||
      permanences.size() != params.column_dimensions)
    throw ContractError("SpatialPooler::restore: column count mismatch");
  SpatialPooler sp;
  sp.params_ = params;
  sp.potential_pools_ = std::move(pools);
  sp.permanences_ = std::move(permanences);
  return sp;
}

std::vector<uint32_t> SpatialPooler::compute_overlaps(
    const BitVector& input) const {
  if (input.width != params_.input_dimensions)
    throw ContractError("compute_overlaps: input width mismatch");
  std::vector<char> active_bit(params_.input_dimensions, 0);
  for (uint32_t i : input.ones) active_bit[i] = 1;

  std::vector<uint32_t> overlaps(params_.column_dimensions, 0);
  for (uint32_t c = 0; c < params_.column_dimensions; ++c) {
    const auto& pool = potential_pools_[c];
    const auto& perms = permanences_[c];
    uint32_t score = 0;
    for (size_t s = 0; s < pool.size(); ++s)
      if (active_bit[pool[s]] && perms[s] > params_.syn_perm_connected)
        ++score;
    overlaps[c] = score >= params_.stimulus_threshold ? score : 0;
  }
  return overlaps;
}

SDR SpatialPooler::inhibit(const std::vector<uint32_t>& overlaps,
                           uint32_t num_active, uint32_t stimulus_threshold) {
  if (num_active == 0) throw ContractError("inhibit: num_active must be >= 1");
  std::vector<uint32_t> eligible;
  for (uint32_t c = 0; c < overlaps.size(); ++c)
    if (overlaps[c] > 0 && overlaps[c] >= stimulus_threshold)
      eligible.push_back(c);

  SDR sdr;
  sdr.width = static_cast<uint32_t>(overlaps.size());
  if (eligible.size() > num_active) {
    // highest overlap wins; ties at the cutoff to the lower column index
    std::stable_sort(eligible.begin(), eligible.end(),
                     [&](uint32_t a, uint32_t b) {
                       return overlaps[a] > overlaps[b];
                     });
    eligible.resize(num_active);
    std::sort(eligible.begin(), eligible.end());
  }
  sdr.active = std::move(eligible);
  return sdr;
}

void SpatialPooler::learn(const BitVector& input, const SDR& active) {
  if (input.width != params_.input_dimensions)
    throw ContractError("learn: input width mismatch");
  if (active.width != params_.column_dimensions)
    throw ContractError("learn: SDR width mismatch");
  std::vector<char> active_bit(params_.input_dimensions, 0);
  for (uint32_t i : input.ones) active_bit[i] = 1;

  for (uint32_t c : active.active) {
    const auto& pool = potential_pools_[c];
    auto& perms = permanences_[c];
    for (size_t s = 0; s < pool.size(); ++s) {
      float p = perms[s];
      if (active_bit[pool[s]])
        p += params_.syn_perm_active_inc;
      else
        p -= params_.syn_perm_inactive_dec;
      perms[s] = std::clamp(p, 0.0f, 1.0f);
    }
  }
}

SDR SpatialPooler::compute(const BitVector& input, bool learning) {
  const auto overlaps = compute_overlaps(input);
  SDR sdr = inhibit(overlaps, params_.num_active_columns,
                    params_.stimulus_threshold);
  if (learning) learn(input, sdr);
  return sdr;
}

}  // namespace htmdoc
