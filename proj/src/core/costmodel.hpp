#pragma once

// Analytic latency/energy estimate. One packed NCE operation per cycle, the
// cycle time being the measured per-neuron critical-path delay. Stalls are
// not predicted; they are imported from a functional run's FIFO counters.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "array.hpp"

namespace lspine {

struct CostParams {
  double t_op = 0.39e-9;  // seconds per packed op
  double p_sys = 0.54;    // watts, whole system
  double p_nce = 4.2e-3;  // watts, one neuron engine

  void validate() const;
};

struct LayerCost {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  PrecisionMode mode = PrecisionMode::Int8;
  std::uint64_t waves = 0;
  std::uint64_t ops_per_neuron = 0;
  std::uint64_t compute_cycles = 0;
  std::uint64_t stall_cycles = 0;
};

struct CostReport {
  PrecisionMode mode = PrecisionMode::Int8;  // mode of the first layer
  std::uint64_t compute_cycles = 0;
  std::uint64_t stall_cycles = 0;
  std::uint64_t total_cycles = 0;
  double latency_s = 0.0;
  double energy_j = 0.0;
  std::vector<LayerCost> per_layer;
};

// compute_cycles = sum over layers of T * ceil(out / num_nce) * ceil(in / lanes).
// `layer_stalls` is either empty (ideal) or one entry per layer.
CostReport estimate(const QuantizedModel& model, const ArrayConfig& cfg,
                    std::span<const std::uint64_t> layer_stalls = {}, const CostParams& params = {});

// Stall cycles of a run, fifo[l] charged to layer l.
CostReport estimate(const QuantizedModel& model, const ArrayConfig& cfg, std::span<const FifoStats> fifo,
                    const CostParams& params = {});

// A batch of inferences: per-inference compute cycles times the batch size,
// stalls summed per layer across the batch.
CostReport estimate_batch(const QuantizedModel& model, const ArrayConfig& cfg,
                          std::span<const InferenceResult> results, const CostParams& params = {});

// The same model evaluated with every layer forced to `mode`.
CostReport estimate_as(const QuantizedModel& model, PrecisionMode mode, const ArrayConfig& cfg,
                       std::uint64_t stall_cycles = 0, const CostParams& params = {});

struct ModeCost {
  PrecisionMode mode;
  CostReport report;
};

// One report per requested mode; `stall_cycles` is injected into every mode.
std::vector<ModeCost> compare_modes(const QuantizedModel& model, const ArrayConfig& cfg,
                                    std::span<const PrecisionMode> modes, std::uint64_t stall_cycles = 0,
                                    const CostParams& params = {});

// mode,compute_cycles,stall_cycles,latency_ms,energy_mj
void write_cost_csv_header(std::ostream& os);
void write_cost_csv_row(std::ostream& os, const CostReport& report);

}  // namespace lspine
