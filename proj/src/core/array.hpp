#pragma once

// 2D NCE array: layer tiling, ring-FIFO spike transport between stages, and
// the timestep-outer / layer-inner scheduler.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "encode.hpp"
#include "neuron.hpp"
#include "packed_arith.hpp"

namespace lspine {

struct ArrayConfig {
  std::size_t rows = 8;
  std::size_t cols = 8;
  std::size_t fifo_capacity = 16;

  std::size_t num_nce() const noexcept { return rows * cols; }
  void validate() const;
};

struct LayerSpec {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::vector<std::int32_t> weights;  // out_dim x in_dim, row-major
  double scale = 1.0;
  PrecisionMode mode = PrecisionMode::Int8;
  LIFConfig lif;

  std::span<const std::int32_t> row(std::size_t neuron) const noexcept {
    return {weights.data() + neuron * in_dim, in_dim};
  }
  void validate() const;
};

struct QuantizedModel {
  std::vector<LayerSpec> layers;
  std::uint32_t timesteps = 1;
  EncoderConfig encoder;

  std::size_t input_dim() const noexcept { return layers.empty() ? 0 : layers.front().in_dim; }
  std::size_t output_dim() const noexcept { return layers.empty() ? 0 : layers.back().out_dim; }
  void validate() const;
};

struct Schedule {
  std::size_t waves = 0;           // ceil(out_dim / num_nce)
  std::size_t ops_per_neuron = 0;  // packed ops per neuron per timestep
  std::size_t neurons = 0;

  std::size_t ops_per_timestep() const noexcept { return neurons * ops_per_neuron; }
};

Schedule map_layer(const LayerSpec& layer, const ArrayConfig& cfg);

struct NcePlacement {
  std::size_t wave = 0;
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const NcePlacement&, const NcePlacement&) = default;
};

// Row-major assignment of a neuron to its wave and NCE coordinate.
NcePlacement place_neuron(std::size_t neuron, const ArrayConfig& cfg) noexcept;

struct FifoStats {
  std::uint64_t pushes = 0;
  std::uint64_t pops = 0;
  std::uint64_t push_stalls = 0;
  std::uint64_t pop_stalls = 0;
  std::size_t peak_occupancy = 0;

  std::uint64_t total_stall_cycles() const noexcept { return push_stalls + pop_stalls; }
  FifoStats& operator+=(const FifoStats& other) noexcept;
  friend bool operator==(const FifoStats&, const FifoStats&) = default;
};

// Bounded ring buffer. A push on full or a pop on empty is a stall: the
// stall counter advances and the buffer is left unchanged.
class RingFifo {
 public:
  explicit RingFifo(std::size_t capacity);

  bool push(std::uint32_t item) noexcept;
  std::optional<std::uint32_t> pop() noexcept;

  std::size_t capacity() const noexcept { return slots_.size(); }
  std::size_t occupancy() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  bool full() const noexcept { return size_ == slots_.size(); }

  const FifoStats& stats() const noexcept { return stats_; }
  void clear() noexcept;

 private:
  std::vector<std::uint32_t> slots_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
  FifoStats stats_;
};

// Streams a burst of items through the FIFO. Each cycle the producer pushes
// up to `write_width` pending items (a failed push ends its cycle and counts
// one stall), then the consumer pops one item. Returns the items in delivery
// order, which is always the input order.
std::vector<std::uint32_t> stream_through(RingFifo& fifo, std::span<const std::uint32_t> items,
                                          std::size_t write_width);

struct InferenceResult {
  std::size_t predicted = 0;
  std::vector<std::uint32_t> counts;  // output-layer spike counters
  std::vector<SpikeEvent> trace;      // every spike of every layer, time-ordered
  std::vector<SpikeTrain> rasters;    // per-layer output rasters
  std::vector<FifoStats> fifo;        // fifo[l] feeds layer l
  std::uint64_t packed_ops = 0;

  std::uint64_t stall_cycles() const noexcept;
};

class Engine {
 public:
  Engine(QuantizedModel model, ArrayConfig cfg, std::size_t workers = 1);

  const QuantizedModel& model() const noexcept { return model_; }
  const ArrayConfig& config() const noexcept { return cfg_; }
  const Schedule& schedule(std::size_t layer) const { return layers_.at(layer).schedule; }

  // Zeroes membrane state, spike counters, FIFOs and op counters.
  void reset();

  // One timestep of one layer: every neuron runs one step. Membrane state
  // persists across calls until reset().
  std::vector<std::uint8_t> run_timestep(std::size_t layer, std::span<const std::uint8_t> input);

  InferenceResult run_inference(const SpikeTrain& train);

  const LIFState& state(std::size_t layer, std::size_t neuron) const {
    return layers_.at(layer).states.at(neuron);
  }
  std::uint64_t packed_ops() const noexcept { return packed_ops_; }
  const RingFifo& fifo(std::size_t layer) const { return fifos_.at(layer); }

 private:
  struct LayerRuntime {
    Schedule schedule;
    std::size_t chunks = 0;
    std::vector<PackedWord> words;  // weight scratchpad, out_dim x chunks
    std::vector<LIFState> states;   // membrane scratchpad
    std::vector<std::uint32_t> masks;
  };

  void step_range(LayerRuntime& rt, const LayerSpec& spec, std::size_t begin, std::size_t end,
                  std::span<std::uint8_t> out);

  QuantizedModel model_;
  ArrayConfig cfg_;
  std::size_t workers_;
  std::vector<LayerRuntime> layers_;
  std::vector<RingFifo> fifos_;
  std::uint64_t packed_ops_ = 0;
};

// Runs every sample through its own engine. Sample k uses encoder seed
// `encoder.seed + k`; results keep input order for any worker count.
std::vector<InferenceResult> run_batch(const QuantizedModel& model, const ArrayConfig& cfg,
                                       std::span<const std::vector<double>> samples,
                                       std::size_t workers = 1);

}  // namespace lspine
