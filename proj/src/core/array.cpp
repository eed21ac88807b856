#include "array.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "error.hpp"

namespace lspine {

void ArrayConfig::validate() const {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::InvalidConfig, "array rows and cols must be >= 1");
  if (fifo_capacity < 1) throw Error(ErrorCode::InvalidConfig, "fifo_capacity must be >= 1");
}

void LayerSpec::validate() const {
  if (in_dim < 1 || out_dim < 1) throw Error(ErrorCode::DimensionMismatch, "layer dimensions must be >= 1");
  if (weights.size() != in_dim * out_dim) {
    throw Error(ErrorCode::DimensionMismatch, "layer holds " + std::to_string(weights.size()) +
                                                  " weights, expected " + std::to_string(out_dim) + "x" +
                                                  std::to_string(in_dim));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::InvalidConfig, "layer scale must be positive and finite");
  }
  const auto lo = value_min(mode);
  const auto hi = value_max(mode);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] < lo || weights[k] > hi) {
      throw Error(ErrorCode::LaneOverflow, "weight " + std::to_string(weights[k]) + " at index " +
                                               std::to_string(k) + " outside " +
                                               std::string(to_string(mode)) + " range");
    }
  }
  lif.validate();
}

void QuantizedModel::validate() const {
  if (timesteps < 1) throw Error(ErrorCode::InvalidConfig, "timesteps must be >= 1");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    layers[l].validate();
    if (l + 1 < layers.size() && layers[l].out_dim != layers[l + 1].in_dim) {
      throw Error(ErrorCode::DimensionMismatch, "layer " + std::to_string(l) + " out=" +
                                                    std::to_string(layers[l].out_dim) + " but layer " +
                                                    std::to_string(l + 1) + " in=" +
                                                    std::to_string(layers[l + 1].in_dim));
    }
  }
}

Schedule map_layer(const LayerSpec& layer, const ArrayConfig& cfg) {
  const std::size_t nce = cfg.num_nce();
  return {(layer.out_dim + nce - 1) / nce, chunks_for(layer.in_dim, layer.mode), layer.out_dim};
}

NcePlacement place_neuron(std::size_t neuron, const ArrayConfig& cfg) noexcept {
  const std::size_t nce = cfg.num_nce();
  const std::size_t slot = neuron % nce;
  return {neuron / nce, slot / cfg.cols, slot % cfg.cols};
}

FifoStats& FifoStats::operator+=(const FifoStats& other) noexcept {
  pushes += other.pushes;
  pops += other.pops;
  push_stalls += other.push_stalls;
  pop_stalls += other.pop_stalls;
  peak_occupancy = std::max(peak_occupancy, other.peak_occupancy);
  return *this;
}

RingFifo::RingFifo(std::size_t capacity) : slots_(capacity) {
  if (capacity < 1) throw Error(ErrorCode::InvalidConfig, "fifo capacity must be >= 1");
}

bool RingFifo::push(std::uint32_t item) noexcept {
  if (full()) {
    ++stats_.push_stalls;
    return false;
  }
  slots_[(head_ + size_) % slots_.size()] = item;
  ++size_;
  ++stats_.pushes;
  stats_.peak_occupancy = std::max(stats_.peak_occupancy, size_);
  return true;
}

std::optional<std::uint32_t> RingFifo::pop() noexcept {
  if (empty()) {
    ++stats_.pop_stalls;
    return std::nullopt;
  }
  const std::uint32_t item = slots_[head_];
  head_ = (head_ + 1) % slots_.size();
  --size_;
  ++stats_.pops;
  return item;
}

void RingFifo::clear() noexcept {
  head_ = 0;
  size_ = 0;
  stats_ = {};
}

std::vector<std::uint32_t> stream_through(RingFifo& fifo, std::span<const std::uint32_t> items,
                                          std::size_t write_width) {
  std::vector<std::uint32_t> delivered;
  delivered.reserve(items.size());
  std::size_t next = 0;
  while (next < items.size() || !fifo.empty()) {
    for (std::size_t port = 0; port < write_width && next < items.size(); ++port) {
      if (!fifo.push(items[next])) break;
      ++next;
    }
    if (auto item = fifo.pop()) delivered.push_back(*item);
  }
  return delivered;
}

std::uint64_t InferenceResult::stall_cycles() const noexcept {
  std::uint64_t total = 0;
  for (const auto& f : fifo) total += f.total_stall_cycles();
  return total;
}

Engine::Engine(QuantizedModel model, ArrayConfig cfg, std::size_t workers)
    : model_(std::move(model)), cfg_(cfg), workers_(std::max<std::size_t>(1, workers)) {
  cfg_.validate();
  model_.validate();
  layers_.reserve(model_.layers.size());
  for (const auto& spec : model_.layers) {
    LayerRuntime rt;
    rt.schedule = map_layer(spec, cfg_);
    rt.chunks = chunks_for(spec.in_dim, spec.mode);
    rt.words.reserve(spec.out_dim * rt.chunks);
    for (std::size_t j = 0; j < spec.out_dim; ++j) {
      const auto row = pack_row(spec.row(j), spec.mode);
      rt.words.insert(rt.words.end(), row.begin(), row.end());
    }
    rt.states.assign(spec.out_dim, LIFState{});
    rt.masks.assign(rt.chunks, 0u);
    layers_.push_back(std::move(rt));
    fifos_.emplace_back(cfg_.fifo_capacity);
  }
}

void Engine::reset() {
  for (auto& rt : layers_) std::fill(rt.states.begin(), rt.states.end(), LIFState{});
  for (auto& f : fifos_) f.clear();
  packed_ops_ = 0;
}

void Engine::step_range(LayerRuntime& rt, const LayerSpec& spec, std::size_t begin, std::size_t end,
                        std::span<std::uint8_t> out) {
  const std::span<const PackedWord> words(rt.words);
  for (std::size_t j = begin; j < end; ++j) {
    const auto r = step_packed(rt.states[j], words.subspan(j * rt.chunks, rt.chunks), rt.masks, spec.lif);
    rt.states[j] = r.state;
    out[j] = r.spiked ? 1 : 0;
  }
}

std::vector<std::uint8_t> Engine::run_timestep(std::size_t layer, std::span<const std::uint8_t> input) {
  const LayerSpec& spec = model_.layers.at(layer);
  LayerRuntime& rt = layers_[layer];
  if (input.size() != spec.in_dim) {
    throw Error(ErrorCode::DimensionMismatch, "layer " + std::to_string(layer) + " expects " +
                                                  std::to_string(spec.in_dim) + " inputs, got " +
                                                  std::to_string(input.size()));
  }
  pack_spikes_into(input, spec.mode, rt.masks);
  std::vector<std::uint8_t> out(spec.out_dim, 0);
  const std::size_t nce = cfg_.num_nce();
  for (std::size_t wave = 0; wave < rt.schedule.waves; ++wave) {
    const std::size_t begin = wave * nce;
    const std::size_t end = std::min(spec.out_dim, begin + nce);
    const std::size_t n = end - begin;
    if (workers_ == 1 || n < 2) {
      step_range(rt, spec, begin, end, out);
    } else {
      // Neurons share no state within a wave; the join is the wave barrier.
      const std::size_t parts = std::min(workers_, n);
      std::vector<std::jthread> pool;
      pool.reserve(parts);
      for (std::size_t p = 0; p < parts; ++p) {
        const std::size_t lo = begin + n * p / parts;
        const std::size_t hi = begin + n * (p + 1) / parts;
        pool.emplace_back([this, &rt, &spec, lo, hi, &out] { step_range(rt, spec, lo, hi, out); });
      }
    }
  }
  packed_ops_ += rt.schedule.ops_per_timestep();
  return out;
}

InferenceResult Engine::run_inference(const SpikeTrain& train) {
  if (model_.layers.empty()) throw Error(ErrorCode::ShapeMismatch, "model has no layers");
  if (train.width() != model_.input_dim() || train.timesteps() != model_.timesteps) {
    throw Error(ErrorCode::ShapeMismatch,
                "spike train is " + std::to_string(train.timesteps()) + "x" + std::to_string(train.width()) +
                    ", model expects " + std::to_string(model_.timesteps) + "x" +
                    std::to_string(model_.input_dim()));
  }
  reset();
  InferenceResult result;
  for (const auto& spec : model_.layers) result.rasters.emplace_back(train.timesteps(), spec.out_dim);

  const std::size_t write_width = cfg_.num_nce();
  std::vector<std::uint32_t> events;
  std::vector<std::uint8_t> input;
  for (std::size_t t = 0; t < train.timesteps(); ++t) {
    auto row = train.row(t);
    input.assign(row.begin(), row.end());
    for (std::size_t l = 0; l < model_.layers.size(); ++l) {
      events.clear();
      for (std::size_t i = 0; i < input.size(); ++i) {
        if (input[i]) events.push_back(static_cast<std::uint32_t>(i));
      }
      const auto delivered = stream_through(fifos_[l], events, write_width);
      std::vector<std::uint8_t> gathered(input.size(), 0);
      for (auto id : delivered) gathered[id] = 1;

      auto out = run_timestep(l, gathered);
      auto raster_row = result.rasters[l].row(t);
      std::copy(out.begin(), out.end(), raster_row.begin());
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (out[j]) {
          result.trace.push_back({static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(l),
                                  static_cast<std::uint32_t>(j)});
        }
      }
      input = std::move(out);
    }
  }

  const auto& last = layers_.back();
  result.counts.resize(last.states.size());
  for (std::size_t j = 0; j < last.states.size(); ++j) result.counts[j] = last.states[j].spike_count;
  result.predicted = decode_counts(result.counts);
  for (const auto& f : fifos_) result.fifo.push_back(f.stats());
  result.packed_ops = packed_ops_;
  return result;
}

std::vector<InferenceResult> run_batch(const QuantizedModel& model, const ArrayConfig& cfg,
                                       std::span<const std::vector<double>> samples, std::size_t workers) {
  std::vector<InferenceResult> results(samples.size());
  const auto run_range = [&](std::size_t lo, std::size_t hi) {
    Engine engine(model, cfg);
    for (std::size_t k = lo; k < hi; ++k) {
      EncoderConfig enc = model.encoder;
      enc.seed += k;
      results[k] = engine.run_inference(encode(enc, samples[k], model.timesteps));
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, samples.size()));
  if (workers == 1) {
    run_range(0, samples.size());
    return results;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t p = 0; p < workers; ++p) {
      const std::size_t lo = samples.size() * p / workers;
      const std::size_t hi = samples.size() * (p + 1) / workers;
      pool.emplace_back([&, p, lo, hi] {
        try {
          run_range(lo, hi);
        } catch (...) {
          errors[p] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace lspine
