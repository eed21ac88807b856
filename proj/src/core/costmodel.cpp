#include "costmodel.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "error.hpp"

namespace lspine {

void CostParams::validate() const {
  if (!(t_op > 0.0) || !(p_sys > 0.0) || !(p_nce > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "cost parameters must be strictly positive");
  }
}

namespace {

CostReport finish(CostReport r, const CostParams& params) {
  for (const auto& lc : r.per_layer) {
    r.compute_cycles += lc.compute_cycles;
    r.stall_cycles += lc.stall_cycles;
  }
  r.total_cycles = r.compute_cycles + r.stall_cycles;
  r.latency_s = double(r.total_cycles) * params.t_op;
  r.energy_j = r.latency_s * params.p_sys;
  return r;
}

LayerCost layer_cost(const LayerSpec& spec, PrecisionMode mode, const ArrayConfig& cfg, std::uint32_t T) {
  LayerSpec shape;
  shape.in_dim = spec.in_dim;
  shape.out_dim = spec.out_dim;
  shape.mode = mode;
  const Schedule s = map_layer(shape, cfg);
  LayerCost lc;
  lc.in_dim = spec.in_dim;
  lc.out_dim = spec.out_dim;
  lc.mode = mode;
  lc.waves = s.waves;
  lc.ops_per_neuron = s.ops_per_neuron;
  lc.compute_cycles = std::uint64_t{T} * s.waves * s.ops_per_neuron;
  return lc;
}

}  // namespace

CostReport estimate(const QuantizedModel& model, const ArrayConfig& cfg,
                    std::span<const std::uint64_t> layer_stalls, const CostParams& params) {
  cfg.validate();
  params.validate();
  if (!layer_stalls.empty() && layer_stalls.size() != model.layers.size()) {
    throw Error(ErrorCode::ShapeMismatch, "stall vector has " + std::to_string(layer_stalls.size()) +
                                              " entries for " + std::to_string(model.layers.size()) + " layers");
  }
  CostReport r;
  if (!model.layers.empty()) r.mode = model.layers.front().mode;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    LayerCost lc = layer_cost(model.layers[l], model.layers[l].mode, cfg, model.timesteps);
    if (!layer_stalls.empty()) lc.stall_cycles = layer_stalls[l];
    r.per_layer.push_back(lc);
  }
  return finish(std::move(r), params);
}

CostReport estimate(const QuantizedModel& model, const ArrayConfig& cfg, std::span<const FifoStats> fifo,
                    const CostParams& params) {
  std::vector<std::uint64_t> stalls;
  stalls.reserve(fifo.size());
  for (const auto& f : fifo) stalls.push_back(f.total_stall_cycles());
  return estimate(model, cfg, stalls, params);
}

CostReport estimate_batch(const QuantizedModel& model, const ArrayConfig& cfg,
                          std::span<const InferenceResult> results, const CostParams& params) {
  cfg.validate();
  std::vector<std::uint64_t> stalls(model.layers.size(), 0);
  for (const auto& r : results) {
    if (r.fifo.size() != stalls.size()) {
      throw Error(ErrorCode::ShapeMismatch, "inference result does not match the model's layer count");
    }
    for (std::size_t l = 0; l < stalls.size(); ++l) stalls[l] += r.fifo[l].total_stall_cycles();
  }
  CostReport report;
  if (!model.layers.empty()) report.mode = model.layers.front().mode;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    LayerCost lc = layer_cost(model.layers[l], model.layers[l].mode, cfg, model.timesteps);
    lc.compute_cycles *= results.size();
    lc.stall_cycles = stalls[l];
    report.per_layer.push_back(lc);
  }
  params.validate();
  return finish(std::move(report), params);
}

CostReport estimate_as(const QuantizedModel& model, PrecisionMode mode, const ArrayConfig& cfg,
                       std::uint64_t stall_cycles, const CostParams& params) {
  cfg.validate();
  params.validate();
  CostReport r;
  r.mode = mode;
  for (const auto& spec : model.layers) r.per_layer.push_back(layer_cost(spec, mode, cfg, model.timesteps));
  // Injected stalls are charged to the first layer's input stage.
  if (!r.per_layer.empty()) r.per_layer.front().stall_cycles = stall_cycles;
  return finish(std::move(r), params);
}

std::vector<ModeCost> compare_modes(const QuantizedModel& model, const ArrayConfig& cfg,
                                    std::span<const PrecisionMode> modes, std::uint64_t stall_cycles,
                                    const CostParams& params) {
  std::vector<ModeCost> out;
  for (auto m : modes) out.push_back({m, estimate_as(model, m, cfg, stall_cycles, params)});
  return out;
}

void write_cost_csv_header(std::ostream& os) { os << "mode,compute_cycles,stall_cycles,latency_ms,energy_mj\n"; }

void write_cost_csv_row(std::ostream& os, const CostReport& r) {
  char buf[64];
  os << to_string(r.mode) << ',' << r.compute_cycles << ',' << r.stall_cycles << ',';
  std::snprintf(buf, sizeof buf, "%.9g", r.latency_s * 1e3);
  os << buf << ',';
  std::snprintf(buf, sizeof buf, "%.9g", r.energy_j * 1e3);
  os << buf << '\n';
}

}  // namespace lspine
