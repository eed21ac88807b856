#include "quant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "error.hpp"

namespace lspine {

void FloatLayer::validate() const {
  if (in_dim < 1 || out_dim < 1) throw Error(ErrorCode::DimensionMismatch, "layer dimensions must be >= 1");
  if (weights.size() != in_dim * out_dim) {
    throw Error(ErrorCode::DimensionMismatch, "float layer holds " + std::to_string(weights.size()) +
                                                  " weights, expected " + std::to_string(out_dim) + "x" +
                                                  std::to_string(in_dim));
  }
  for (double w : weights) {
    if (!std::isfinite(w)) throw Error(ErrorCode::InvalidConfig, "float weights must be finite");
  }
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw Error(ErrorCode::InvalidConfig, "float threshold must be positive and finite");
  }
  if (leak_shift < 0 || leak_shift > kMaxLeakShift) {
    throw Error(ErrorCode::InvalidConfig, "leak_shift must be in [0, 15]");
  }
}

void FloatModel::validate() const {
  if (timesteps < 1) throw Error(ErrorCode::InvalidConfig, "timesteps must be >= 1");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    layers[l].validate();
    if (l + 1 < layers.size() && layers[l].out_dim != layers[l + 1].in_dim) {
      throw Error(ErrorCode::DimensionMismatch, "layer " + std::to_string(l) + " out_dim does not match layer " +
                                                    std::to_string(l + 1) + " in_dim");
    }
  }
}

std::int32_t qmax_for_bits(int bits) {
  if (!mode_for_bits(bits)) {
    throw Error(ErrorCode::InvalidBits, "bits must be 2, 4 or 8, got " + std::to_string(bits));
  }
  return (std::int32_t{1} << (bits - 1)) - 1;
}

QuantizedMatrix quantize_layer(std::span<const double> weights, int bits) {
  const std::int32_t qmax = qmax_for_bits(bits);
  double peak = 0.0;
  for (double w : weights) peak = std::max(peak, std::abs(w));
  const double scale = peak > 0.0 ? peak / qmax : 1.0;

  QuantizedMatrix out;
  out.params = {bits, scale, qmax};
  out.values.reserve(weights.size());
  for (double w : weights) {
    // std::round rounds halfway cases away from zero.
    const double q = std::clamp(std::round(w / scale), -double(qmax), double(qmax));
    out.values.push_back(static_cast<std::int32_t>(q));
  }
  return out;
}

std::int32_t rescale_threshold(double threshold, double scale) {
  const double q = std::round(threshold / scale);
  if (!(q >= 1.0)) return 1;
  if (q > double(std::numeric_limits<std::int32_t>::max())) return std::numeric_limits<std::int32_t>::max();
  return static_cast<std::int32_t>(q);
}

QuantizedModel quantize_model(const FloatModel& model, int bits) {
  const auto mode = mode_for_bits(bits);
  if (!mode) throw Error(ErrorCode::InvalidBits, "bits must be 2, 4 or 8, got " + std::to_string(bits));
  model.validate();

  QuantizedModel out;
  out.timesteps = model.timesteps;
  out.encoder = model.encoder;
  for (const auto& fl : model.layers) {
    auto qm = quantize_layer(fl.weights, bits);
    LayerSpec spec;
    spec.in_dim = fl.in_dim;
    spec.out_dim = fl.out_dim;
    spec.weights = std::move(qm.values);
    spec.scale = qm.params.scale;
    spec.mode = *mode;
    spec.lif.threshold = rescale_threshold(fl.threshold, spec.scale);
    spec.lif.leak_shift = fl.leak_shift;
    spec.lif.reset = fl.reset;
    spec.lif.v_clamp = std::max(kDefaultVClamp, spec.lif.threshold);
    out.layers.push_back(std::move(spec));
  }
  return out;
}

FloatModel dequantize_model(const QuantizedModel& model) {
  FloatModel out;
  out.timesteps = model.timesteps;
  out.encoder = model.encoder;
  for (const auto& spec : model.layers) {
    FloatLayer fl;
    fl.in_dim = spec.in_dim;
    fl.out_dim = spec.out_dim;
    fl.weights.reserve(spec.weights.size());
    for (auto q : spec.weights) fl.weights.push_back(q * spec.scale);
    fl.threshold = spec.lif.threshold * spec.scale;
    fl.leak_shift = spec.lif.leak_shift;
    fl.reset = spec.lif.reset;
    out.layers.push_back(std::move(fl));
  }
  return out;
}

QuantizedModel requantize(const QuantizedModel& model, int bits) {
  return quantize_model(dequantize_model(model), bits);
}

std::vector<LayerShape> shapes_of(const QuantizedModel& model) {
  std::vector<LayerShape> out;
  for (const auto& l : model.layers) out.push_back({l.in_dim, l.out_dim});
  return out;
}

std::vector<LayerShape> shapes_of(const FloatModel& model) {
  std::vector<LayerShape> out;
  for (const auto& l : model.layers) out.push_back({l.in_dim, l.out_dim});
  return out;
}

FootprintReport footprint(std::span<const LayerShape> shapes, int bits, bool include_state) {
  if (bits != 32) qmax_for_bits(bits);
  FootprintReport r;
  r.bits = bits;
  for (const auto& s : shapes) {
    r.params += std::uint64_t{s.in_dim} * s.out_dim;
    r.neurons += s.out_dim;
  }
  r.weight_bits = r.params * static_cast<std::uint64_t>(bits);
  r.state_bits = include_state ? r.neurons * 32 : 0;
  r.total_bytes = (r.weight_bits + r.state_bits + 7) / 8;
  r.ratio_vs_fp32 = 32.0 / bits;
  return r;
}

FootprintReport footprint(const QuantizedModel& model, int bits, bool include_state) {
  const auto shapes = shapes_of(model);
  return footprint(shapes, bits, include_state);
}

FootprintReport footprint(const FloatModel& model, int bits, bool include_state) {
  const auto shapes = shapes_of(model);
  return footprint(shapes, bits, include_state);
}

double leak_factor(int shift) noexcept { return shift == 0 ? 1.0 : 1.0 - std::ldexp(1.0, -shift); }

FloatRun simulate_float(const FloatModel& model, const SpikeTrain& train) {
  if (model.layers.empty()) throw Error(ErrorCode::ShapeMismatch, "model has no layers");
  if (train.width() != model.input_dim()) {
    throw Error(ErrorCode::ShapeMismatch, "spike train width " + std::to_string(train.width()) +
                                              " != model input " + std::to_string(model.input_dim()));
  }
  FloatRun run;
  std::vector<std::vector<double>> v;
  for (const auto& l : model.layers) {
    run.rasters.emplace_back(train.timesteps(), l.out_dim);
    v.emplace_back(l.out_dim, 0.0);
  }
  std::vector<std::uint8_t> input;
  for (std::size_t t = 0; t < train.timesteps(); ++t) {
    auto row = train.row(t);
    input.assign(row.begin(), row.end());
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
      const auto& fl = model.layers[l];
      const double alpha = leak_factor(fl.leak_shift);
      std::vector<std::uint8_t> out(fl.out_dim, 0);
      for (std::size_t j = 0; j < fl.out_dim; ++j) {
        const auto w = fl.row(j);
        double current = 0.0;
        for (std::size_t i = 0; i < fl.in_dim; ++i) {
          if (input[i]) current += w[i];
        }
        double vj = v[l][j] * alpha + current;
        if (vj >= fl.threshold) {
          out[j] = 1;
          vj = fl.reset == ResetMode::HardZero ? 0.0 : vj - fl.threshold;
        }
        v[l][j] = vj;
      }
      auto raster_row = run.rasters[l].row(t);
      std::copy(out.begin(), out.end(), raster_row.begin());
      input = std::move(out);
    }
  }
  const auto& last = run.rasters.back();
  run.counts.resize(last.width());
  for (std::size_t j = 0; j < last.width(); ++j) run.counts[j] = static_cast<std::uint32_t>(last.count(j));
  run.predicted = decode_counts(run.counts);
  return run;
}

double accuracy_float(const FloatModel& model, const Dataset& data) {
  if (data.size() == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t k = 0; k < data.size(); ++k) {
    EncoderConfig enc = model.encoder;
    enc.seed += k;
    const auto run = simulate_float(model, encode(enc, data.x[k], model.timesteps));
    correct += run.predicted == data.y[k];
  }
  return double(correct) / double(data.size());
}

double accuracy_quantized(const QuantizedModel& model, const ArrayConfig& cfg, const Dataset& data,
                          std::size_t workers) {
  if (data.size() == 0) return 0.0;
  const auto results = run_batch(model, cfg, data.x, workers);
  std::size_t correct = 0;
  for (std::size_t k = 0; k < results.size(); ++k) correct += results[k].predicted == data.y[k];
  return double(correct) / double(data.size());
}

}  // namespace lspine
