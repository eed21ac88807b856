#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "error.hpp"
#include "quant.hpp"

namespace lspine {

namespace {

// Distribution helpers built directly on mt19937_64 output so that results do
// not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0); }

  double normal() {
    if (cached_) {
      cached_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    cached_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
  bool cached_ = false;
  double spare_ = 0.0;
};

// Keeps silent neurons trainable.
constexpr double kSurrogateFloor = 0.05;

double surrogate(double v, double threshold) {
  return std::max(kSurrogateFloor, 1.0 - std::abs(v - threshold) / threshold) / threshold;
}

struct Trace {
  // [layer][t * width + j]
  std::vector<std::vector<double>> v;
  std::vector<std::vector<std::uint8_t>> s;
};

}  // namespace

Dataset make_blobs(std::size_t samples, std::size_t dim, std::size_t classes, double spread,
                   std::uint64_t seed) {
  if (classes < 1 || dim < 1) throw Error(ErrorCode::InvalidConfig, "blobs need dim >= 1 and classes >= 1");
  Rng rng(seed);
  std::vector<std::vector<double>> centres(classes, std::vector<double>(dim));
  for (auto& c : centres) {
    for (auto& v : c) v = 0.15 + 0.7 * rng.uniform();
  }
  Dataset d;
  d.dim = dim;
  d.classes = classes;
  std::vector<std::size_t> order(samples);
  for (std::size_t k = 0; k < samples; ++k) order[k] = k;
  rng.shuffle(order);
  d.x.resize(samples);
  d.y.resize(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const std::size_t label = order[k] % classes;
    d.y[k] = label;
    d.x[k].resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      d.x[k][i] = std::clamp(centres[label][i] + spread * rng.normal(), 0.0, 1.0);
    }
  }
  return d;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& data, std::size_t train_count) {
  train_count = std::min(train_count, data.size());
  Dataset a{data.dim, data.classes, {}, {}};
  Dataset b{data.dim, data.classes, {}, {}};
  const auto cut = static_cast<std::ptrdiff_t>(train_count);
  a.x.assign(data.x.begin(), data.x.begin() + cut);
  a.y.assign(data.y.begin(), data.y.begin() + cut);
  b.x.assign(data.x.begin() + cut, data.x.end());
  b.y.assign(data.y.begin() + cut, data.y.end());
  return {std::move(a), std::move(b)};
}

FloatModel train_reference_model(const Dataset& data, const TrainConfig& cfg) {
  if (data.classes < 2 || data.size() < 2 * data.classes) {
    throw Error(ErrorCode::DatasetTooSmall, "training needs >= 2 classes and >= 2 samples per class, got " +
                                                std::to_string(data.classes) + " classes / " +
                                                std::to_string(data.size()) + " samples");
  }
  if (cfg.timesteps < 1) throw Error(ErrorCode::InvalidConfig, "timesteps must be >= 1");

  Rng rng(cfg.seed);
  FloatModel model;
  model.timesteps = cfg.timesteps;
  model.encoder = {EncoderKind::DeterministicRate, 0};

  std::vector<std::size_t> widths{data.dim};
  widths.insert(widths.end(), cfg.hidden.begin(), cfg.hidden.end());
  widths.push_back(data.classes);
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    FloatLayer fl;
    fl.in_dim = widths[l];
    fl.out_dim = widths[l + 1];
    fl.threshold = cfg.threshold;
    fl.leak_shift = cfg.leak_shift;
    fl.reset = ResetMode::HardZero;
    const double sigma = cfg.threshold / std::sqrt(double(fl.in_dim));
    const double mean = 0.5 * cfg.threshold / double(fl.in_dim);
    fl.weights.resize(fl.in_dim * fl.out_dim);
    for (auto& w : fl.weights) w = mean + sigma * rng.normal();
    model.layers.push_back(std::move(fl));
  }

  const std::size_t layers = model.layers.size();
  const std::size_t steps = cfg.timesteps;
  std::vector<SpikeTrain> inputs;
  inputs.reserve(data.size());
  for (const auto& x : data.x) inputs.push_back(encode_deterministic(x, steps));

  std::vector<std::size_t> order(data.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;

  Trace tr;
  tr.v.resize(layers);
  tr.s.resize(layers);
  std::vector<std::vector<double>> grad_s(layers);
  std::vector<std::vector<double>> grad_w(layers);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t k : order) {
      const SpikeTrain& in = inputs[k];
      // Forward, recording pre-reset membrane and spikes.
      for (std::size_t l = 0; l < layers; ++l) {
        const auto& fl = model.layers[l];
        tr.v[l].assign(steps * fl.out_dim, 0.0);
        tr.s[l].assign(steps * fl.out_dim, 0);
      }
      std::vector<std::vector<double>> v(layers);
      for (std::size_t l = 0; l < layers; ++l) v[l].assign(model.layers[l].out_dim, 0.0);
      for (std::size_t t = 0; t < steps; ++t) {
        for (std::size_t l = 0; l < layers; ++l) {
          const auto& fl = model.layers[l];
          const double alpha = leak_factor(fl.leak_shift);
          const std::uint8_t* prev = l == 0 ? in.row(t).data() : &tr.s[l - 1][t * fl.in_dim];
          for (std::size_t j = 0; j < fl.out_dim; ++j) {
            const auto w = fl.row(j);
            double current = 0.0;
            for (std::size_t i = 0; i < fl.in_dim; ++i) {
              if (prev[i]) current += w[i];
            }
            const double vj = v[l][j] * alpha + current;
            tr.v[l][t * fl.out_dim + j] = vj;
            const bool spike = vj >= fl.threshold;
            tr.s[l][t * fl.out_dim + j] = spike;
            v[l][j] = spike ? 0.0 : vj;
          }
        }
      }

      // Softmax cross-entropy on scaled output spike counts.
      const auto& out_layer = model.layers.back();
      std::vector<double> logits(out_layer.out_dim, 0.0);
      for (std::size_t t = 0; t < steps; ++t) {
        for (std::size_t j = 0; j < out_layer.out_dim; ++j) logits[j] += tr.s.back()[t * out_layer.out_dim + j];
      }
      const double gain = cfg.logit_gain / double(steps);
      double peak = -1e300;
      for (auto& z : logits) {
        z *= gain;
        peak = std::max(peak, z);
      }
      double denom = 0.0;
      for (auto& z : logits) {
        z = std::exp(z - peak);
        denom += z;
      }
      for (std::size_t l = 0; l < layers; ++l) {
        grad_s[l].assign(steps * model.layers[l].out_dim, 0.0);
        grad_w[l].assign(model.layers[l].weights.size(), 0.0);
      }
      for (std::size_t j = 0; j < out_layer.out_dim; ++j) {
        const double dz = logits[j] / denom - (j == data.y[k] ? 1.0 : 0.0);
        for (std::size_t t = 0; t < steps; ++t) grad_s.back()[t * out_layer.out_dim + j] = dz * gain;
      }

      // Backward through time, layer by layer from the output.
      for (std::size_t l = layers; l-- > 0;) {
        const auto& fl = model.layers[l];
        const double alpha = leak_factor(fl.leak_shift);
        std::vector<double> carry(fl.out_dim, 0.0);
        std::vector<double> dv(fl.out_dim);
        for (std::size_t t = steps; t-- > 0;) {
          const std::uint8_t* prev = l == 0 ? in.row(t).data() : &tr.s[l - 1][t * fl.in_dim];
          for (std::size_t j = 0; j < fl.out_dim; ++j) {
            const std::size_t idx = t * fl.out_dim + j;
            const double keep = tr.s[l][idx] ? 0.0 : 1.0;
            dv[j] = grad_s[l][idx] * surrogate(tr.v[l][idx], fl.threshold) + carry[j] * keep;
            carry[j] = dv[j] * alpha;
          }
          for (std::size_t j = 0; j < fl.out_dim; ++j) {
            if (dv[j] == 0.0) continue;
            double* gw = &grad_w[l][j * fl.in_dim];
            const auto w = fl.row(j);
            for (std::size_t i = 0; i < fl.in_dim; ++i) {
              if (prev[i]) gw[i] += dv[j];
              if (l > 0) grad_s[l - 1][t * fl.in_dim + i] += w[i] * dv[j];
            }
          }
        }
      }
      for (std::size_t l = 0; l < layers; ++l) {
        auto& w = model.layers[l].weights;
        for (std::size_t n = 0; n < w.size(); ++n) w[n] -= cfg.learning_rate * grad_w[l][n];
      }
    }
  }
  return model;
}

}  // namespace lspine
