#include "lspine/lspine.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "array.hpp"
#include "costmodel.hpp"
#include "encode.hpp"
#include "error.hpp"
#include "model_io.hpp"
#include "quant.hpp"

struct lspine_float_model {
  lspine::FloatModel model;
};

struct lspine_model {
  lspine::QuantizedModel model;
};

struct lspine_spike_train {
  lspine::SpikeTrain train;
};

struct lspine_result {
  lspine::InferenceResult result;
  std::vector<lspine_spike_event> events;
};

struct lspine_batch {
  std::vector<lspine_result> results;
};

namespace {

thread_local std::string g_last_error;

lspine_status status_of(lspine::ErrorCode code) {
  using lspine::ErrorCode;
  switch (code) {
    case ErrorCode::Parse: return LSPINE_ERR_PARSE;
    case ErrorCode::Io: return LSPINE_ERR_IO;
    case ErrorCode::FanInMismatch:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::LengthMismatch:
    case ErrorCode::MaskLengthMismatch: return LSPINE_ERR_SHAPE;
    default: return LSPINE_ERR_INVALID_PARAM;
  }
}

lspine_status fail(lspine_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `fn`, translating exceptions into status codes and the error message.
template <typename Fn>
lspine_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return LSPINE_OK;
  } catch (const lspine::Error& e) {
    return fail(status_of(e.code()), std::string(lspine::to_string(e.code())) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(LSPINE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LSPINE_ERR_INTERNAL, e.what());
  }
}

// Model files: anything wrong with the document's content is a parse error.
template <typename Fn>
lspine_status guarded_load(Fn&& fn) {
  const lspine_status s = guarded(std::forward<Fn>(fn));
  if (s == LSPINE_ERR_INVALID_PARAM || s == LSPINE_ERR_SHAPE) return LSPINE_ERR_PARSE;
  return s;
}

lspine_status null_arg(const char* name) { return fail(LSPINE_ERR_INVALID_PARAM, std::string(name) + " is NULL"); }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lspine::PrecisionMode to_core(lspine_mode m) {
  switch (m) {
    case LSPINE_MODE_INT2: return lspine::PrecisionMode::Int2;
    case LSPINE_MODE_INT4: return lspine::PrecisionMode::Int4;
    case LSPINE_MODE_INT8: return lspine::PrecisionMode::Int8;
  }
  throw lspine::Error(lspine::ErrorCode::InvalidConfig, "unknown precision mode " + std::to_string(int(m)));
}

lspine_mode to_c(lspine::PrecisionMode m) {
  switch (m) {
    case lspine::PrecisionMode::Int2: return LSPINE_MODE_INT2;
    case lspine::PrecisionMode::Int4: return LSPINE_MODE_INT4;
    case lspine::PrecisionMode::Int8: return LSPINE_MODE_INT8;
  }
  return LSPINE_MODE_INT8;
}

lspine::ArrayConfig to_core(const lspine_array_config* cfg) {
  lspine::ArrayConfig out;
  if (cfg) out = {cfg->rows, cfg->cols, cfg->fifo_capacity};
  out.validate();
  return out;
}

lspine::EncoderConfig to_core(const lspine_encoder_config& cfg) {
  return {cfg.kind == LSPINE_ENCODER_STOCHASTIC ? lspine::EncoderKind::StochasticRate
                                                : lspine::EncoderKind::DeterministicRate,
          cfg.seed};
}

lspine::CostParams to_core(const lspine_cost_params* p) {
  lspine::CostParams out;
  if (p) out = {p->t_op, p->p_sys, p->p_nce};
  return out;
}

lspine_cost_report to_c(const lspine::CostReport& r) {
  return {to_c(r.mode), r.compute_cycles, r.stall_cycles, r.total_cycles, r.latency_s, r.energy_j};
}

lspine_footprint to_c(const lspine::FootprintReport& r) {
  return {r.bits, r.params, r.weight_bits, r.state_bits, r.total_bytes, r.ratio_vs_fp32};
}

lspine_result make_result(lspine::InferenceResult r) {
  lspine_result out{std::move(r), {}};
  out.events.reserve(out.result.trace.size());
  for (const auto& e : out.result.trace) out.events.push_back({e.timestep, e.layer, e.neuron_id});
  return out;
}

std::vector<std::vector<double>> rows_of(const double* features, std::size_t samples, std::size_t dim) {
  std::vector<std::vector<double>> rows(samples);
  for (std::size_t k = 0; k < samples; ++k) rows[k].assign(features + k * dim, features + (k + 1) * dim);
  return rows;
}

}  // namespace

extern "C" {

const char* lspine_version(void) { return "0.1.0"; }

const char* lspine_last_error(void) { return g_last_error.c_str(); }

void lspine_string_free(char* s) { std::free(s); }

const char* lspine_mode_name(lspine_mode mode) {
  switch (mode) {
    case LSPINE_MODE_INT2: return "int2";
    case LSPINE_MODE_INT4: return "int4";
    case LSPINE_MODE_INT8: return "int8";
  }
  return "unknown";
}

lspine_status lspine_mode_parse(const char* name, lspine_mode* out) {
  if (!name) return null_arg("name");
  if (!out) return null_arg("out");
  auto m = lspine::parse_mode(name);
  if (!m) return fail(LSPINE_ERR_INVALID_PARAM, std::string("unknown mode \"") + name + "\"");
  *out = to_c(*m);
  return LSPINE_OK;
}

lspine_status lspine_mode_from_bits(int bits, lspine_mode* out) {
  if (!out) return null_arg("out");
  auto m = lspine::mode_for_bits(bits);
  if (!m) return fail(LSPINE_ERR_INVALID_PARAM, "InvalidBits: bits must be 2, 4 or 8, got " + std::to_string(bits));
  *out = to_c(*m);
  return LSPINE_OK;
}

void lspine_array_config_default(lspine_array_config* out) {
  if (!out) return;
  const lspine::ArrayConfig d;
  *out = {d.rows, d.cols, d.fifo_capacity};
}

void lspine_cost_params_default(lspine_cost_params* out) {
  if (!out) return;
  const lspine::CostParams d;
  *out = {d.t_op, d.p_sys, d.p_nce};
}

// ---- packed arithmetic ----

lspine_lane_geometry lspine_lanes_of(lspine_mode mode) {
  lspine_lane_geometry out{0, 0, 0};
  guarded([&] {
    const auto g = lspine::lanes_of(to_core(mode));
    out = {g.lane_count, g.lane_width, g.value_width};
  });
  return out;
}

lspine_status lspine_pack(lspine_mode mode, const int32_t* values, size_t count, uint32_t* out_raw) {
  if (!values && count) return null_arg("values");
  if (!out_raw) return null_arg("out_raw");
  return guarded([&] { *out_raw = lspine::pack({values, count}, to_core(mode)).raw(); });
}

lspine_status lspine_unpack(lspine_mode mode, uint32_t raw, int32_t* out_values, size_t capacity) {
  if (!out_values) return null_arg("out_values");
  return guarded([&] {
    const auto lanes = lspine::unpack({raw, to_core(mode)});
    if (capacity < lanes.size()) {
      throw lspine::Error(lspine::ErrorCode::LengthMismatch, "output buffer holds fewer than lane_count values");
    }
    std::copy(lanes.begin(), lanes.end(), out_values);
  });
}

uint32_t lspine_packed_add(lspine_mode mode, uint32_t a, uint32_t b) {
  uint32_t out = 0;
  guarded([&] {
    const auto m = to_core(mode);
    out = lspine::packed_add({a, m}, {b, m}).raw();
  });
  return out;
}

lspine_status lspine_spike_gated_accumulate(lspine_mode mode, uint32_t acc, uint32_t weights, uint32_t spike_bits,
                                            uint32_t* out_raw) {
  if (!out_raw) return null_arg("out_raw");
  return guarded([&] {
    const auto m = to_core(mode);
    *out_raw = lspine::spike_gated_accumulate({acc, m}, {weights, m}, spike_bits).raw();
  });
}

lspine_status lspine_packed_shift_right_arith(lspine_mode mode, uint32_t raw, int k, uint32_t* out_raw) {
  if (!out_raw) return null_arg("out_raw");
  return guarded([&] { *out_raw = lspine::packed_shift_right_arith({raw, to_core(mode)}, k).raw(); });
}

lspine_status lspine_packed_leak(lspine_mode mode, uint32_t raw, int k, uint32_t* out_raw) {
  if (!out_raw) return null_arg("out_raw");
  return guarded([&] { *out_raw = lspine::packed_leak({raw, to_core(mode)}, k).raw(); });
}

// ---- float models ----

lspine_status lspine_float_model_parse(const char* json_text, lspine_float_model** out) {
  if (!json_text) return null_arg("json_text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded_load([&] {
    auto model = lspine::float_model_from_json(lspine::parse_json_text(json_text));
    *out = new lspine_float_model{std::move(model)};
  });
}

lspine_status lspine_float_model_load(const char* path, lspine_float_model** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded_load([&] {
    auto model = lspine::float_model_from_json(lspine::parse_json_text(lspine::read_text_file(path)));
    *out = new lspine_float_model{std::move(model)};
  });
}

lspine_status lspine_float_model_to_json(const lspine_float_model* model, char** out_json) {
  if (!model) return null_arg("model");
  if (!out_json) return null_arg("out_json");
  return guarded([&] { *out_json = dup_string(lspine::to_json(model->model).dump(2) + "\n"); });
}

void lspine_float_model_free(lspine_float_model* model) { delete model; }

lspine_status lspine_train_reference(const double* features, const size_t* labels, size_t samples, size_t dim,
                                     size_t classes, const size_t* hidden, size_t hidden_layers,
                                     uint32_t timesteps, size_t epochs, uint64_t seed, lspine_float_model** out) {
  if (!out) return null_arg("out");
  if (samples && (!features || !labels)) return null_arg("features/labels");
  if (hidden_layers && !hidden) return null_arg("hidden");
  *out = nullptr;
  return guarded([&] {
    lspine::Dataset data;
    data.dim = dim;
    data.classes = classes;
    data.x = rows_of(features, samples, dim);
    data.y.assign(labels, labels + samples);
    for (auto y : data.y) {
      if (y >= classes) throw lspine::Error(lspine::ErrorCode::InvalidConfig, "label outside [0, classes)");
    }
    lspine::TrainConfig cfg;
    cfg.hidden.assign(hidden, hidden + hidden_layers);
    cfg.timesteps = timesteps;
    cfg.epochs = epochs;
    cfg.seed = seed;
    *out = new lspine_float_model{lspine::train_reference_model(data, cfg)};
  });
}

lspine_status lspine_make_blobs(size_t samples, size_t dim, size_t classes, double spread, uint64_t seed,
                                double* out_features, size_t* out_labels) {
  if (samples && (!out_features || !out_labels)) return null_arg("out_features/out_labels");
  return guarded([&] {
    const auto d = lspine::make_blobs(samples, dim, classes, spread, seed);
    for (std::size_t k = 0; k < samples; ++k) {
      std::copy(d.x[k].begin(), d.x[k].end(), out_features + k * dim);
      out_labels[k] = d.y[k];
    }
  });
}

// ---- quantized models ----

lspine_status lspine_model_parse(const char* json_text, lspine_model** out) {
  if (!json_text) return null_arg("json_text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded_load([&] {
    auto model = lspine::quantized_model_from_json(lspine::parse_json_text(json_text));
    *out = new lspine_model{std::move(model)};
  });
}

lspine_status lspine_model_load(const char* path, lspine_model** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded_load([&] {
    auto model = lspine::quantized_model_from_json(lspine::parse_json_text(lspine::read_text_file(path)));
    *out = new lspine_model{std::move(model)};
  });
}

lspine_status lspine_model_load_any(const char* path, int bits, lspine_model** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  if (bits != 0 && !lspine::mode_for_bits(bits)) {
    return fail(LSPINE_ERR_INVALID_PARAM, "InvalidBits: bits must be 0, 2, 4 or 8, got " + std::to_string(bits));
  }
  lspine::json doc;
  bool is_float = false;
  lspine_status s = guarded_load([&] {
    doc = lspine::parse_json_text(lspine::read_text_file(path));
    is_float = lspine::is_float_model(doc);
  });
  if (s != LSPINE_OK) return s;
  if (is_float) {
    lspine::FloatModel fm;
    s = guarded_load([&] { fm = lspine::float_model_from_json(doc); });
    if (s != LSPINE_OK) return s;
    return guarded([&] { *out = new lspine_model{lspine::quantize_model(fm, bits == 0 ? 8 : bits)}; });
  }
  lspine::QuantizedModel qm;
  s = guarded_load([&] { qm = lspine::quantized_model_from_json(doc); });
  if (s != LSPINE_OK) return s;
  return guarded([&] { *out = new lspine_model{bits == 0 ? std::move(qm) : lspine::requantize(qm, bits)}; });
}

lspine_status lspine_model_save(const lspine_model* model, const char* path) {
  if (!model) return null_arg("model");
  if (!path) return null_arg("path");
  return guarded([&] { lspine::write_text_file(path, lspine::to_json(model->model).dump(2) + "\n"); });
}

lspine_status lspine_model_to_json(const lspine_model* model, char** out_json) {
  if (!model) return null_arg("model");
  if (!out_json) return null_arg("out_json");
  return guarded([&] { *out_json = dup_string(lspine::to_json(model->model).dump(2) + "\n"); });
}

void lspine_model_free(lspine_model* model) { delete model; }

lspine_status lspine_quantize(const lspine_float_model* model, int bits, lspine_model** out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new lspine_model{lspine::quantize_model(model->model, bits)}; });
}

lspine_status lspine_requantize(const lspine_model* model, int bits, lspine_model** out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new lspine_model{lspine::requantize(model->model, bits)}; });
}

size_t lspine_model_layer_count(const lspine_model* model) { return model ? model->model.layers.size() : 0; }
size_t lspine_model_input_dim(const lspine_model* model) { return model ? model->model.input_dim() : 0; }
size_t lspine_model_output_dim(const lspine_model* model) { return model ? model->model.output_dim() : 0; }
uint32_t lspine_model_timesteps(const lspine_model* model) { return model ? model->model.timesteps : 0; }

lspine_status lspine_model_set_timesteps(lspine_model* model, uint32_t timesteps) {
  if (!model) return null_arg("model");
  if (timesteps < 1) return fail(LSPINE_ERR_INVALID_PARAM, "timesteps must be >= 1");
  model->model.timesteps = timesteps;
  return LSPINE_OK;
}

lspine_encoder_config lspine_model_encoder(const lspine_model* model) {
  if (!model) return {LSPINE_ENCODER_DETERMINISTIC, 0};
  const auto& e = model->model.encoder;
  return {e.kind == lspine::EncoderKind::StochasticRate ? LSPINE_ENCODER_STOCHASTIC : LSPINE_ENCODER_DETERMINISTIC,
          e.seed};
}

void lspine_model_set_encoder(lspine_model* model, lspine_encoder_config cfg) {
  if (model) model->model.encoder = to_core(cfg);
}

lspine_status lspine_model_set_mode(lspine_model* model, lspine_mode mode) {
  if (!model) return null_arg("model");
  return guarded([&] {
    lspine::QuantizedModel copy = model->model;
    for (auto& l : copy.layers) l.mode = to_core(mode);
    copy.validate();
    model->model = std::move(copy);
  });
}

lspine_status lspine_model_footprint(const lspine_model* model, int bits, int include_state, lspine_footprint* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] { *out = to_c(lspine::footprint(model->model, bits, include_state != 0)); });
}

lspine_status lspine_float_model_footprint(const lspine_float_model* model, int bits, int include_state,
                                           lspine_footprint* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] { *out = to_c(lspine::footprint(model->model, bits, include_state != 0)); });
}

lspine_status lspine_footprint_to_json(const lspine_footprint* r, char** out_json) {
  if (!r) return null_arg("report");
  if (!out_json) return null_arg("out_json");
  return guarded([&] {
    const lspine::FootprintReport core{r->bits, r->params, 0, r->weight_bits, r->state_bits, r->total_bytes,
                                       r->ratio_vs_fp32};
    *out_json = dup_string(lspine::to_json(core).dump());
  });
}

// ---- spike trains ----

lspine_status lspine_encode(const lspine_encoder_config* cfg, const double* x, size_t n, uint32_t timesteps,
                            lspine_spike_train** out) {
  if (!cfg) return null_arg("cfg");
  if (!x && n) return null_arg("x");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new lspine_spike_train{lspine::encode(to_core(*cfg), {x, n}, timesteps)}; });
}

lspine_status lspine_spike_train_read(const char* path, lspine_spike_train** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    std::ifstream in(path);
    if (!in) throw lspine::Error(lspine::ErrorCode::Io, std::string("cannot open ") + path);
    *out = new lspine_spike_train{lspine::read_spike_train(in)};
  });
}

lspine_status lspine_spike_train_write(const lspine_spike_train* train, const char* path) {
  if (!train) return null_arg("train");
  if (!path) return null_arg("path");
  return guarded([&] {
    std::ostringstream os;
    lspine::write_spike_train(os, train->train);
    lspine::write_text_file(path, os.str());
  });
}

size_t lspine_spike_train_timesteps(const lspine_spike_train* train) { return train ? train->train.timesteps() : 0; }
size_t lspine_spike_train_width(const lspine_spike_train* train) { return train ? train->train.width() : 0; }

int lspine_spike_train_at(const lspine_spike_train* train, size_t t, size_t i) {
  if (!train || t >= train->train.timesteps() || i >= train->train.width()) return -1;
  return train->train.at(t, i);
}

void lspine_spike_train_free(lspine_spike_train* train) { delete train; }

// ---- inference ----

lspine_status lspine_infer_train(const lspine_model* model, const lspine_array_config* cfg,
                                 const lspine_spike_train* train, lspine_result** out) {
  if (!model) return null_arg("model");
  if (!train) return null_arg("train");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    lspine::Engine engine(model->model, to_core(cfg));
    *out = new lspine_result(make_result(engine.run_inference(train->train)));
  });
}

lspine_status lspine_infer(const lspine_model* model, const lspine_array_config* cfg, const double* x, size_t n,
                           lspine_result** out) {
  if (!model) return null_arg("model");
  if (!x && n) return null_arg("x");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    if (n != model->model.input_dim()) {
      throw lspine::Error(lspine::ErrorCode::ShapeMismatch, "sample has " + std::to_string(n) +
                                                                " features, model expects " +
                                                                std::to_string(model->model.input_dim()));
    }
    lspine::Engine engine(model->model, to_core(cfg));
    const auto train = lspine::encode(model->model.encoder, {x, n}, model->model.timesteps);
    *out = new lspine_result(make_result(engine.run_inference(train)));
  });
}

size_t lspine_result_predicted(const lspine_result* r) { return r ? r->result.predicted : 0; }
size_t lspine_result_count_len(const lspine_result* r) { return r ? r->result.counts.size() : 0; }
const uint32_t* lspine_result_counts(const lspine_result* r) { return r ? r->result.counts.data() : nullptr; }
size_t lspine_result_trace_len(const lspine_result* r) { return r ? r->events.size() : 0; }
const lspine_spike_event* lspine_result_trace(const lspine_result* r) { return r ? r->events.data() : nullptr; }
size_t lspine_result_fifo_len(const lspine_result* r) { return r ? r->result.fifo.size() : 0; }

lspine_fifo_stats lspine_result_fifo(const lspine_result* r, size_t layer) {
  if (!r || layer >= r->result.fifo.size()) return {0, 0, 0, 0, 0};
  const auto& f = r->result.fifo[layer];
  return {f.pushes, f.pops, f.push_stalls, f.pop_stalls, f.peak_occupancy};
}

uint64_t lspine_result_stall_cycles(const lspine_result* r) { return r ? r->result.stall_cycles() : 0; }
uint64_t lspine_result_packed_ops(const lspine_result* r) { return r ? r->result.packed_ops : 0; }

lspine_status lspine_result_write_trace(const lspine_result* r, const char* path) {
  if (!r) return null_arg("result");
  if (!path) return null_arg("path");
  return guarded([&] {
    std::ostringstream os;
    lspine::write_trace_csv(os, r->result.trace);
    lspine::write_text_file(path, os.str());
  });
}

void lspine_result_free(lspine_result* r) { delete r; }

lspine_status lspine_infer_batch(const lspine_model* model, const lspine_array_config* cfg, const double* features,
                                 size_t samples, size_t dim, size_t workers, lspine_batch** out) {
  if (!model) return null_arg("model");
  if (!features && samples) return null_arg("features");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    if (samples && dim != model->model.input_dim()) {
      throw lspine::Error(lspine::ErrorCode::ShapeMismatch, "samples have " + std::to_string(dim) +
                                                                " features, model expects " +
                                                                std::to_string(model->model.input_dim()));
    }
    const auto rows = rows_of(features, samples, dim);
    auto results = lspine::run_batch(model->model, to_core(cfg), rows, workers);
    auto batch = std::make_unique<lspine_batch>();
    batch->results.reserve(results.size());
    for (auto& r : results) batch->results.push_back(make_result(std::move(r)));
    *out = batch.release();
  });
}

size_t lspine_batch_size(const lspine_batch* b) { return b ? b->results.size() : 0; }

const lspine_result* lspine_batch_result(const lspine_batch* b, size_t index) {
  if (!b || index >= b->results.size()) return nullptr;
  return &b->results[index];
}

uint64_t lspine_batch_stall_cycles(const lspine_batch* b) {
  if (!b) return 0;
  uint64_t total = 0;
  for (const auto& r : b->results) total += r.result.stall_cycles();
  return total;
}

void lspine_batch_free(lspine_batch* b) { delete b; }

// ---- cost model ----

lspine_status lspine_estimate(const lspine_model* model, const lspine_array_config* cfg, const lspine_result* result,
                              const lspine_cost_params* params, lspine_cost_report* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto core_cfg = to_core(cfg);
    const auto p = to_core(params);
    *out = to_c(result ? lspine::estimate(model->model, core_cfg, std::span<const lspine::FifoStats>(result->result.fifo), p)
                       : lspine::estimate(model->model, core_cfg, std::span<const std::uint64_t>{}, p));
  });
}

lspine_status lspine_estimate_batch(const lspine_model* model, const lspine_array_config* cfg,
                                    const lspine_batch* batch, const lspine_cost_params* params,
                                    lspine_cost_report* out, char** out_json) {
  if (!model) return null_arg("model");
  if (!batch) return null_arg("batch");
  if (!out) return null_arg("out");
  return guarded([&] {
    std::vector<lspine::InferenceResult> results;
    results.reserve(batch->results.size());
    for (const auto& r : batch->results) results.push_back(r.result);
    const auto report = lspine::estimate_batch(model->model, to_core(cfg), results, to_core(params));
    *out = to_c(report);
    if (out_json) {
      auto doc = lspine::to_json(report);
      doc["samples"] = results.size();
      *out_json = dup_string(doc.dump(2) + "\n");
    }
  });
}

lspine_status lspine_estimate_as(const lspine_model* model, lspine_mode mode, const lspine_array_config* cfg,
                                 uint64_t stall_cycles, const lspine_cost_params* params, lspine_cost_report* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = to_c(lspine::estimate_as(model->model, to_core(mode), to_core(cfg), stall_cycles, to_core(params)));
  });
}

lspine_status lspine_cost_csv(const lspine_cost_report* reports, size_t count, int header, char** out_csv) {
  if (!reports && count) return null_arg("reports");
  if (!out_csv) return null_arg("out_csv");
  return guarded([&] {
    std::ostringstream os;
    if (header) lspine::write_cost_csv_header(os);
    for (std::size_t k = 0; k < count; ++k) {
      lspine::CostReport r;
      r.mode = to_core(reports[k].mode);
      r.compute_cycles = reports[k].compute_cycles;
      r.stall_cycles = reports[k].stall_cycles;
      r.total_cycles = reports[k].total_cycles;
      r.latency_s = reports[k].latency_s;
      r.energy_j = reports[k].energy_j;
      lspine::write_cost_csv_row(os, r);
    }
    *out_csv = dup_string(os.str());
  });
}

}  // extern "C"
