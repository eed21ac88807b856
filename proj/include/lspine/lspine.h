/*
 * lspine: C interface to the low-precision SIMD spiking compute engine
 * simulator.
 *
 * All objects are opaque handles created by a *_load / *_create style call
 * and released with the matching *_free. Every fallible call returns an
 * lspine_status; on failure the thread-local message from
 * lspine_last_error() describes the cause. Strings returned through char**
 * out-parameters are owned by the caller and released with
 * lspine_string_free().
 */
#ifndef LSPINE_LSPINE_H
#define LSPINE_LSPINE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LSPINE_BUILDING_LIBRARY)
#    define LSPINE_API __declspec(dllexport)
#  else
#    define LSPINE_API __declspec(dllimport)
#  endif
#else
#  define LSPINE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status values double as CLI exit codes. */
typedef enum lspine_status {
  LSPINE_OK = 0,
  LSPINE_ERR_INTERNAL = 1,
  LSPINE_ERR_PARSE = 2,
  LSPINE_ERR_INVALID_PARAM = 3,
  LSPINE_ERR_SHAPE = 4,
  LSPINE_ERR_IO = 5
} lspine_status;

typedef enum lspine_mode {
  LSPINE_MODE_INT2 = 0,
  LSPINE_MODE_INT4 = 1,
  LSPINE_MODE_INT8 = 2
} lspine_mode;

typedef enum lspine_encoder_kind {
  LSPINE_ENCODER_DETERMINISTIC = 0,
  LSPINE_ENCODER_STOCHASTIC = 1
} lspine_encoder_kind;

typedef struct lspine_array_config {
  size_t rows;
  size_t cols;
  size_t fifo_capacity;
} lspine_array_config;

typedef struct lspine_encoder_config {
  lspine_encoder_kind kind;
  uint64_t seed;
} lspine_encoder_config;

typedef struct lspine_lane_geometry {
  int lane_count;
  int lane_width;
  int value_width;
} lspine_lane_geometry;

typedef struct lspine_footprint {
  int bits;
  uint64_t params;
  uint64_t weight_bits;
  uint64_t state_bits;
  uint64_t total_bytes;
  double ratio_vs_fp32;
} lspine_footprint;

typedef struct lspine_cost_params {
  double t_op;  /* seconds per packed op */
  double p_sys; /* system power, W */
  double p_nce; /* per-NCE power, W */
} lspine_cost_params;

typedef struct lspine_cost_report {
  lspine_mode mode;
  uint64_t compute_cycles;
  uint64_t stall_cycles;
  uint64_t total_cycles;
  double latency_s;
  double energy_j;
} lspine_cost_report;

typedef struct lspine_fifo_stats {
  uint64_t pushes;
  uint64_t pops;
  uint64_t push_stalls;
  uint64_t pop_stalls;
  size_t peak_occupancy;
} lspine_fifo_stats;

typedef struct lspine_spike_event {
  uint32_t timestep;
  uint32_t layer;
  uint32_t neuron_id;
} lspine_spike_event;

typedef struct lspine_float_model lspine_float_model;
typedef struct lspine_model lspine_model;
typedef struct lspine_spike_train lspine_spike_train;
typedef struct lspine_result lspine_result;
typedef struct lspine_batch lspine_batch;

/* ---- library ---------------------------------------------------------- */

LSPINE_API const char* lspine_version(void);
LSPINE_API const char* lspine_last_error(void);
LSPINE_API void lspine_string_free(char* s);
LSPINE_API const char* lspine_mode_name(lspine_mode mode);
LSPINE_API lspine_status lspine_mode_parse(const char* name, lspine_mode* out);
LSPINE_API lspine_status lspine_mode_from_bits(int bits, lspine_mode* out);
LSPINE_API void lspine_array_config_default(lspine_array_config* out);
LSPINE_API void lspine_cost_params_default(lspine_cost_params* out);

/* ---- packed arithmetic ------------------------------------------------ */

LSPINE_API lspine_lane_geometry lspine_lanes_of(lspine_mode mode);
/* `values` holds exactly lane_count entries. */
LSPINE_API lspine_status lspine_pack(lspine_mode mode, const int32_t* values, size_t count, uint32_t* out_raw);
/* `out_values` has room for lane_count entries. */
LSPINE_API lspine_status lspine_unpack(lspine_mode mode, uint32_t raw, int32_t* out_values, size_t capacity);
LSPINE_API uint32_t lspine_packed_add(lspine_mode mode, uint32_t a, uint32_t b);
LSPINE_API lspine_status lspine_spike_gated_accumulate(lspine_mode mode, uint32_t acc, uint32_t weights,
                                                       uint32_t spike_bits, uint32_t* out_raw);
LSPINE_API lspine_status lspine_packed_shift_right_arith(lspine_mode mode, uint32_t raw, int k, uint32_t* out_raw);
LSPINE_API lspine_status lspine_packed_leak(lspine_mode mode, uint32_t raw, int k, uint32_t* out_raw);

/* ---- float models ----------------------------------------------------- */

LSPINE_API lspine_status lspine_float_model_load(const char* path, lspine_float_model** out);
LSPINE_API lspine_status lspine_float_model_parse(const char* json_text, lspine_float_model** out);
LSPINE_API lspine_status lspine_float_model_to_json(const lspine_float_model* model, char** out_json);
LSPINE_API void lspine_float_model_free(lspine_float_model* model);

/* Trains the reference SNN on a row-major (samples x dim) feature matrix. */
LSPINE_API lspine_status lspine_train_reference(const double* features, const size_t* labels, size_t samples,
                                                size_t dim, size_t classes, const size_t* hidden,
                                                size_t hidden_layers, uint32_t timesteps, size_t epochs,
                                                uint64_t seed, lspine_float_model** out);

/* Synthetic Gaussian-blob dataset; caller provides samples*dim features and
 * samples labels. */
LSPINE_API lspine_status lspine_make_blobs(size_t samples, size_t dim, size_t classes, double spread, uint64_t seed,
                                           double* out_features, size_t* out_labels);

/* ---- quantized models ------------------------------------------------- */

LSPINE_API lspine_status lspine_model_load(const char* path, lspine_model** out);
LSPINE_API lspine_status lspine_model_parse(const char* json_text, lspine_model** out);
LSPINE_API lspine_status lspine_model_save(const lspine_model* model, const char* path);
LSPINE_API lspine_status lspine_model_to_json(const lspine_model* model, char** out_json);
LSPINE_API void lspine_model_free(lspine_model* model);

LSPINE_API lspine_status lspine_quantize(const lspine_float_model* model, int bits, lspine_model** out);
LSPINE_API lspine_status lspine_requantize(const lspine_model* model, int bits, lspine_model** out);
/* Loads a model file holding either float or integer weights; float models
 * are quantized at `bits`, integer models are requantized when `bits` is
 * 2/4/8 and kept unchanged when `bits` is 0. */
LSPINE_API lspine_status lspine_model_load_any(const char* path, int bits, lspine_model** out);

LSPINE_API size_t lspine_model_layer_count(const lspine_model* model);
LSPINE_API size_t lspine_model_input_dim(const lspine_model* model);
LSPINE_API size_t lspine_model_output_dim(const lspine_model* model);
LSPINE_API uint32_t lspine_model_timesteps(const lspine_model* model);
LSPINE_API lspine_status lspine_model_set_timesteps(lspine_model* model, uint32_t timesteps);
LSPINE_API lspine_encoder_config lspine_model_encoder(const lspine_model* model);
LSPINE_API void lspine_model_set_encoder(lspine_model* model, lspine_encoder_config cfg);
/* Relabels every layer's precision; fails when a weight does not fit. */
LSPINE_API lspine_status lspine_model_set_mode(lspine_model* model, lspine_mode mode);
LSPINE_API lspine_status lspine_model_footprint(const lspine_model* model, int bits, int include_state,
                                                lspine_footprint* out);
LSPINE_API lspine_status lspine_float_model_footprint(const lspine_float_model* model, int bits, int include_state,
                                                      lspine_footprint* out);
LSPINE_API lspine_status lspine_footprint_to_json(const lspine_footprint* report, char** out_json);

/* ---- spike trains ----------------------------------------------------- */

LSPINE_API lspine_status lspine_encode(const lspine_encoder_config* cfg, const double* x, size_t n,
                                       uint32_t timesteps, lspine_spike_train** out);
LSPINE_API lspine_status lspine_spike_train_read(const char* path, lspine_spike_train** out);
LSPINE_API lspine_status lspine_spike_train_write(const lspine_spike_train* train, const char* path);
LSPINE_API size_t lspine_spike_train_timesteps(const lspine_spike_train* train);
LSPINE_API size_t lspine_spike_train_width(const lspine_spike_train* train);
LSPINE_API int lspine_spike_train_at(const lspine_spike_train* train, size_t t, size_t i);
LSPINE_API void lspine_spike_train_free(lspine_spike_train* train);

/* ---- inference -------------------------------------------------------- */

/* Encodes `x` with the model's encoder and runs one inference. */
LSPINE_API lspine_status lspine_infer(const lspine_model* model, const lspine_array_config* cfg, const double* x,
                                      size_t n, lspine_result** out);
LSPINE_API lspine_status lspine_infer_train(const lspine_model* model, const lspine_array_config* cfg,
                                            const lspine_spike_train* train, lspine_result** out);
LSPINE_API size_t lspine_result_predicted(const lspine_result* result);
LSPINE_API size_t lspine_result_count_len(const lspine_result* result);
LSPINE_API const uint32_t* lspine_result_counts(const lspine_result* result);
LSPINE_API size_t lspine_result_trace_len(const lspine_result* result);
LSPINE_API const lspine_spike_event* lspine_result_trace(const lspine_result* result);
LSPINE_API size_t lspine_result_fifo_len(const lspine_result* result);
LSPINE_API lspine_fifo_stats lspine_result_fifo(const lspine_result* result, size_t layer);
LSPINE_API uint64_t lspine_result_stall_cycles(const lspine_result* result);
LSPINE_API uint64_t lspine_result_packed_ops(const lspine_result* result);
/* Writes "timestep,layer,neuron_id" lines. */
LSPINE_API lspine_status lspine_result_write_trace(const lspine_result* result, const char* path);
LSPINE_API void lspine_result_free(lspine_result* result);

/* Row-major (samples x dim) features. Sample k uses encoder seed + k.
 * Results keep input order for every worker count. */
LSPINE_API lspine_status lspine_infer_batch(const lspine_model* model, const lspine_array_config* cfg,
                                            const double* features, size_t samples, size_t dim, size_t workers,
                                            lspine_batch** out);
LSPINE_API size_t lspine_batch_size(const lspine_batch* batch);
LSPINE_API const lspine_result* lspine_batch_result(const lspine_batch* batch, size_t index);
LSPINE_API uint64_t lspine_batch_stall_cycles(const lspine_batch* batch);
LSPINE_API void lspine_batch_free(lspine_batch* batch);

/* ---- cost model ------------------------------------------------------- */

/* `params` may be NULL for the calibrated defaults. Stall cycles come from
 * `result` when given, else zero. */
LSPINE_API lspine_status lspine_estimate(const lspine_model* model, const lspine_array_config* cfg,
                                         const lspine_result* result, const lspine_cost_params* params,
                                         lspine_cost_report* out);
/* Per-inference compute cycles times batch size; stalls summed over the batch. */
LSPINE_API lspine_status lspine_estimate_batch(const lspine_model* model, const lspine_array_config* cfg,
                                               const lspine_batch* batch, const lspine_cost_params* params,
                                               lspine_cost_report* out, char** out_json);
/* Every layer forced to `mode`, `stall_cycles` injected. */
LSPINE_API lspine_status lspine_estimate_as(const lspine_model* model, lspine_mode mode,
                                            const lspine_array_config* cfg, uint64_t stall_cycles,
                                            const lspine_cost_params* params, lspine_cost_report* out);
/* Writes the CSV header (when `header` is nonzero) and one row per report
 * into a newly allocated string. */
LSPINE_API lspine_status lspine_cost_csv(const lspine_cost_report* reports, size_t count, int header,
                                         char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* LSPINE_LSPINE_H */
