#pragma once

// JSON and CSV forms of models, configs and reports.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "array.hpp"
#include "costmodel.hpp"
#include "json.hpp"
#include "quant.hpp"

namespace lspine {

using json = nlohmann::json;

// Throws Error(Parse) on malformed documents; semantic checks run
// validate() and keep its error code.
QuantizedModel quantized_model_from_json(const json& doc);
FloatModel float_model_from_json(const json& doc);
ArrayConfig array_config_from_json(const json& doc);
EncoderConfig encoder_config_from_json(const json& doc);

json to_json(const QuantizedModel& model);
json to_json(const FloatModel& model);
json to_json(const ArrayConfig& cfg);
json to_json(const EncoderConfig& cfg);
json to_json(const CostReport& report);
json to_json(const FootprintReport& report);

// True when any layer carries "weights_f32".
bool is_float_model(const json& doc);

json parse_json_text(const std::string& text);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// One sample per line, comma separated. Blank lines and '#' comments skipped.
std::vector<std::vector<double>> read_feature_csv(std::istream& is);

// bits,params,weight_bits,state_bits,total_bytes,ratio_vs_fp32
void write_footprint_csv(std::ostream& os, std::span<const FootprintReport> reports);

// timestep,layer,neuron_id
void write_trace_csv(std::ostream& os, std::span<const SpikeEvent> events);

}  // namespace lspine
