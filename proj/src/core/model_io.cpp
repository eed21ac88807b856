#include "model_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "error.hpp"

namespace lspine {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) parse_fail(where + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where + " is missing \"" + key + "\"");
  return *it;
}

template <typename T>
T get_as(const json& v, const std::string& where) {
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    parse_fail(where + ": " + e.what());
  }
}

std::size_t get_dim(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 1) parse_fail(where + "." + key + " must be a positive integer");
  return v.get<std::size_t>();
}

template <typename T>
std::vector<T> matrix(const json& rows, std::size_t out_dim, std::size_t in_dim, const std::string& where) {
  if (!rows.is_array() || rows.size() != out_dim) {
    parse_fail(where + " must be an array of " + std::to_string(out_dim) + " rows");
  }
  std::vector<T> flat;
  flat.reserve(out_dim * in_dim);
  for (std::size_t j = 0; j < out_dim; ++j) {
    const json& r = rows[j];
    if (!r.is_array() || r.size() != in_dim) {
      parse_fail(where + " row " + std::to_string(j) + " must hold " + std::to_string(in_dim) + " values");
    }
    for (const json& v : r) {
      if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) parse_fail(where + " row " + std::to_string(j) + " holds a non-integer weight");
        const long long q = v.get<long long>();
        if (q < std::numeric_limits<T>::min() || q > std::numeric_limits<T>::max()) {
          parse_fail(where + " row " + std::to_string(j) + " weight out of integer range");
        }
        flat.push_back(static_cast<T>(q));
      } else {
        if (!v.is_number()) parse_fail(where + " row " + std::to_string(j) + " holds a non-numeric weight");
        flat.push_back(v.get<T>());
      }
    }
  }
  return flat;
}

template <typename T>
json rows_of(const std::vector<T>& flat, std::size_t out_dim, std::size_t in_dim) {
  json rows = json::array();
  for (std::size_t j = 0; j < out_dim; ++j) {
    rows.push_back(std::vector<T>(flat.begin() + static_cast<std::ptrdiff_t>(j * in_dim),
                                  flat.begin() + static_cast<std::ptrdiff_t>((j + 1) * in_dim)));
  }
  return rows;
}

ResetMode reset_of(const json& layer, const std::string& where) {
  if (!layer.contains("reset")) return ResetMode::HardZero;
  const auto name = get_as<std::string>(layer["reset"], where + ".reset");
  auto r = parse_reset(name);
  if (!r) parse_fail(where + ".reset must be \"hard\" or \"subtract\", got \"" + name + "\"");
  return *r;
}

int leak_of(const json& layer, const std::string& where) {
  if (!layer.contains("leak_shift")) return kDefaultLeakShift;
  return get_as<int>(layer["leak_shift"], where + ".leak_shift");
}

std::uint32_t timesteps_of(const json& doc) {
  const json& v = field(doc, "timesteps", "model");
  if (!v.is_number_integer() || v.get<long long>() < 1) parse_fail("model.timesteps must be an integer >= 1");
  return v.get<std::uint32_t>();
}

const json& layers_of(const json& doc) {
  const json& layers = field(doc, "layers", "model");
  if (!layers.is_array()) parse_fail("model.layers must be an array");
  return layers;
}

}  // namespace

EncoderConfig encoder_config_from_json(const json& doc) {
  EncoderConfig cfg;
  if (!doc.is_object()) parse_fail("encoder must be an object");
  if (doc.contains("kind")) {
    const auto name = get_as<std::string>(doc["kind"], "encoder.kind");
    auto kind = parse_encoder(name);
    if (!kind) parse_fail("encoder.kind must be \"det\" or \"stoch\", got \"" + name + "\"");
    cfg.kind = *kind;
  }
  if (doc.contains("seed")) cfg.seed = get_as<std::uint64_t>(doc["seed"], "encoder.seed");
  return cfg;
}

QuantizedModel quantized_model_from_json(const json& doc) {
  QuantizedModel model;
  model.timesteps = timesteps_of(doc);
  if (doc.contains("encoder")) model.encoder = encoder_config_from_json(doc["encoder"]);
  const json& layers = layers_of(doc);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const json& jl = layers[l];
    const std::string where = "layers[" + std::to_string(l) + "]";
    LayerSpec spec;
    spec.in_dim = get_dim(jl, "in", where);
    spec.out_dim = get_dim(jl, "out", where);
    const auto mode_name = get_as<std::string>(field(jl, "mode", where), where + ".mode");
    auto mode = parse_mode(mode_name);
    if (!mode) parse_fail(where + ".mode must be int2, int4 or int8, got \"" + mode_name + "\"");
    spec.mode = *mode;
    spec.scale = get_as<double>(field(jl, "scale", where), where + ".scale");
    spec.lif.threshold = get_as<std::int32_t>(field(jl, "threshold", where), where + ".threshold");
    spec.lif.leak_shift = leak_of(jl, where);
    spec.lif.reset = reset_of(jl, where);
    if (jl.contains("v_clamp")) spec.lif.v_clamp = get_as<std::int32_t>(jl["v_clamp"], where + ".v_clamp");
    spec.weights = matrix<std::int32_t>(field(jl, "weights", where), spec.out_dim, spec.in_dim, where + ".weights");
    model.layers.push_back(std::move(spec));
  }
  model.validate();
  return model;
}

FloatModel float_model_from_json(const json& doc) {
  FloatModel model;
  model.timesteps = timesteps_of(doc);
  if (doc.contains("encoder")) model.encoder = encoder_config_from_json(doc["encoder"]);
  const json& layers = layers_of(doc);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const json& jl = layers[l];
    const std::string where = "layers[" + std::to_string(l) + "]";
    FloatLayer fl;
    fl.in_dim = get_dim(jl, "in", where);
    fl.out_dim = get_dim(jl, "out", where);
    fl.threshold = get_as<double>(field(jl, "threshold", where), where + ".threshold");
    fl.leak_shift = leak_of(jl, where);
    fl.reset = reset_of(jl, where);
    fl.weights = matrix<double>(field(jl, "weights_f32", where), fl.out_dim, fl.in_dim, where + ".weights_f32");
    model.layers.push_back(std::move(fl));
  }
  model.validate();
  return model;
}

ArrayConfig array_config_from_json(const json& doc) {
  ArrayConfig cfg;
  if (!doc.is_object()) parse_fail("array config must be an object");
  if (doc.contains("rows")) cfg.rows = get_as<std::size_t>(doc["rows"], "array.rows");
  if (doc.contains("cols")) cfg.cols = get_as<std::size_t>(doc["cols"], "array.cols");
  if (doc.contains("fifo_capacity")) cfg.fifo_capacity = get_as<std::size_t>(doc["fifo_capacity"], "array.fifo_capacity");
  cfg.validate();
  return cfg;
}

json to_json(const EncoderConfig& cfg) { return {{"kind", to_string(cfg.kind)}, {"seed", cfg.seed}}; }

json to_json(const QuantizedModel& model) {
  json layers = json::array();
  for (const auto& l : model.layers) {
    layers.push_back({{"in", l.in_dim},
                      {"out", l.out_dim},
                      {"mode", to_string(l.mode)},
                      {"scale", l.scale},
                      {"threshold", l.lif.threshold},
                      {"leak_shift", l.lif.leak_shift},
                      {"reset", to_string(l.lif.reset)},
                      {"v_clamp", l.lif.v_clamp},
                      {"weights", rows_of(l.weights, l.out_dim, l.in_dim)}});
  }
  return {{"timesteps", model.timesteps}, {"encoder", to_json(model.encoder)}, {"layers", layers}};
}

json to_json(const FloatModel& model) {
  json layers = json::array();
  for (const auto& l : model.layers) {
    layers.push_back({{"in", l.in_dim},
                      {"out", l.out_dim},
                      {"threshold", l.threshold},
                      {"leak_shift", l.leak_shift},
                      {"reset", to_string(l.reset)},
                      {"weights_f32", rows_of(l.weights, l.out_dim, l.in_dim)}});
  }
  return {{"timesteps", model.timesteps}, {"encoder", to_json(model.encoder)}, {"layers", layers}};
}

json to_json(const ArrayConfig& cfg) {
  return {{"rows", cfg.rows}, {"cols", cfg.cols}, {"fifo_capacity", cfg.fifo_capacity}};
}

json to_json(const CostReport& r) {
  json layers = json::array();
  for (const auto& lc : r.per_layer) {
    layers.push_back({{"in", lc.in_dim},
                      {"out", lc.out_dim},
                      {"mode", to_string(lc.mode)},
                      {"waves", lc.waves},
                      {"ops_per_neuron", lc.ops_per_neuron},
                      {"compute_cycles", lc.compute_cycles},
                      {"stall_cycles", lc.stall_cycles}});
  }
  return {{"mode", to_string(r.mode)},     {"compute_cycles", r.compute_cycles},
          {"stall_cycles", r.stall_cycles}, {"total_cycles", r.total_cycles},
          {"latency_s", r.latency_s},       {"energy_j", r.energy_j},
          {"per_layer", layers}};
}

json to_json(const FootprintReport& r) {
  return {{"bits", r.bits},
          {"params", r.params},
          {"weight_bits", r.weight_bits},
          {"state_bits", r.state_bits},
          {"total_bytes", r.total_bytes},
          {"ratio_vs_fp32", r.ratio_vs_fp32}};
}

bool is_float_model(const json& doc) {
  if (!doc.is_object() || !doc.contains("layers") || !doc["layers"].is_array()) return false;
  for (const auto& l : doc["layers"]) {
    if (l.is_object() && l.contains("weights_f32")) return true;
  }
  return false;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

std::vector<std::vector<double>> read_feature_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        parse_fail("line " + std::to_string(lineno) + ": cannot parse \"" + cell + "\" as a number");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_footprint_csv(std::ostream& os, std::span<const FootprintReport> reports) {
  os << "bits,params,weight_bits,state_bits,total_bytes,ratio_vs_fp32\n";
  for (const auto& r : reports) {
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%g", r.ratio_vs_fp32);
    os << r.bits << ',' << r.params << ',' << r.weight_bits << ',' << r.state_bits << ',' << r.total_bytes << ','
       << ratio << '\n';
  }
}

void write_trace_csv(std::ostream& os, std::span<const SpikeEvent> events) {
  os << "timestep,layer,neuron_id\n";
  for (const auto& e : events) os << e.timestep << ',' << e.layer << ',' << e.neuron_id << '\n';
}

}  // namespace lspine
