// Command-line front end: quantize, run, bench, trace, and a fixture trainer.
// Talks to the engine only through the C API.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lspine/lspine.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitShape = 4;
constexpr int kExitIo = 5;

struct Failure {
  int code;
  std::string message;
};

void check(lspine_status s, const std::string& context) {
  if (s != LSPINE_OK) throw Failure{static_cast<int>(s), context + ": " + lspine_last_error()};
}

struct ModelDeleter {
  void operator()(lspine_model* m) const { lspine_model_free(m); }
};
struct FloatModelDeleter {
  void operator()(lspine_float_model* m) const { lspine_float_model_free(m); }
};
struct ResultDeleter {
  void operator()(lspine_result* r) const { lspine_result_free(r); }
};
struct BatchDeleter {
  void operator()(lspine_batch* b) const { lspine_batch_free(b); }
};
struct TrainDeleter {
  void operator()(lspine_spike_train* t) const { lspine_spike_train_free(t); }
};
struct StringDeleter {
  void operator()(char* s) const { lspine_string_free(s); }
};

using ModelPtr = std::unique_ptr<lspine_model, ModelDeleter>;
using ResultPtr = std::unique_ptr<lspine_result, ResultDeleter>;
using BatchPtr = std::unique_ptr<lspine_batch, BatchDeleter>;
using TrainPtr = std::unique_ptr<lspine_spike_train, TrainDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

std::string take(char* s) { return std::string(StringPtr(s).get()); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitIo, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content) || !out.flush()) throw Failure{kExitIo, "cannot write " + path};
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{kExitIo, "cannot create directory " + dir + ": " + ec.message()};
}

struct Features {
  std::vector<double> values;  // samples x dim, row-major
  std::size_t samples = 0;
  std::size_t dim = 0;
};

// One sample per line, comma separated; '#' comments and blank lines skipped.
Features read_features(const std::string& path) {
  std::istringstream in(read_file(path));
  Features f;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::size_t width = 0;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      while (end && (*end == ' ' || *end == '\t')) ++end;
      if (end == cell.c_str() || (end && *end != '\0')) {
        throw Failure{kExitParse, path + ":" + std::to_string(lineno) + ": not a number: \"" + cell + "\""};
      }
      f.values.push_back(v);
      ++width;
    }
    if (f.samples == 0) {
      f.dim = width;
    } else if (width != f.dim) {
      throw Failure{kExitParse, path + ":" + std::to_string(lineno) + ": expected " + std::to_string(f.dim) +
                                    " values, got " + std::to_string(width)};
    }
    ++f.samples;
  }
  return f;
}

std::vector<std::size_t> read_labels(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::size_t> labels;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(line.c_str() + first, &end, 10);
    if (end == line.c_str() + first) throw Failure{kExitParse, path + ": not a label: \"" + line + "\""};
    labels.push_back(static_cast<std::size_t>(v));
  }
  return labels;
}

int bits_of_mode(const std::string& name) {
  lspine_mode m;
  const lspine_status s = lspine_mode_parse(name.c_str(), &m);
  if (s != LSPINE_OK) throw Failure{kExitInvalid, "--mode must be int2, int4 or int8, got \"" + name + "\""};
  return 2 << static_cast<int>(m);  // INT2 -> 2, INT4 -> 4, INT8 -> 8
}

lspine_encoder_kind encoder_of(const std::string& name) {
  if (name == "det") return LSPINE_ENCODER_DETERMINISTIC;
  if (name == "stoch") return LSPINE_ENCODER_STOCHASTIC;
  throw Failure{kExitInvalid, "--encoder must be det or stoch, got \"" + name + "\""};
}

// Flags shared by every command that simulates.
struct SimFlags {
  std::string model;
  std::optional<std::size_t> rows, cols, fifo;
  std::optional<std::string> mode;
  std::optional<std::string> encoder;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> timesteps;
  std::size_t workers = 1;

  void add_to(CLI::App& app, bool model_required) {
    auto* opt = app.add_option("--model", model, "model JSON (float or quantized)");
    if (model_required) opt->required();
    app.add_option("--rows", rows, "NCE array rows");
    app.add_option("--cols", cols, "NCE array columns");
    app.add_option("--fifo", fifo, "ring-FIFO capacity");
    app.add_option("--mode", mode, "precision override: int2, int4, int8 or none");
    app.add_option("--encoder", encoder, "spike encoder: det or stoch");
    app.add_option("--seed", seed, "encoder seed");
    app.add_option("--timesteps", timesteps, "timesteps per inference");
    app.add_option("--workers", workers, "worker threads");
  }
};

struct Setup {
  ModelPtr model;
  lspine_array_config array{};
};

// Resolves model, array and encoder settings: flags over run config over model file.
Setup prepare(const SimFlags& flags, const json* config, const fs::path& base) {
  std::string model_path = flags.model;
  std::optional<std::string> mode = flags.mode;
  lspine_array_config array;
  lspine_array_config_default(&array);
  std::optional<lspine_encoder_config> enc_override;
  std::optional<std::uint32_t> timesteps = flags.timesteps;

  if (config) {
    try {
      if (model_path.empty() && config->contains("model")) {
        model_path = (base / config->at("model").get<std::string>()).string();
      }
      if (!mode && config->contains("mode")) mode = config->at("mode").get<std::string>();
      if (config->contains("array")) {
        const json& a = config->at("array");
        if (a.contains("rows")) array.rows = a.at("rows").get<std::size_t>();
        if (a.contains("cols")) array.cols = a.at("cols").get<std::size_t>();
        if (a.contains("fifo_capacity")) array.fifo_capacity = a.at("fifo_capacity").get<std::size_t>();
      }
      if (config->contains("encoder")) {
        const json& e = config->at("encoder");
        lspine_encoder_config c{LSPINE_ENCODER_DETERMINISTIC, 0};
        if (e.contains("kind")) c.kind = encoder_of(e.at("kind").get<std::string>());
        if (e.contains("seed")) c.seed = e.at("seed").get<std::uint64_t>();
        enc_override = c;
      }
      if (!timesteps && config->contains("timesteps")) timesteps = config->at("timesteps").get<std::uint32_t>();
    } catch (const json::exception& e) {
      throw Failure{kExitParse, std::string("run config: ") + e.what()};
    }
  }
  if (model_path.empty()) throw Failure{kExitInvalid, "no model given (use --model or a run config)"};
  if (flags.rows) array.rows = *flags.rows;
  if (flags.cols) array.cols = *flags.cols;
  if (flags.fifo) array.fifo_capacity = *flags.fifo;
  if (array.rows == 0 || array.cols == 0 || array.fifo_capacity == 0) {
    throw Failure{kExitInvalid, "array rows, cols and fifo capacity must be >= 1"};
  }

  const int bits = (!mode || *mode == "none") ? 0 : bits_of_mode(*mode);
  lspine_model* raw = nullptr;
  check(lspine_model_load_any(model_path.c_str(), bits, &raw), "loading " + model_path);
  Setup s{ModelPtr(raw), array};

  lspine_encoder_config enc = enc_override.value_or(lspine_model_encoder(s.model.get()));
  if (flags.encoder) enc.kind = encoder_of(*flags.encoder);
  if (flags.seed) enc.seed = *flags.seed;
  lspine_model_set_encoder(s.model.get(), enc);
  if (timesteps) check(lspine_model_set_timesteps(s.model.get(), *timesteps), "--timesteps");
  return s;
}

std::optional<json> load_run_config(const std::string& path) {
  if (path.empty()) return std::nullopt;
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Failure{kExitParse, path + ": " + e.what()};
  }
}

std::string format_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string cost_csv(const std::vector<lspine_cost_report>& reports, bool header) {
  char* out = nullptr;
  check(lspine_cost_csv(reports.data(), reports.size(), header ? 1 : 0, &out), "cost csv");
  return take(out);
}

// ---- quantize ------------------------------------------------------------

struct QuantizeArgs {
  std::string model;
  int bits = 8;
  std::string out;
};

int cmd_quantize(const QuantizeArgs& a) {
  if (a.bits != 2 && a.bits != 4 && a.bits != 8) {
    throw Failure{kExitInvalid, "--bits must be 2, 4 or 8, got " + std::to_string(a.bits)};
  }
  lspine_float_model* fraw = nullptr;
  check(lspine_float_model_load(a.model.c_str(), &fraw), "loading " + a.model);
  std::unique_ptr<lspine_float_model, FloatModelDeleter> fm(fraw);
  lspine_model* qraw = nullptr;
  check(lspine_quantize(fm.get(), a.bits, &qraw), "quantizing");
  ModelPtr qm(qraw);
  check(lspine_model_save(qm.get(), a.out.c_str()), "writing " + a.out);
  lspine_footprint fp;
  check(lspine_model_footprint(qm.get(), a.bits, 0, &fp), "footprint");
  char* js = nullptr;
  check(lspine_footprint_to_json(&fp, &js), "footprint");
  std::cout << take(js) << '\n';
  return kExitOk;
}

// ---- run -----------------------------------------------------------------

struct RunArgs {
  SimFlags sim;
  std::string config;
  std::string inputs;
  std::string labels;
  std::string out;
  bool trace = false;
};

int cmd_run(RunArgs a) {
  const auto config = load_run_config(a.config);
  const fs::path base = a.config.empty() ? fs::path(".") : fs::path(a.config).parent_path();
  if (config) {
    try {
      if (a.inputs.empty() && config->contains("inputs")) a.inputs = (base / config->at("inputs").get<std::string>()).string();
      if (a.out.empty() && config->contains("out")) a.out = (base / config->at("out").get<std::string>()).string();
      if (!a.trace && config->contains("trace")) a.trace = config->at("trace").get<bool>();
      if (config->contains("workers") && a.sim.workers == 1) a.sim.workers = config->at("workers").get<std::size_t>();
    } catch (const json::exception& e) {
      throw Failure{kExitParse, std::string("run config: ") + e.what()};
    }
  }
  if (a.inputs.empty()) throw Failure{kExitInvalid, "no inputs given (use --inputs or a run config)"};
  if (a.out.empty()) throw Failure{kExitInvalid, "no output directory given (use --out or a run config)"};

  Setup s = prepare(a.sim, config ? &*config : nullptr, base);
  const Features f = read_features(a.inputs);
  const std::size_t in_dim = lspine_model_input_dim(s.model.get());
  if (f.samples > 0 && f.dim != in_dim) {
    throw Failure{kExitShape, a.inputs + ": samples have " + std::to_string(f.dim) + " features, model expects " +
                                  std::to_string(in_dim)};
  }

  lspine_batch* braw = nullptr;
  check(lspine_infer_batch(s.model.get(), &s.array, f.values.data(), f.samples, in_dim, a.sim.workers, &braw),
        "inference");
  BatchPtr batch(braw);

  ensure_dir(a.out);
  const fs::path dir(a.out);
  const std::size_t out_dim = lspine_model_output_dim(s.model.get());
  std::ostringstream pred;
  pred << "sample,predicted";
  for (std::size_t j = 0; j < out_dim; ++j) pred << ",count_" << j;
  pred << '\n';
  std::ostringstream trace;
  trace << "sample,timestep,layer,neuron_id\n";
  std::vector<std::size_t> predicted;
  for (std::size_t k = 0; k < lspine_batch_size(batch.get()); ++k) {
    const lspine_result* r = lspine_batch_result(batch.get(), k);
    predicted.push_back(lspine_result_predicted(r));
    pred << k << ',' << predicted.back();
    const uint32_t* counts = lspine_result_counts(r);
    for (std::size_t j = 0; j < lspine_result_count_len(r); ++j) pred << ',' << counts[j];
    pred << '\n';
    if (a.trace) {
      const lspine_spike_event* ev = lspine_result_trace(r);
      for (std::size_t e = 0; e < lspine_result_trace_len(r); ++e) {
        trace << k << ',' << ev[e].timestep << ',' << ev[e].layer << ',' << ev[e].neuron_id << '\n';
      }
    }
  }
  write_file((dir / "predictions.csv").string(), pred.str());
  if (a.trace) write_file((dir / "trace.csv").string(), trace.str());

  lspine_cost_report report;
  char* js = nullptr;
  check(lspine_estimate_batch(s.model.get(), &s.array, batch.get(), nullptr, &report, &js), "cost estimate");
  write_file((dir / "cost.json").string(), take(js));
  write_file((dir / "cost.csv").string(), cost_csv({report}, true));

  std::cout << "samples: " << f.samples << '\n';
  if (!a.labels.empty()) {
    const auto labels = read_labels(a.labels);
    if (labels.size() != predicted.size()) {
      throw Failure{kExitShape, a.labels + ": " + std::to_string(labels.size()) + " labels for " +
                                    std::to_string(predicted.size()) + " samples"};
    }
    std::size_t hits = 0;
    for (std::size_t k = 0; k < labels.size(); ++k) hits += labels[k] == predicted[k];
    std::cout << "accuracy: " << format_g(labels.empty() ? 0.0 : double(hits) / double(labels.size())) << '\n';
  }
  std::cout << "total_cycles: " << report.total_cycles << '\n'
            << "latency_ms: " << format_g(report.latency_s * 1e3) << '\n';
  return kExitOk;
}

// ---- bench ---------------------------------------------------------------

struct BenchArgs {
  SimFlags sim;
  std::vector<std::string> modes{"int2", "int4", "int8"};
  std::string inputs;
  std::string out;
};

int cmd_bench(const BenchArgs& a) {
  std::optional<Features> f;
  if (!a.inputs.empty()) f = read_features(a.inputs);
  std::vector<lspine_cost_report> reports;
  std::vector<double> wall_ms;
  for (const auto& name : a.modes) {
    SimFlags sim = a.sim;
    sim.mode = name;
    Setup s = prepare(sim, nullptr, ".");
    lspine_cost_report r;
    const auto start = std::chrono::steady_clock::now();
    if (f) {
      const std::size_t in_dim = lspine_model_input_dim(s.model.get());
      if (f->samples > 0 && f->dim != in_dim) {
        throw Failure{kExitShape, a.inputs + ": samples have " + std::to_string(f->dim) +
                                      " features, model expects " + std::to_string(in_dim)};
      }
      lspine_batch* braw = nullptr;
      check(lspine_infer_batch(s.model.get(), &s.array, f->values.data(), f->samples, in_dim, a.sim.workers, &braw),
            "inference");
      BatchPtr batch(braw);
      check(lspine_estimate_batch(s.model.get(), &s.array, batch.get(), nullptr, &r, nullptr), "cost estimate");
    } else {
      check(lspine_estimate(s.model.get(), &s.array, nullptr, nullptr, &r), "cost estimate");
    }
    wall_ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
    reports.push_back(r);
  }

  double fastest = 0.0;
  for (const auto& r : reports) {
    if (fastest == 0.0 || (r.latency_s > 0.0 && r.latency_s < fastest)) fastest = r.latency_s;
  }
  std::ostringstream csv;
  csv << "mode,compute_cycles,stall_cycles,latency_ms,energy_mj,latency_ratio\n";
  for (const auto& r : reports) {
    std::string row = cost_csv({r}, false);
    if (!row.empty() && row.back() == '\n') row.pop_back();
    csv << row << ',' << format_g(fastest > 0.0 ? r.latency_s / fastest : 1.0) << '\n';
  }

  std::ostream& timing = a.out.empty() ? std::cerr : std::cout;
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    write_file(a.out, csv.str());
  }
  for (std::size_t m = 0; m < reports.size(); ++m) {
    timing << "wall_clock_ms " << lspine_mode_name(reports[m].mode) << ' ' << format_g(wall_ms[m]) << '\n';
  }
  return kExitOk;
}

// ---- trace ---------------------------------------------------------------

struct TraceArgs {
  SimFlags sim;
  std::string inputs;
  std::string spikes;
  std::size_t sample = 0;
  std::string out;
  std::string dump_spikes;
};

int cmd_trace(const TraceArgs& a) {
  if (a.inputs.empty() == a.spikes.empty()) throw Failure{kExitInvalid, "give exactly one of --inputs or --spikes"};
  Setup s = prepare(a.sim, nullptr, ".");
  lspine_spike_train* traw = nullptr;
  if (!a.spikes.empty()) {
    check(lspine_spike_train_read(a.spikes.c_str(), &traw), "reading " + a.spikes);
  } else {
    const Features f = read_features(a.inputs);
    if (a.sample >= f.samples) {
      throw Failure{kExitInvalid, "--sample " + std::to_string(a.sample) + " out of range (" +
                                      std::to_string(f.samples) + " samples)"};
    }
    // Same per-sample seed as `run`.
    lspine_encoder_config enc = lspine_model_encoder(s.model.get());
    enc.seed += a.sample;
    check(lspine_encode(&enc, f.values.data() + a.sample * f.dim, f.dim, lspine_model_timesteps(s.model.get()), &traw),
          "encoding");
  }
  TrainPtr train(traw);
  if (!a.dump_spikes.empty()) check(lspine_spike_train_write(train.get(), a.dump_spikes.c_str()), "writing spikes");
  lspine_result* rraw = nullptr;
  check(lspine_infer_train(s.model.get(), &s.array, train.get(), &rraw), "inference");
  ResultPtr result(rraw);
  if (a.out.empty()) {
    std::cout << "timestep,layer,neuron_id\n";
    const lspine_spike_event* ev = lspine_result_trace(result.get());
    for (std::size_t e = 0; e < lspine_result_trace_len(result.get()); ++e) {
      std::cout << ev[e].timestep << ',' << ev[e].layer << ',' << ev[e].neuron_id << '\n';
    }
  } else {
    check(lspine_result_write_trace(result.get(), a.out.c_str()), "writing " + a.out);
    std::cout << "predicted: " << lspine_result_predicted(result.get()) << '\n'
              << "spikes: " << lspine_result_trace_len(result.get()) << '\n';
  }
  return kExitOk;
}

// ---- train ---------------------------------------------------------------

struct TrainArgs {
  std::size_t samples = 600;
  std::size_t dim = 16;
  std::size_t classes = 4;
  double spread = 0.25;
  std::vector<std::size_t> hidden{32};
  std::uint32_t timesteps = 16;
  std::size_t epochs = 30;
  std::uint64_t seed = 1;
  std::string out;
  std::string inputs_out;
  std::string labels_out;
};

int cmd_train(const TrainArgs& a) {
  std::vector<double> x(a.samples * a.dim);
  std::vector<std::size_t> y(a.samples);
  check(lspine_make_blobs(a.samples, a.dim, a.classes, a.spread, a.seed, x.data(), y.data()), "dataset");
  lspine_float_model* raw = nullptr;
  check(lspine_train_reference(x.data(), y.data(), a.samples, a.dim, a.classes, a.hidden.data(), a.hidden.size(),
                               a.timesteps, a.epochs, a.seed, &raw),
        "training");
  std::unique_ptr<lspine_float_model, FloatModelDeleter> fm(raw);
  char* js = nullptr;
  check(lspine_float_model_to_json(fm.get(), &js), "serializing");
  write_file(a.out, take(js));
  if (!a.inputs_out.empty()) {
    std::ostringstream os;
    for (std::size_t k = 0; k < a.samples; ++k) {
      for (std::size_t i = 0; i < a.dim; ++i) os << (i ? "," : "") << format_g(x[k * a.dim + i]);
      os << '\n';
    }
    write_file(a.inputs_out, os.str());
  }
  if (!a.labels_out.empty()) {
    std::ostringstream os;
    for (std::size_t label : y) os << label << '\n';
    write_file(a.labels_out, os.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bit-accurate simulator for a low-precision SIMD spiking neural accelerator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lspine_version()));

  QuantizeArgs qa;
  auto* quantize = app.add_subcommand("quantize", "quantize a float model to INT2/INT4/INT8");
  quantize->add_option("--model", qa.model, "float model JSON")->required();
  quantize->add_option("--bits", qa.bits, "2, 4 or 8");
  quantize->add_option("--out", qa.out, "output model JSON")->required();

  RunArgs ra;
  auto* run = app.add_subcommand("run", "run inference over a feature CSV");
  ra.sim.add_to(*run, false);
  run->add_option("--config", ra.config, "run config JSON");
  run->add_option("--inputs", ra.inputs, "feature CSV, one sample per line");
  run->add_option("--labels", ra.labels, "label file, one integer per line");
  run->add_option("--out", ra.out, "output directory");
  run->add_flag("--trace", ra.trace, "also write trace.csv");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "compare precision modes with the cost model");
  ba.sim.add_to(*bench, true);
  bench->remove_option(bench->get_option("--mode"));
  bench->add_option("--mode", ba.modes, "comma-separated modes")->delimiter(',');
  bench->add_option("--inputs", ba.inputs, "feature CSV; adds measured FIFO stalls");
  bench->add_option("--out", ba.out, "CSV output path (default stdout)");

  TraceArgs ta;
  auto* trace = app.add_subcommand("trace", "spike trace of a single inference");
  ta.sim.add_to(*trace, true);
  trace->add_option("--inputs", ta.inputs, "feature CSV");
  trace->add_option("--sample", ta.sample, "sample index in the CSV");
  trace->add_option("--spikes", ta.spikes, "spike-train file instead of features");
  trace->add_option("--dump-spikes", ta.dump_spikes, "write the encoded spike train");
  trace->add_option("--out", ta.out, "trace CSV path (default stdout)");

  TrainArgs tra;
  auto* train = app.add_subcommand("train", "train a float fixture model on synthetic blobs");
  train->add_option("--samples", tra.samples);
  train->add_option("--dim", tra.dim);
  train->add_option("--classes", tra.classes);
  train->add_option("--spread", tra.spread);
  train->add_option("--hidden", tra.hidden, "hidden layer widths")->delimiter(',');
  train->add_option("--timesteps", tra.timesteps);
  train->add_option("--epochs", tra.epochs);
  train->add_option("--seed", tra.seed);
  train->add_option("--out", tra.out, "float model JSON")->required();
  train->add_option("--inputs-out", tra.inputs_out, "write the features as CSV");
  train->add_option("--labels-out", tra.labels_out, "write the labels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*quantize) return cmd_quantize(qa);
    if (*run) return cmd_run(ra);
    if (*bench) return cmd_bench(ba);
    if (*trace) return cmd_trace(ta);
    if (*train) return cmd_train(tra);
  } catch (const Failure& f) {
    std::cerr << "lspine: error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "lspine: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
