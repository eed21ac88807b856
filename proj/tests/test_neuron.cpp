#include <gtest/gtest.h>

#include <vector>

#include "array.hpp"
#include "error.hpp"
#include "neuron.hpp"
#include "oracle/scalar_reference.hpp"
#include "oracle/test_rng.hpp"

using namespace lspine;

namespace {

LIFConfig config(std::int32_t threshold, int leak_shift = 3, ResetMode reset = ResetMode::HardZero) {
  LIFConfig c;
  c.threshold = threshold;
  c.leak_shift = leak_shift;
  c.reset = reset;
  return c;
}

LIFState at(std::int32_t v) {
  LIFState s;
  s.v = v;
  return s;
}

}  // namespace

TEST(Leak, Examples) {
  EXPECT_EQ(leak(at(0), 3).v, 0);
  EXPECT_EQ(leak(at(100), 3).v, 88);
  EXPECT_EQ(leak(at(7), 3).v, 7);
  EXPECT_EQ(leak(at(-100), 3).v, -87);
  EXPECT_EQ(leak(at(1234), 0).v, 1234);
}

TEST(Integrate, ExamplesAndClamp) {
  const auto cfg = config(10);
  EXPECT_EQ(integrate(at(0), 0, cfg).v, 0);
  EXPECT_EQ(integrate(at(5), 12, cfg).v, 17);
  EXPECT_EQ(integrate(at(cfg.v_clamp), 10, cfg).v, cfg.v_clamp);
  EXPECT_EQ(integrate(at(-cfg.v_clamp), -10, cfg).v, -cfg.v_clamp);
  EXPECT_EQ(integrate(at(0), std::int64_t{1} << 40, cfg).v, cfg.v_clamp);
}

TEST(FireAndReset, Examples) {
  const auto hard = config(10);
  auto r = fire_and_reset(at(9), hard);
  EXPECT_FALSE(r.spiked);
  EXPECT_EQ(r.state.v, 9);
  EXPECT_EQ(r.state.spike_count, 0u);

  r = fire_and_reset(at(10), hard);
  EXPECT_TRUE(r.spiked);
  EXPECT_EQ(r.state.v, 0);
  EXPECT_EQ(r.state.spike_count, 1u);

  r = fire_and_reset(at(14), config(10, 3, ResetMode::SubtractThreshold));
  EXPECT_TRUE(r.spiked);
  EXPECT_EQ(r.state.v, 4);
}

TEST(Config, Validate) {
  EXPECT_NO_THROW(config(10).validate());
  EXPECT_THROW(config(0).validate(), Error);
  EXPECT_THROW(config(10, 16).validate(), Error);
  EXPECT_THROW(config(10, -1).validate(), Error);
  auto c = config(10);
  c.v_clamp = 9;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Step, Examples) {
  const auto cfg = config(10);
  for (auto mode : {PrecisionMode::Int2, PrecisionMode::Int4, PrecisionMode::Int8}) {
    const std::vector<std::uint8_t> quiet(20, 0);
    const std::vector<std::int32_t> w(20, 1);
    auto r = step(LIFState{}, quiet, w, cfg, mode);
    EXPECT_FALSE(r.spiked);
    EXPECT_EQ(r.state.v, 0);
    EXPECT_EQ(r.state.t, 1u);
  }
  // +12 reaches theta = 10 in one step.
  std::vector<std::uint8_t> spikes{1, 1, 1, 0};
  std::vector<std::int32_t> w{5, 4, 3, 7};
  auto r = step(LIFState{}, spikes, w, cfg, PrecisionMode::Int4);
  EXPECT_TRUE(r.spiked);
  EXPECT_EQ(r.state.v, 0);
  EXPECT_EQ(r.state.spike_count, 1u);

  EXPECT_THROW(step(LIFState{}, spikes, std::vector<std::int32_t>{1, 2}, cfg, PrecisionMode::Int4), Error);
  try {
    step(LIFState{}, spikes, std::vector<std::int32_t>{1, 2}, cfg, PrecisionMode::Int4);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FanInMismatch);
  }
}

TEST(Step, ChunkedSumEqualsScalarSum) {
  oracle::SplitMix rng(21);
  for (auto mode : {PrecisionMode::Int2, PrecisionMode::Int4, PrecisionMode::Int8}) {
    for (int n = 0; n < 300; ++n) {
      const auto fan_in = static_cast<std::size_t>(rng.range(1, 100));
      std::vector<std::uint8_t> s(fan_in);
      std::vector<std::int32_t> w(fan_in);
      std::int64_t expect = 0;
      for (std::size_t i = 0; i < fan_in; ++i) {
        s[i] = rng.next() & 1;
        w[i] = static_cast<std::int32_t>(rng.range(value_min(mode) / 2, value_max(mode)));
        expect += s[i] * w[i];
      }
      EXPECT_EQ(synaptic_sum(pack_row(w, mode), pack_spikes(s, mode)), expect);
    }
  }
}

TEST(Counter, ReadAndClear) {
  LIFState s;
  EXPECT_EQ(read_and_clear_counter(s), 0u);
  const auto cfg = config(1, 0);
  const std::vector<std::uint8_t> on{1};
  const std::vector<std::int32_t> w{1};
  for (int k = 0; k < 3; ++k) s = step(s, on, w, cfg, PrecisionMode::Int8).state;
  EXPECT_EQ(read_and_clear_counter(s), 3u);
  EXPECT_EQ(read_and_clear_counter(s), 0u);
}

TEST(Properties, QuiescentLeakInvariants) {
  oracle::SplitMix rng(22);
  const std::vector<std::uint8_t> quiet(8, 0);
  const std::vector<std::int32_t> w(8, 3);
  for (int n = 0; n < 500; ++n) {
    const auto v0 = static_cast<std::int32_t>(rng.range(-5000, 5000));
    // No leak, no input: v is invariant.
    auto s = step(at(v0 < 0 ? v0 : std::min(v0, 99)), quiet, w, config(100, 0), PrecisionMode::Int4).state;
    EXPECT_EQ(s.v, v0 < 0 ? v0 : std::min(v0, 99));
    // Leak on, no input: |v| never grows.
    LIFState st = at(v0);
    const auto cfg = config(100000, static_cast<int>(rng.range(1, 15)));
    for (int t = 0; t < 50; ++t) {
      const auto next = step(st, quiet, w, cfg, PrecisionMode::Int4).state;
      ASSERT_LE(std::abs(next.v), std::abs(st.v));
      st = next;
    }
  }
}

TEST(Properties, CounterConsistencyAndHardReset) {
  oracle::SplitMix rng(23);
  const auto cfg = config(20);
  std::vector<std::int32_t> w(32);
  for (auto& x : w) x = static_cast<std::int32_t>(rng.range(-7, 7));
  LIFState st;
  std::uint32_t spikes = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<std::uint8_t> s(32);
    for (auto& b : s) b = rng.next() & 1;
    const auto r = step(st, s, w, cfg, PrecisionMode::Int4);
    if (r.spiked) {
      ++spikes;
      EXPECT_EQ(r.state.v, 0);
    }
    EXPECT_LE(std::abs(r.state.v), cfg.v_clamp);
    EXPECT_LE(r.state.spike_count, r.state.t + 1);
    st = r.state;
  }
  EXPECT_EQ(st.spike_count, spikes);
}

TEST(Equivalence, SixtyFourNeuronNetMatchesScalarReference) {
  oracle::SplitMix rng(24);
  for (auto mode : {PrecisionMode::Int2, PrecisionMode::Int4, PrecisionMode::Int8}) {
    QuantizedModel model;
    model.timesteps = 32;
    std::vector<oracle::Layer> ref;
    const std::size_t in = 48, out = 64;
    LayerSpec spec;
    spec.in_dim = in;
    spec.out_dim = out;
    spec.mode = mode;
    spec.lif = config(mode == PrecisionMode::Int2 ? 3 : mode == PrecisionMode::Int4 ? 60 : 1200);
    oracle::Layer r{in, out, {}, spec.lif.threshold, 3, true, spec.lif.v_clamp};
    for (std::size_t k = 0; k < in * out; ++k) {
      const auto q = static_cast<std::int32_t>(rng.range(value_min(mode) / 2, value_max(mode)));
      spec.weights.push_back(q);
      r.w.push_back(q);
    }
    model.layers.push_back(spec);
    ref.push_back(r);

    std::vector<std::vector<std::uint8_t>> input(32, std::vector<std::uint8_t>(in));
    SpikeTrain train(32, in);
    for (std::size_t t = 0; t < 32; ++t) {
      for (std::size_t i = 0; i < in; ++i) {
        input[t][i] = (rng.next() % 3) == 0;
        train.set(t, i, input[t][i]);
      }
    }
    Engine engine(model, ArrayConfig{});
    const auto got = engine.run_inference(train);
    const auto expect = oracle::simulate(ref, input);
    std::size_t fired = 0;
    for (std::size_t t = 0; t < 32; ++t) {
      for (std::size_t j = 0; j < out; ++j) {
        ASSERT_EQ(got.rasters[0].at(t, j), expect[0][t][j]) << to_string(mode) << " t=" << t << " j=" << j;
        fired += expect[0][t][j];
      }
    }
    EXPECT_GT(fired, 0u);
    // Counter equals the raster row count.
    for (std::size_t j = 0; j < out; ++j) EXPECT_EQ(got.counts[j], got.rasters[0].count(j));
  }
}
