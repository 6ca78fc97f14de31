// Copyright 2026 The ipakit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ipakit/errors.hpp"
#include "ipakit/wav.hpp"
#include "test_support.hpp"

using namespace ipakit;
using namespace ipakit::audio;
using ipakit_test::TempDir;

namespace {

// Peak of a DFT scan in 0.1 Hz steps around the expected frequency.
double peak_frequency(const std::vector<double> &x, int rate, double lo, double hi) {
  double best = lo, best_mag = -1.0;
  for (double f = lo; f <= hi; f += 0.1) {
    const double m = ipakit_test::dft_magnitude(x, f, rate);
    if (m > best_mag) {
      best_mag = m;
      best = f;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("probe") {
  TempDir dir;
  SUBCASE("one second") {
    ipakit_test::write_text(dir / "a.wav", ipakit_test::pcm16_wav_bytes(std::vector<std::int16_t>(16000), 16000));
    const auto info = probe_wav(dir / "a.wav");
    CHECK(info.sample_rate == 16000);
    CHECK(info.channels == 1);
    CHECK(info.bits_per_sample == 16);
    CHECK(info.frames == 16000);
    CHECK(probe_duration(dir / "a.wav") == 1.0);
  }
  SUBCASE("stereo frames") {
    ipakit_test::write_text(dir / "s.wav", ipakit_test::pcm16_wav_bytes(std::vector<std::int16_t>(800), 8000, 2));
    CHECK(probe_wav(dir / "s.wav").frames == 400);
    CHECK(probe_duration(dir / "s.wav") == 0.05);
  }
  SUBCASE("truncated header") {
    const auto bytes = ipakit_test::pcm16_wav_bytes(std::vector<std::int16_t>(100), 16000);
    ipakit_test::write_text(dir / "t.wav", bytes.substr(0, 20));
    CHECK_THROWS_AS(probe_wav(dir / "t.wav"), DecodeError);
    ipakit_test::write_text(dir / "t2.wav", bytes.substr(0, 8));
    CHECK_THROWS_AS(probe_wav(dir / "t2.wav"), DecodeError);
  }
  SUBCASE("not a wav") {
    ipakit_test::write_text(dir / "x.wav", std::string(64, 'x'));
    CHECK_THROWS_AS(probe_wav(dir / "x.wav"), DecodeError);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(probe_wav(dir / "none.wav"), Error); }
}

TEST_CASE("read and write") {
  TempDir dir;
  SUBCASE("stereo is mixed down") {
    std::vector<std::int16_t> lr{1000, 3000, -2000, 0};
    ipakit_test::write_text(dir / "s.wav", ipakit_test::pcm16_wav_bytes(lr, 8000, 2));
    int rate = 0;
    const auto mono = read_wav_mono(dir / "s.wav", &rate);
    CHECK(rate == 8000);
    REQUIRE(mono.size() == 2);
    CHECK(mono[0] == doctest::Approx(2000.0 / 32768.0));
    CHECK(mono[1] == doctest::Approx(-1000.0 / 32768.0));
  }
  SUBCASE("round trip") {
    const auto x = ipakit_test::sine(300.0, 16000, 1600);
    write_wav_pcm16(dir / "o.wav", x, 16000);
    const auto info = probe_wav(dir / "o.wav");
    CHECK(info.frames == 1600);
    CHECK(info.bits_per_sample == 16);
    int rate = 0;
    const auto y = read_wav_mono(dir / "o.wav", &rate);
    REQUIRE(y.size() == x.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - y[i]) < 1.0 / 32768.0 + 1e-12);
  }
  SUBCASE("short data chunk reads what is there") {
    auto bytes = ipakit_test::pcm16_wav_bytes(std::vector<std::int16_t>(100), 16000);
    bytes.resize(bytes.size() - 50);
    ipakit_test::write_text(dir / "t.wav", bytes);
    int rate = 0;
    CHECK(read_wav_mono(dir / "t.wav", &rate).size() == 75);
    CHECK(probe_wav(dir / "t.wav").frames == 75);
  }
}

TEST_CASE("resample 48k to 16k") {
  const std::size_t n = 48000;
  const auto x = ipakit_test::sine(440.0, 48000, n);
  const auto y = resample(x, 48000, 16000);
  const auto expected = static_cast<long>(std::ceil(n * 16000.0 / 48000.0));
  CHECK(std::labs(static_cast<long>(y.size()) - expected) <= 1);
  CHECK(std::abs(peak_frequency(y, 16000, 430.0, 450.0) - 440.0) <= 1.0);
  // Energy stays at the tone, not at an alias.
  CHECK(ipakit_test::dft_magnitude(y, 440.0, 16000) > 100.0 * ipakit_test::dft_magnitude(y, 1000.0, 16000));

  const std::vector<double> dc(n, 0.25);
  for (double v : resample(dc, 48000, 16000)) CHECK(std::abs(v - 0.25) <= 1e-4);
}

TEST_CASE("resample is linear") {
  std::mt19937 rng(3);
  std::normal_distribution<double> noise(0.0, 0.3);
  std::vector<double> x(4800), scaled(4800);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = noise(rng);
    scaled[i] = -2.5 * x[i];
  }
  const auto y = resample(x, 48000, 16000);
  const auto ys = resample(scaled, 48000, 16000);
  REQUIRE(y.size() == ys.size());
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    worst = std::max(worst, std::abs(ys[i] + 2.5 * y[i]));
    scale = std::max(scale, std::abs(2.5 * y[i]));
  }
  CHECK(worst <= 1e-6 * scale);
}

TEST_CASE("resample edge cases") {
  const auto x = ipakit_test::sine(100.0, 8000, 801);
  const auto up = resample(x, 8000, 16000);
  CHECK(up.size() == 1602);
  CHECK(std::abs(peak_frequency(up, 16000, 95.0, 105.0) - 100.0) <= 1.0);
  CHECK(resample(x, 8000, 8000) == x);
  CHECK(resample(std::vector<double>{}, 48000, 16000).empty());
  CHECK_THROWS_AS(resample(x, 0, 16000), Error);
}

TEST_CASE("resample_wav") {
  TempDir dir;
  write_wav_pcm16(dir / "in.wav", ipakit_test::sine(440.0, 48000, 4800), 48000);
  const auto counts = resample_wav(dir / "in.wav", dir / "out/o.wav");
  CHECK(counts.in_samples == 4800);
  CHECK(counts.out_samples == 1600);
  const auto info = probe_wav(dir / "out/o.wav");
  CHECK(info.sample_rate == 16000);
  CHECK(info.frames == 1600);
}
