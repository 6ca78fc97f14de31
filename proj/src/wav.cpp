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

#include "ipakit/wav.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <numbers>

#include "ipakit/errors.hpp"
#include "ipakit/text_io.hpp"

namespace ipakit::audio {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t le32(const unsigned char *p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
std::uint16_t le16(const unsigned char *p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }

struct Layout {
  WavInfo info;
  std::uint64_t data_offset = 0;
  std::uint64_t data_bytes = 0;
};

Layout parse_header(std::istream &in, std::uint64_t file_size, const std::string &name) {
  unsigned char riff[12];
  if (!in.read(reinterpret_cast<char *>(riff), 12))
    throw DecodeError(name + ": truncated RIFF header");
  if (std::memcmp(riff, "RIFF", 4) != 0 || std::memcmp(riff + 8, "WAVE", 4) != 0)
    throw DecodeError(name + ": not a RIFF/WAVE file");

  Layout layout;
  bool have_fmt = false;
  std::uint64_t pos = 12;
  while (pos + 8 <= file_size) {
    unsigned char chunk[8];
    in.seekg(static_cast<std::streamoff>(pos));
    if (!in.read(reinterpret_cast<char *>(chunk), 8)) break;
    const std::uint32_t size = le32(chunk + 4);
    const std::uint64_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > file_size) throw DecodeError(name + ": corrupt fmt chunk");
      std::array<unsigned char, 40> fmt{};
      if (!in.read(reinterpret_cast<char *>(fmt.data()), std::min<std::uint32_t>(size, 40)))
        throw DecodeError(name + ": truncated fmt chunk");
      std::uint16_t format = le16(fmt.data());
      if (format == kFormatExtensible && size >= 40) format = le16(fmt.data() + 24);
      if (format != kFormatPcm) throw DecodeError(name + ": not PCM (format " + std::to_string(format) + ")");
      layout.info.channels = le16(fmt.data() + 2);
      layout.info.sample_rate = static_cast<int>(le32(fmt.data() + 4));
      layout.info.bits_per_sample = le16(fmt.data() + 14);
      const int bits = layout.info.bits_per_sample;
      if (layout.info.channels <= 0 || layout.info.sample_rate <= 0 ||
          (bits != 8 && bits != 16 && bits != 24 && bits != 32))
        throw DecodeError(name + ": unsupported PCM layout");
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw DecodeError(name + ": data chunk before fmt chunk");
      layout.data_offset = body;
      // Streamed writers leave the size unset; trust the file length then.
      layout.data_bytes = std::min<std::uint64_t>(size, file_size - body);
      const std::uint64_t frame_bytes =
          static_cast<std::uint64_t>(layout.info.channels) * (layout.info.bits_per_sample / 8);
      layout.info.frames = layout.data_bytes / frame_bytes;
      return layout;
    }
    pos = body + size + (size & 1);
  }
  throw DecodeError(name + (have_fmt ? ": missing data chunk" : ": missing fmt chunk"));
}

Layout open_layout(std::ifstream &in, const std::filesystem::path &path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec || !in) throw IoError("cannot open " + path.string());
  return parse_header(in, size, path.string());
}

double decode_sample(const unsigned char *p, int bits) {
  switch (bits) {
    case 8:
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16:
      return static_cast<std::int16_t>(le16(p)) / 32768.0;
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
    default:
      return static_cast<std::int32_t>(le32(p)) / 2147483648.0;
  }
}

void put16(std::string &out, std::uint16_t v) {
  out += static_cast<char>(v & 0xFF);
  out += static_cast<char>(v >> 8);
}
void put32(std::string &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xFF);
}

/// Windowed sinc sampled on [0, zero_crossings] at a fixed oversampling.
class KernelTable {
 public:
  static constexpr int kOversample = 512;

  KernelTable(int zero_crossings, double beta) : zero_crossings_(zero_crossings) {
    const int n = zero_crossings * kOversample + 2;
    table_.resize(static_cast<std::size_t>(n));
    const double norm = std::cyl_bessel_i(0.0, beta);
    for (int i = 0; i < n; ++i) {
      const double u = static_cast<double>(i) / kOversample;
      const double x = std::min(1.0, u / zero_crossings);
      const double window = std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - x * x)) / norm;
      const double sinc = u == 0.0 ? 1.0 : std::sin(std::numbers::pi * u) / (std::numbers::pi * u);
      table_[static_cast<std::size_t>(i)] = u >= zero_crossings ? 0.0 : sinc * window;
    }
  }

  /// u in zero-crossing units, any sign.
  double operator()(double u) const {
    u = std::abs(u);
    if (u >= zero_crossings_) return 0.0;
    const double f = u * kOversample;
    const auto i = static_cast<std::size_t>(f);
    const double frac = f - static_cast<double>(i);
    return table_[i] + frac * (table_[i + 1] - table_[i]);
  }

 private:
  int zero_crossings_;
  std::vector<double> table_;
};

}  // namespace

WavInfo probe_wav(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  return open_layout(in, path).info;
}

double probe_duration(const std::filesystem::path &path) { return probe_wav(path).duration_s(); }

std::vector<double> read_wav_mono(const std::filesystem::path &path, int *sample_rate) {
  std::ifstream in(path, std::ios::binary);
  const Layout layout = open_layout(in, path);
  const int channels = layout.info.channels;
  const int width = layout.info.bits_per_sample / 8;
  std::vector<unsigned char> raw(layout.info.frames * channels * width);
  in.seekg(static_cast<std::streamoff>(layout.data_offset));
  if (!in.read(reinterpret_cast<char *>(raw.data()), static_cast<std::streamsize>(raw.size())))
    throw DecodeError(path.string() + ": truncated data chunk");

  std::vector<double> out(layout.info.frames);
  const unsigned char *p = raw.data();
  for (auto &sample : out) {
    double sum = 0.0;
    for (int c = 0; c < channels; ++c, p += width) sum += decode_sample(p, layout.info.bits_per_sample);
    sample = sum / channels;
  }
  if (sample_rate != nullptr) *sample_rate = layout.info.sample_rate;
  return out;
}

void write_wav_pcm16(const std::filesystem::path &path, std::span<const double> samples,
                     int sample_rate) {
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  put32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  put32(out, 16);
  put16(out, kFormatPcm);
  put16(out, 1);
  put32(out, static_cast<std::uint32_t>(sample_rate));
  put32(out, static_cast<std::uint32_t>(sample_rate) * 2);
  put16(out, 2);
  put16(out, 16);
  out += "data";
  put32(out, data_bytes);
  for (double s : samples) {
    const double scaled = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
    put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
  }
  write_file(path, out);
}

std::vector<double> resample(std::span<const double> in, int in_rate, int out_rate,
                             const ResampleOptions &options) {
  if (in_rate <= 0 || out_rate <= 0) throw Error(ErrorKind::kInvalidArgument, "sample rate must be positive");
  const auto n_in = static_cast<std::uint64_t>(in.size());
  const std::uint64_t n_out =
      (n_in * static_cast<std::uint64_t>(out_rate) + static_cast<std::uint64_t>(in_rate) - 1) /
      static_cast<std::uint64_t>(in_rate);
  std::vector<double> out(n_out, 0.0);
  if (n_in == 0) return out;
  if (in_rate == out_rate) {
    std::copy(in.begin(), in.end(), out.begin());
    return out;
  }

  static thread_local std::unique_ptr<KernelTable> kernel;
  static thread_local std::pair<int, double> kernel_key{0, 0.0};
  if (!kernel || kernel_key != std::pair{options.zero_crossings, options.kaiser_beta}) {
    kernel = std::make_unique<KernelTable>(options.zero_crossings, options.kaiser_beta);
    kernel_key = {options.zero_crossings, options.kaiser_beta};
  }

  // Cutoff in cycles per input sample, relative to the input Nyquist.
  const double cutoff = std::min(1.0, static_cast<double>(out_rate) / in_rate) * options.rolloff;
  const double half_width = options.zero_crossings / cutoff;  // in input samples
  const double step = static_cast<double>(in_rate) / out_rate;
  const auto last = static_cast<std::int64_t>(n_in) - 1;

  for (std::uint64_t n = 0; n < n_out; ++n) {
    const double t = static_cast<double>(n) * step;
    const auto lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(t - half_width)));
    const auto hi = std::min<std::int64_t>(last, static_cast<std::int64_t>(std::floor(t + half_width)));
    double acc = 0.0, weight = 0.0;
    for (std::int64_t k = lo; k <= hi; ++k) {
      const double w = (*kernel)((t - static_cast<double>(k)) * cutoff);
      acc += w * in[static_cast<std::size_t>(k)];
      weight += w;
    }
    out[n] = weight != 0.0 ? acc / weight : 0.0;
  }
  return out;
}

ResampleCounts resample_wav(const std::filesystem::path &in_path,
                            const std::filesystem::path &out_path, int target_rate) {
  int rate = 0;
  const auto samples = read_wav_mono(in_path, &rate);
  const auto out = resample(samples, rate, target_rate);
  write_wav_pcm16(out_path, out, target_rate);
  return {samples.size(), out.size()};
}

}  // namespace ipakit::audio
