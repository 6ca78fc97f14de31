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

#ifndef IPAKIT_WAV_HPP_
#define IPAKIT_WAV_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace ipakit::audio {

/// Format fields of a PCM wave file.
struct WavInfo {
  int sample_rate = 0;
  int channels = 0;
  int bits_per_sample = 0;
  std::uint64_t frames = 0;
  double duration_s() const noexcept {
    return sample_rate > 0 ? static_cast<double>(frames) / sample_rate : 0.0;
  }
};

/// Reads only the header. Throws DecodeError for non-PCM or corrupt files.
WavInfo probe_wav(const std::filesystem::path &path);
/// frames / sample rate.
double probe_duration(const std::filesystem::path &path);

/// Decodes to mono in [-1, 1); multichannel input is averaged.
std::vector<double> read_wav_mono(const std::filesystem::path &path, int *sample_rate);
/// 16-bit PCM mono.
void write_wav_pcm16(const std::filesystem::path &path, std::span<const double> samples,
                     int sample_rate);

struct ResampleOptions {
  /// Zero crossings of the sinc kernel on each side, at the output cutoff.
  int zero_crossings = 32;
  /// Cutoff as a fraction of the lower Nyquist frequency.
  double rolloff = 0.95;
  double kaiser_beta = 8.0;
};

/// Band-limited interpolation with a Kaiser-windowed sinc. Output length is
/// ceil(in.size() * out_rate / in_rate). Kernel weights are renormalized per
/// output sample, so constant input maps to the same constant.
std::vector<double> resample(std::span<const double> in, int in_rate, int out_rate,
                             const ResampleOptions &options = {});

struct ResampleCounts {
  std::uint64_t in_samples = 0;
  std::uint64_t out_samples = 0;
};

ResampleCounts resample_wav(const std::filesystem::path &in_path,
                            const std::filesystem::path &out_path, int target_rate = 16000);

}  // namespace ipakit::audio

#endif  // IPAKIT_WAV_HPP_
