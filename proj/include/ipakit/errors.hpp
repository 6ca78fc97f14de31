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

#ifndef IPAKIT_ERRORS_HPP_
#define IPAKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ipakit {

// Every failure raised by the library carries one of these kinds; the C API
// maps them one-to-one onto ipakit_status codes.
enum class ErrorKind {
  kInvalidArgument,
  kIo,
  kLoad,
  kOutOfVocabulary,
  kSegmentation,
  kParse,
  kTransliteration,
  kIngest,
  kDecode,
  kConfig,
  kMismatch,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed feature table (bad row, illegal symbol, duplicate phone).
class LoadError : public Error {
 public:
  explicit LoadError(const std::string &what) : Error(ErrorKind::kLoad, what) {}
};

class OutOfVocabulary : public Error {
 public:
  explicit OutOfVocabulary(const std::string &phone)
      : Error(ErrorKind::kOutOfVocabulary, "phone not in inventory: '" + phone + "'"),
        phone_(phone) {}
  const std::string &phone() const noexcept { return phone_; }

 private:
  std::string phone_;
};

/// Strict segmentation hit a character no inventory phone starts with.
class SegmentationError : public Error {
 public:
  SegmentationError(std::size_t position, const std::string &character)
      : Error(ErrorKind::kSegmentation,
              "cannot segment character '" + character + "' at position " +
                  std::to_string(position)),
        position_(position), character_(character) {}
  std::size_t position() const noexcept { return position_; }
  const std::string &character() const noexcept { return character_; }

 private:
  std::size_t position_;
  std::string character_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string &what)
      : Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class TransliterationError : public Error {
 public:
  TransliterationError(std::size_t position, const std::string &character)
      : Error(ErrorKind::kTransliteration,
              "no rule matches '" + character + "' at position " +
                  std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class IngestError : public Error {
 public:
  explicit IngestError(const std::string &what) : Error(ErrorKind::kIngest, what) {}
};

class DecodeError : public Error {
 public:
  explicit DecodeError(const std::string &what) : Error(ErrorKind::kDecode, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &what) : Error(ErrorKind::kConfig, what) {}
};

/// Reference and hypothesis key sets disagree.
class MismatchError : public Error {
 public:
  explicit MismatchError(const std::string &what) : Error(ErrorKind::kMismatch, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string &what) : Error(ErrorKind::kIo, what) {}
};

}  // namespace ipakit

#endif  // IPAKIT_ERRORS_HPP_
