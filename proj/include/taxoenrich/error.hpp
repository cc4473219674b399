/*
 * Copyright 2026 The taxoenrich Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace taxoenrich {

// Base for every error the library raises. Input problems (bad files, bad
// ids) derive from InputError so the CLI can map them to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

// A malformed line in one of the text interchange formats.
class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : InputError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Structural violations found while validating a taxonomy.
class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

class UnknownSynsetError : public InputError {
 public:
  explicit UnknownSynsetError(const std::string& id)
      : InputError("unknown synset id '" + id + "'"), id_(id) {}

  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

// The orphan word has no vector after every fallback.
class OovError : public Error {
 public:
  explicit OovError(const std::string& word)
      : Error("no embedding for '" + word + "'"), word_(word) {}

  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

}  // namespace taxoenrich
