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
#include <string>
#include <string_view>
#include <vector>

namespace taxoenrich::text {

// Canonical key used for every lemma, vector token and Wiktionary word:
// Unicode NFC, full case folding, surrounding whitespace trimmed and
// internal whitespace runs replaced by a single '_'.
std::string normalize(std::string_view s);

// Splits a normalized key on '_' and '-' into its non-empty parts.
std::vector<std::string> subtokens(std::string_view normalized);

// Normalizes free text (a definition) and splits it into word tokens.
// Anything that is not a letter, digit or mark separates tokens.
std::vector<std::string> word_tokens(std::string_view s);

// Number of alphabetic code points.
std::size_t letter_count(std::string_view s);

// Number of code points.
std::size_t codepoint_count(std::string_view s);

// True when some token of the surface form (tokens separated by whitespace,
// '_' or '-') starts with an uppercase letter.
bool has_capitalized_token(std::string_view surface);

// True when the surface form spans several words (whitespace or '_').
bool is_multiword(std::string_view surface);

}  // namespace taxoenrich::text
