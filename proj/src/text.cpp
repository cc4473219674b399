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

#include "taxoenrich/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <stdexcept>

namespace taxoenrich::text {
namespace {

bool is_ascii(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

bool ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw std::runtime_error("ICU NFC normalizer unavailable");
  }
  return *n;
}

// NFC, case fold, NFC again (folding may produce non-composed sequences).
icu::UnicodeString fold_nfc(std::string_view s) {
  const icu::Normalizer2& norm = nfc();
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  icu::UnicodeString composed = norm.normalize(u, status);
  composed.foldCase(U_FOLD_CASE_DEFAULT);
  icu::UnicodeString out = norm.normalize(composed, status);
  if (U_FAILURE(status)) {
    throw std::runtime_error("ICU normalization failed");
  }
  return out;
}

template <typename Fn>
void for_each_codepoint(std::string_view s, Fn&& fn) {
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const auto n = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < n) {
    UChar32 c;
    U8_NEXT(p, i, n, c);
    if (c < 0) c = 0xFFFD;
    fn(c);
  }
}

bool is_word_char(UChar32 c) {
  return u_isalnum(c) || (U_GET_GC_MASK(c) & U_GC_M_MASK) != 0;
}

}  // namespace

std::string normalize(std::string_view s) {
  std::string out;
  if (is_ascii(s)) {
    out.reserve(s.size());
    bool pending_space = false;
    for (char c : s) {
      if (ascii_space(c)) {
        pending_space = true;
        continue;
      }
      if (pending_space && !out.empty()) out.push_back('_');
      pending_space = false;
      out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    }
    return out;
  }

  const icu::UnicodeString folded = fold_nfc(s);
  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < folded.length();) {
    const UChar32 c = folded.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !collapsed.isEmpty()) collapsed.append(static_cast<UChar>(u'_'));
    pending_space = false;
    collapsed.append(c);
  }
  collapsed.toUTF8String(out);
  return out;
}

std::vector<std::string> subtokens(std::string_view normalized) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : normalized) {
    if (c == '_' || c == '-') {
      if (!cur.empty()) parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) parts.push_back(std::move(cur));
  return parts;
}

std::vector<std::string> word_tokens(std::string_view s) {
  std::vector<std::string> tokens;
  const icu::UnicodeString folded = fold_nfc(s);
  icu::UnicodeString cur;
  auto flush = [&] {
    if (!cur.isEmpty()) {
      std::string utf8;
      cur.toUTF8String(utf8);
      tokens.push_back(std::move(utf8));
      cur.remove();
    }
  };
  for (int32_t i = 0; i < folded.length();) {
    const UChar32 c = folded.char32At(i);
    i += U16_LENGTH(c);
    if (is_word_char(c)) {
      cur.append(c);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::size_t letter_count(std::string_view s) {
  std::size_t n = 0;
  for_each_codepoint(s, [&](UChar32 c) {
    if (u_isalpha(c)) ++n;
  });
  return n;
}

std::size_t codepoint_count(std::string_view s) {
  std::size_t n = 0;
  for_each_codepoint(s, [&](UChar32) { ++n; });
  return n;
}

bool has_capitalized_token(std::string_view surface) {
  bool at_start = true;
  bool found = false;
  for_each_codepoint(surface, [&](UChar32 c) {
    if (found) return;
    if (u_isUWhiteSpace(c) || c == '_' || c == '-') {
      at_start = true;
      return;
    }
    if (at_start && (u_isupper(c) || u_istitle(c))) found = true;
    at_start = false;
  });
  return found;
}

bool is_multiword(std::string_view surface) {
  bool multi = false;
  bool seen_char = false;
  bool gap = false;
  for_each_codepoint(surface, [&](UChar32 c) {
    if (u_isUWhiteSpace(c) || c == '_') {
      if (seen_char) gap = true;
      return;
    }
    if (gap) multi = true;
    seen_char = true;
  });
  return multi;
}

}  // namespace taxoenrich::text
