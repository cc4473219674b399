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

#include <functional>
#include <iosfwd>
#include <string>

namespace taxoenrich {

// Writes through a sibling temporary file and renames it over `path`, so a
// failed write never leaves partial output behind.
void write_atomically(const std::string& path, const std::function<void(std::ostream&)>& writer);

}  // namespace taxoenrich
