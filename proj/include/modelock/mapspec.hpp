// Copyright 2026 The modelock Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string_view>

#include "modelock/circlemap.hpp"

namespace modelock {

/// Parses an inline map spec such as
///   `standard a=1/(4*pi)`
///   `trigpoly c0=0 a=[0, 0.01] b=[0.05]`
///   `rotation theta=0.37`
///   `conjrot theta=golden eps=0.1`
/// The leading word may also be given as `kind=<name>`.
/// Throws Error(parse_error) or Error(invalid_map).
CircleLift parse_map_spec(std::string_view text);

/// Reads a key/value map document: one `key = value` per line, `#` comments.
CircleLift load_map_file(const std::filesystem::path& path);

}  // namespace modelock
