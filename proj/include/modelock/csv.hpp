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

#include <ostream>
#include <string>
#include <vector>

namespace modelock {

/// Minimal CSV emitter: `#` header comments, a column line, then rows.
/// Fields are written verbatim (numbers never need quoting); LF endings.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> columns);

  /// Must precede the first row.
  void comment(const std::string& text);
  void row(const std::vector<std::string>& fields);

 private:
  void ensure_header();

  std::ostream& out_;
  std::vector<std::string> columns_;
  bool header_written_ = false;
};

}  // namespace modelock
