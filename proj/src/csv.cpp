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

#include "modelock/csv.hpp"

#include "modelock/error.hpp"

namespace modelock {

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> columns)
    : out_(out), columns_(std::move(columns)) {}

void CsvWriter::comment(const std::string& text) {
  if (header_written_) throw Error(Errc::config_error, "CSV comments must precede the rows");
  out_ << "# " << text << '\n';
}

void CsvWriter::ensure_header() {
  if (header_written_) return;
  for (size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
  out_ << '\n';
  header_written_ = true;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_.size()) throw Error(Errc::config_error, "CSV row width mismatch");
  ensure_header();
  for (size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << fields[i];
  out_ << '\n';
}

}  // namespace modelock
