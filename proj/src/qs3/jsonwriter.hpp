// Copyright 2026 The qs3 Authors
//
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

#ifndef QS3_JSONWRITER_HPP_
#define QS3_JSONWRITER_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qs3 {

// Serializes a double with 17 significant digits, enough to reproduce the
// bit pattern on read-back.  General-purpose JSON libraries prefer the
// shortest round-tripping form, which varies in length; reports here must
// be byte-stable across writers, so the width is pinned instead.
std::string json_number(double v);

// Streaming JSON emitter with deterministic output: no whitespace, keys in
// insertion order, doubles through json_number.  The caller is responsible
// for well-formedness (keys only inside objects, one root value); nesting
// and comma placement are tracked internally.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(int v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v);

  const std::string& str() const { return out_; }
  std::string take() { return std::move(out_); }

 private:
  void item();  // comma bookkeeping before any value or key

  std::string out_;
  std::vector<bool> fresh_;  // per level: no element written yet
  bool after_key_ = false;
};

}  // namespace qs3

#endif  // QS3_JSONWRITER_HPP_
