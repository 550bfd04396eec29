/* Copyright 2026 The fibtree authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibtree/shift.hpp"

namespace fibtree {

// On-disk rule description.  JSON object with:
//   "alphabet":  nonempty array of unique symbol labels
//   either "A1" and "A2" (square 0/1 matrices over the alphabet)
//   or "triples" (array of [parent, child1, child2] label triples)
//   optional "metadata": object with string values
struct SpecDocument {
  std::vector<std::string> alphabet;
  std::optional<std::pair<Eigen::MatrixXi, Eigen::MatrixXi>> matrices;
  std::vector<std::array<std::string, 3>> triples;
  std::map<std::string, std::string> metadata;
};

// Parses and validates a JSON document.  Throws ParseError with the
// offending field on any shape or cross-field problem.
SpecDocument parse_spec_document(const std::string& json_text);

// Reads and parses a file; IO failures also surface as ParseError.
SpecDocument load_spec_document(const std::string& path);

// Canonical form: sorted keys, sorted triples, no insignificant whitespace.
// Equal documents serialize to equal bytes.
std::string serialize_spec_document(const SpecDocument& doc);

// FNV-1a (64-bit) over the canonical serialization.
std::uint64_t spec_digest(const SpecDocument& doc);
std::string spec_digest_hex(const SpecDocument& doc);

// Builds the pruned internal rule.  EmptyShift propagates.
MarkovFibSpec to_spec(const SpecDocument& doc);

// Document for an internal rule: matrix form when the rule came from
// vertex matrices, triple form otherwise.
SpecDocument document_from_spec(const MarkovFibSpec& spec);

}  // namespace fibtree
