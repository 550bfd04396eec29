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
#include "fibtree/spec_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace fibtree {

namespace {

using nlohmann::json;

Eigen::MatrixXi parse_matrix(const json& j, int k, const std::string& name) {
  if (!j.is_array() || static_cast<int>(j.size()) != k)
    throw ParseError(name + ": expected " + std::to_string(k) + " rows");
  Eigen::MatrixXi m(k, k);
  for (int r = 0; r < k; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != k)
      throw ParseError(name + ": row " + std::to_string(r) + " must have " +
                       std::to_string(k) + " entries");
    for (int c = 0; c < k; ++c) {
      const json& cell = row[static_cast<std::size_t>(c)];
      if (!cell.is_number_integer())
        throw ParseError(name + ": entries must be integers");
      const int v = cell.get<int>();
      if (v != 0 && v != 1) throw ParseError(name + ": entries must be 0 or 1");
      m(r, c) = v;
    }
  }
  return m;
}

}  // namespace

SpecDocument parse_spec_document(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("top level must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "alphabet" && key != "A1" && key != "A2" && key != "triples" &&
        key != "metadata")
      throw ParseError("unknown key '" + key + "'");
  }

  SpecDocument doc;
  if (!j.contains("alphabet") || !j["alphabet"].is_array() || j["alphabet"].empty())
    throw ParseError("alphabet: required nonempty array");
  std::set<std::string> seen;
  for (const json& label : j["alphabet"]) {
    if (!label.is_string() || label.get<std::string>().empty())
      throw ParseError("alphabet: labels must be nonempty strings");
    if (!seen.insert(label.get<std::string>()).second)
      throw ParseError("alphabet: duplicate label '" + label.get<std::string>() + "'");
    doc.alphabet.push_back(label.get<std::string>());
  }
  const int k = static_cast<int>(doc.alphabet.size());

  const bool has_m = j.contains("A1") || j.contains("A2");
  const bool has_t = j.contains("triples");
  if (has_m && has_t) throw ParseError("give either A1/A2 or triples, not both");
  if (!has_m && !has_t) throw ParseError("give either A1/A2 or triples");
  if (has_m) {
    if (!j.contains("A1") || !j.contains("A2"))
      throw ParseError("A1 and A2 must both be present");
    doc.matrices = {parse_matrix(j["A1"], k, "A1"), parse_matrix(j["A2"], k, "A2")};
  } else {
    if (!j["triples"].is_array()) throw ParseError("triples: expected array");
    for (const json& t : j["triples"]) {
      if (!t.is_array() || t.size() != 3)
        throw ParseError("triples: each entry must be [parent, child1, child2]");
      std::array<std::string, 3> labels;
      for (int s = 0; s < 3; ++s) {
        if (!t[static_cast<std::size_t>(s)].is_string())
          throw ParseError("triples: symbols must be labels");
        labels[static_cast<std::size_t>(s)] = t[static_cast<std::size_t>(s)].get<std::string>();
        if (std::find(doc.alphabet.begin(), doc.alphabet.end(),
                      labels[static_cast<std::size_t>(s)]) == doc.alphabet.end())
          throw ParseError("triples: unknown label '" + labels[static_cast<std::size_t>(s)] +
                           "'");
      }
      doc.triples.push_back(std::move(labels));
    }
  }

  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) throw ParseError("metadata: expected object");
    for (const auto& [key, value] : j["metadata"].items()) {
      if (!value.is_string()) throw ParseError("metadata: values must be strings");
      doc.metadata[key] = value.get<std::string>();
    }
  }
  return doc;
}

SpecDocument load_spec_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spec file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec_document(buf.str());
}

std::string serialize_spec_document(const SpecDocument& doc) {
  // json object keys are kept sorted by the underlying std::map, giving a
  // canonical byte form for equal documents.
  json j;
  j["alphabet"] = doc.alphabet;
  if (doc.matrices) {
    const auto& [a1, a2] = *doc.matrices;
    const int k = static_cast<int>(doc.alphabet.size());
    json j1 = json::array(), j2 = json::array();
    for (int r = 0; r < k; ++r) {
      json r1 = json::array(), r2 = json::array();
      for (int c = 0; c < k; ++c) {
        r1.push_back(a1(r, c));
        r2.push_back(a2(r, c));
      }
      j1.push_back(std::move(r1));
      j2.push_back(std::move(r2));
    }
    j["A1"] = std::move(j1);
    j["A2"] = std::move(j2);
  } else {
    auto index = [&](const std::string& label) {
      return std::find(doc.alphabet.begin(), doc.alphabet.end(), label) -
             doc.alphabet.begin();
    };
    std::vector<std::array<std::string, 3>> triples = doc.triples;
    std::sort(triples.begin(), triples.end(),
              [&](const auto& x, const auto& y) {
                return std::array{index(x[0]), index(x[1]), index(x[2])} <
                       std::array{index(y[0]), index(y[1]), index(y[2])};
              });
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
    json jt = json::array();
    for (const auto& t : triples) jt.push_back({t[0], t[1], t[2]});
    j["triples"] = std::move(jt);
  }
  if (!doc.metadata.empty()) j["metadata"] = doc.metadata;
  return j.dump();
}

std::uint64_t spec_digest(const SpecDocument& doc) {
  const std::string canonical = serialize_spec_document(doc);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string spec_digest_hex(const SpecDocument& doc) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(spec_digest(doc)));
  return buf;
}

MarkovFibSpec to_spec(const SpecDocument& doc) {
  Alphabet alphabet;
  alphabet.labels = doc.alphabet;
  if (doc.matrices) return spec_from_vertex_matrices(alphabet, doc.matrices->first,
                                                     doc.matrices->second);
  std::vector<Triple> triples;
  for (const auto& t : doc.triples) {
    Triple idx;
    for (int s = 0; s < 3; ++s)
      idx[static_cast<std::size_t>(s)] = alphabet.index_of(t[static_cast<std::size_t>(s)]);
    triples.push_back(idx);
  }
  return spec_from_triples(alphabet, std::move(triples));
}

SpecDocument document_from_spec(const MarkovFibSpec& spec) {
  SpecDocument doc;
  doc.alphabet = spec.alphabet.labels;
  if (spec.provenance == Provenance::VertexMatrices && spec.a1 && spec.a2) {
    doc.matrices = {*spec.a1, *spec.a2};
  } else {
    for (const Triple& t : spec.triples)
      doc.triples.push_back({spec.alphabet.labels[static_cast<std::size_t>(t[0])],
                             spec.alphabet.labels[static_cast<std::size_t>(t[1])],
                             spec.alphabet.labels[static_cast<std::size_t>(t[2])]});
  }
  return doc;
}

}  // namespace fibtree
