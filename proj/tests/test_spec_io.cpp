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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "fibtree/spec_io.hpp"
#include "test_helpers.hpp"

using namespace fibtree;
using namespace fibtree::testing;

TEST_CASE("matrix documents parse") {
  const std::string text = R"({
    "alphabet": ["c1", "c2"],
    "A1": [[1, 1], [1, 0]],
    "A2": [[1, 1], [1, 0]],
    "metadata": {"name": "golden mean"}
  })";
  const SpecDocument doc = parse_spec_document(text);
  CHECK(doc.alphabet == std::vector<std::string>{"c1", "c2"});
  REQUIRE(doc.matrices.has_value());
  CHECK(doc.matrices->first(1, 1) == 0);
  CHECK(doc.metadata.at("name") == "golden mean");
  CHECK(to_spec(doc) == golden_mean_spec());
}

TEST_CASE("triple documents parse") {
  const std::string text = R"({
    "alphabet": ["a", "b"],
    "triples": [["a", "a", "a"], ["b", "b", "b"]]
  })";
  const SpecDocument doc = parse_spec_document(text);
  CHECK_FALSE(doc.matrices.has_value());
  REQUIRE(doc.triples.size() == 2);
  const MarkovFibSpec spec = to_spec(doc);
  CHECK(spec.triples == std::vector<Triple>{{0, 0, 0}, {1, 1, 1}});
  CHECK(spec.provenance == Provenance::Raw);
}

TEST_CASE("documents round-trip through canonical serialization") {
  auto raw = try_spec(letters(2), {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}});
  REQUIRE(raw.has_value());
  for (const MarkovFibSpec& spec :
       {golden_mean_spec(), identity_spec_k2(), full_spec_k2(), *raw}) {
    const SpecDocument doc = document_from_spec(spec);
    const std::string text = serialize_spec_document(doc);
    const SpecDocument back = parse_spec_document(text);
    CHECK(to_spec(back) == spec);
    CHECK(serialize_spec_document(back) == text);
    CHECK(spec_digest(back) == spec_digest(doc));
  }
}

TEST_CASE("digest ignores formatting and key order, tracks content") {
  const std::string pretty = R"({
    "alphabet": ["c1", "c2"],
    "A1": [[1, 1], [1, 0]],
    "A2": [[1, 1], [1, 0]]
  })";
  const std::string permuted =
      R"({"A2":[[1,1],[1,0]],"alphabet":["c1","c2"],"A1":[[1,1],[1,0]]})";
  CHECK(spec_digest(parse_spec_document(pretty)) ==
        spec_digest(parse_spec_document(permuted)));
  CHECK(spec_digest_hex(parse_spec_document(pretty)).size() == 16);

  const std::string different =
      R"({"A2":[[1,1],[1,1]],"alphabet":["c1","c2"],"A1":[[1,1],[1,0]]})";
  CHECK(spec_digest(parse_spec_document(pretty)) !=
        spec_digest(parse_spec_document(different)));

  // Metadata participates in the digest: same rule, different annotations.
  const std::string annotated =
      R"({"A2":[[1,1],[1,0]],"alphabet":["c1","c2"],"A1":[[1,1],[1,0]],"metadata":{"k":"v"}})";
  CHECK(spec_digest(parse_spec_document(pretty)) !=
        spec_digest(parse_spec_document(annotated)));
}

TEST_CASE("serialization sorts and dedupes triples") {
  const std::string text = R"({
    "alphabet": ["a", "b"],
    "triples": [["b", "b", "b"], ["a", "a", "a"], ["b", "b", "b"]]
  })";
  const std::string canonical = serialize_spec_document(parse_spec_document(text));
  const std::string expected =
      R"({"alphabet":["a","b"],"triples":[["a","a","a"],["b","b","b"]]})";
  CHECK(canonical == expected);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS((void)parse_spec_document("not json"), ParseError);
  CHECK_THROWS_AS((void)parse_spec_document("[1,2]"), ParseError);
  // Unknown key.
  CHECK_THROWS_AS((void)parse_spec_document(R"({"alphabet":["a"],"trples":[["a","a","a"]]})"),
                  ParseError);
  // Missing alphabet.
  CHECK_THROWS_AS((void)parse_spec_document(R"({"triples":[["a","a","a"]]})"), ParseError);
  // Empty and duplicated alphabets.
  CHECK_THROWS_AS((void)parse_spec_document(R"({"alphabet":[],"triples":[]})"), ParseError);
  CHECK_THROWS_AS(
      (void)parse_spec_document(R"({"alphabet":["a","a"],"triples":[["a","a","a"]]})"),
      ParseError);
  // Neither rule form, and both at once.
  CHECK_THROWS_AS((void)parse_spec_document(R"({"alphabet":["a"]})"), ParseError);
  CHECK_THROWS_AS(
      (void)parse_spec_document(
          R"({"alphabet":["a"],"A1":[[1]],"A2":[[1]],"triples":[["a","a","a"]]})"),
      ParseError);
  // A1 without A2.
  CHECK_THROWS_AS((void)parse_spec_document(R"({"alphabet":["a"],"A1":[[1]]})"), ParseError);
  // Dimension and entry errors.
  CHECK_THROWS_AS(
      (void)parse_spec_document(R"({"alphabet":["a","b"],"A1":[[1,1]],"A2":[[1,1],[1,1]]})"),
      ParseError);
  CHECK_THROWS_AS(
      (void)parse_spec_document(
          R"({"alphabet":["a","b"],"A1":[[1,2],[1,1]],"A2":[[1,1],[1,1]]})"),
      ParseError);
  // Unknown label inside a triple.
  CHECK_THROWS_AS((void)parse_spec_document(R"({"alphabet":["a"],"triples":[["a","a","x"]]})"),
                  ParseError);
  // Triple of the wrong arity.
  CHECK_THROWS_AS((void)parse_spec_document(R"({"alphabet":["a"],"triples":[["a","a"]]})"),
                  ParseError);
  // Metadata values must be strings.
  CHECK_THROWS_AS(
      (void)parse_spec_document(
          R"({"alphabet":["a"],"triples":[["a","a","a"]],"metadata":{"k":3}})"),
      ParseError);
}

TEST_CASE("loading reports missing files") {
  CHECK_THROWS_AS((void)load_spec_document("/nonexistent/path/spec.json"), ParseError);
}
