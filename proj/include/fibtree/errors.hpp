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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fibtree {

// Base class for every error thrown by the library.  Each condition gets its
// own type so callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A node word contains a letter outside {1,2}.
class InvalidLetter : public Error {
 public:
  using Error::Error;
};

// A requested tree height exceeds the configured depth cap.
class DepthCap : public Error {
 public:
  using Error::Error;
};

// A brute-force enumeration would exceed the configured candidate cap.
class WorkCap : public Error {
 public:
  using Error::Error;
};

// Malformed matrix input: wrong dimensions or entries outside {0,1}.
class BadMatrix : public Error {
 public:
  using Error::Error;
};

// Viability pruning removed every symbol; the shift has no points.
class EmptyShift : public Error {
 public:
  using Error::Error;
};

// Simple-subsystem enumeration would exceed the configured cap.
class EnumerationCap : public Error {
 public:
  EnumerationCap(const std::string& what, std::uint64_t count)
      : Error(what), would_produce(count) {}
  std::uint64_t would_produce;
};

// Power iteration failed to reach tolerance within the iteration cap.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

// Empirical entropy estimators are undefined: every count is 0 or 1.
class DegenerateLogs : public Error {
 public:
  using Error::Error;
};

// Template parameters lie on (or within tolerance of) a decision boundary,
// so the admissible pattern set is not well defined.
class OnBoundary : public Error {
 public:
  using Error::Error;
};

// The closed-form and machinery entropy routes disagree.  Indicates a bug;
// must never fire.
class RouteDisagreement : public Error {
 public:
  using Error::Error;
};

// Malformed spec document (JSON shape, labels, or cross-field validation).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fibtree
