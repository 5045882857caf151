//
// Copyright 2026 The fairembed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef FAIREMBED_ERRORS_H_
#define FAIREMBED_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fairembed {

// Base class for all toolkit failures. The subclasses map onto distinct CLI
// exit codes, so callers should throw the most specific one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Input file content violates its format.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Numerical failure: degenerate PCA input, non-finite loss, solver did not
// converge.
class MathError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace fairembed

#endif  // FAIREMBED_ERRORS_H_
