/* Copyright 2026 The Palate Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/


#ifndef PALATE_ERRORS_H_
#define PALATE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace palate {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed an out-of-range parameter (bandwidth, fraction, alpha...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Unreadable, malformed or mutually inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// A numerical routine failed (e.g. eigendecomposition did not converge).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace palate

#endif  // PALATE_ERRORS_H_
