// Copyright 2026 The Kappanet Authors.
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

#ifndef KAPPANET_ERRORS_HPP_
#define KAPPANET_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace kappanet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed documents, invalid models, out-of-domain references.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Semantically impossible requests: conditioning on an impossible event,
// evidence on a non-root, inconsistent evidence or clamping.
class InferenceError : public Error {
 public:
  using Error::Error;
};

// A configurable resource guard was hit (joint-space enumeration cap,
// cutset instantiation cap).
class CapExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace kappanet

#endif  // KAPPANET_ERRORS_HPP_
