// Copyright 2026 The uaslab Authors
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

#ifndef UASLAB_ERRORS_HPP_
#define UASLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace uaslab {

// Configuration / precondition problems detected before an experiment runs.
// These map to CLI exit code 2.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A hard invariant failed while an experiment was running (exit code 1).
class invariant_violation : public std::runtime_error {
 public:
  explicit invariant_violation(const std::string& what)
      : std::runtime_error(what) {}
};

// File / stream failures (exit code 3).
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace uaslab

#endif  // UASLAB_ERRORS_HPP_
