// Copyright 2026 The fbandit Authors
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

#ifndef FBANDIT_ERRORS_HPP_
#define FBANDIT_ERRORS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fbandit {

// Base class for every error raised by the library.
class BanditError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDistribution : public BanditError {
 public:
  using BanditError::BanditError;
};

class InvalidParameters : public BanditError {
 public:
  using BanditError::BanditError;
};

class ImpossibleObservation : public BanditError {
 public:
  using BanditError::BanditError;
};

class PolicyHorizonMismatch : public BanditError {
 public:
  using BanditError::BanditError;
};

class HorizonTooSmall : public BanditError {
 public:
  using BanditError::BanditError;
};

class EmptyGrid : public BanditError {
 public:
  using BanditError::BanditError;
};

// Raised when an exhaustive strategy enumeration would exceed its cap.
// `count` saturates at UINT64_MAX when the true count does not fit.
class EnumerationTooLarge : public BanditError {
 public:
  EnumerationTooLarge(std::uint64_t count, std::uint64_t cap)
      : BanditError("strategy enumeration too large: " +
                    (count == UINT64_MAX ? std::string(">= 2^64")
                                         : std::to_string(count)) +
                    " trees exceeds cap " + std::to_string(cap)),
        count_(count),
        cap_(cap) {}

  std::uint64_t count() const { return count_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t count_;
  std::uint64_t cap_;
};

}  // namespace fbandit

#endif  // FBANDIT_ERRORS_HPP_
