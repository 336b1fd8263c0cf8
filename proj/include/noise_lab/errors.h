// Copyright 2026 The Noise Lab Authors
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

#ifndef NOISE_LAB_ERRORS_H
#define NOISE_LAB_ERRORS_H

#include <stdexcept>
#include <string>

namespace noise_lab {

/// Raised when an enumeration or dense table would exceed a configured size cap.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a logarithm of a non-positive moment would be required.
struct NonPositiveMoment : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when the requested logical quantity is not determined by the measurements.
struct NotIdentifiable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace noise_lab

#endif
