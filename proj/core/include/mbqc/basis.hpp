// Copyright 2026 The mbqc-correlator Authors
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

#pragma once

#include <string_view>

namespace mbqc {

/// Single-qubit measurement bases used by measurement plans.  XEta is the
/// rotated observable cos(eta) X + sin(eta) Y = Uz(eta) X Uz(-eta).
enum class MeasurementBasis { X, Y, Z, XEta };

std::string_view name_of(MeasurementBasis b);
/// "X", "Y", "Z", "XEta"; throws ParseError otherwise.
MeasurementBasis parse_basis(std::string_view name);

}  // namespace mbqc
