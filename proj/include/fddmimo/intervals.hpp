// SPDX-License-Identifier: Apache-2.0
//
// fddmimo - support-aware downlink training simulator for FDD massive MIMO
// Copyright (C) 2026 The fddmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <vector>

namespace fddmimo
{

// Interval of angles in radians. Whether the upper end is included depends on context:
// scattering clusters are half-open [lo, hi), beam intervals are closed [lo, hi].
struct AngleInterval
{
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool operator==(const AngleInterval &) const = default;
};

using AngleSet = std::vector<AngleInterval>;

// Sorts and merges overlapping or touching closed intervals into maximal disjoint ones.
AngleSet merge_intervals(AngleSet intervals);

double total_length(const AngleSet &set);

// Closed [a.lo, a.hi] against closed [b.lo, b.hi].
bool intersects_closed(const AngleInterval &a, const AngleInterval &b);

// Closed [a.lo, a.hi] against half-open [b.lo, b.hi).
bool intersects_half_open(const AngleInterval &closed, const AngleInterval &half_open);

// Lebesgue measure of a \ b, both given as merged disjoint sets.
double excess_length(const AngleSet &a, const AngleSet &b);

// True when every point of `inner` lies in `outer` (up to tol at interval ends).
bool covers(const AngleSet &outer, const AngleSet &inner, double tol = 1e-12);

} // namespace fddmimo
