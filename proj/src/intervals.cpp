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

#include "fddmimo/intervals.hpp"

#include <algorithm>

namespace fddmimo
{

AngleSet merge_intervals(AngleSet intervals)
{
    std::sort(intervals.begin(), intervals.end(),
              [](const AngleInterval &a, const AngleInterval &b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
    AngleSet out;
    for (const auto &iv : intervals)
    {
        if (iv.hi < iv.lo)
            continue;
        if (!out.empty() && iv.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

double total_length(const AngleSet &set)
{
    double sum = 0.0;
    for (const auto &iv : set)
        sum += iv.length();
    return sum;
}

bool intersects_closed(const AngleInterval &a, const AngleInterval &b)
{
    return a.lo <= b.hi && b.lo <= a.hi && a.lo <= a.hi && b.lo <= b.hi;
}

bool intersects_half_open(const AngleInterval &closed, const AngleInterval &half_open)
{
    return closed.lo <= closed.hi && half_open.lo < half_open.hi && half_open.lo <= closed.hi &&
           closed.lo < half_open.hi;
}

double excess_length(const AngleSet &a, const AngleSet &b)
{
    double overlap = 0.0;
    for (const auto &x : a)
        for (const auto &y : b)
        {
            const double lo = std::max(x.lo, y.lo);
            const double hi = std::min(x.hi, y.hi);
            if (hi > lo)
                overlap += hi - lo;
        }
    return total_length(a) - overlap;
}

bool covers(const AngleSet &outer, const AngleSet &inner, double tol)
{
    for (const auto &iv : inner)
    {
        const bool inside = std::any_of(outer.begin(), outer.end(), [&](const AngleInterval &o)
                                        { return o.lo <= iv.lo + tol && iv.hi <= o.hi + tol; });
        if (!inside)
            return false;
    }
    return true;
}

} // namespace fddmimo
