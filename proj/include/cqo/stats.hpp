// Copyright 2026 The cqo Authors
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

#pragma once

#include <span>
#include <vector>

namespace cqo {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double pearson_r = 0.0;  // NaN when either variable has zero variance
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);
double pearson(std::span<const double> x, std::span<const double> y);
// Ranks with ties sharing their average rank.
std::vector<double> ranks(std::span<const double> v);
double spearman(std::span<const double> x, std::span<const double> y);
double mean(std::span<const double> v);

}  // namespace cqo
