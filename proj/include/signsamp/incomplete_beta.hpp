// Copyright 2026 The Authors.
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

namespace signsamp {

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1], by the
// modified Lentz evaluation of its continued fraction. Throws kDomainError
// outside that domain.
double regularized_incomplete_beta(double a, double b, double x);

// Area of a spherical cap of angular radius delta on the unit sphere in R^B,
// as a fraction of the whole sphere: 0.5 * I_{sin^2 delta}((B-1)/2, 1/2).
// Requires B >= 2 and delta in (0, pi/2]; throws kDomainError otherwise.
double spherical_cap_ratio(int b, double delta);

}  // namespace signsamp
