// Copyright 2026 The cdsc Authors
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

#include <vector>

namespace cdsc {

struct FssPoint {
    double p = 0.0;
    int L = 0;
    double rate = 0.0;
    double sigma = 0.0;  // standard error of rate; zeros mean unweighted
};

/// p_logical = A + B x + C x^2 with x = (p - p_th) L^(1/nu).
struct FssFit {
    double p_th = 0.0;
    double nu = 0.0;
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double chi2 = 0.0;
    double reduced_chi2 = 0.0;  // chi2 / (points - 5)
    /// From the curvature of chi2 in (p_th, nu), scaled up by reduced_chi2
    /// when that exceeds 1. NaN when the curvature is not positive definite.
    double p_th_err = 0.0;
    double nu_err = 0.0;
    double p_th_nu_corr = 0.0;
    /// The optimum sits on the edge of the search box, the curvature is
    /// degenerate, or the residual is far above the noise level.
    bool low_confidence = false;
};

/// Weighted least squares over (A, B, C) for each trial (p_th, nu): a grid
/// of 200 p_th values spanning the data and 100 nu values in [0.5, 3], then a
/// pattern-search refinement. Rows are sorted first, so input order does not
/// matter. Needs >= 2 sizes with >= 3 rates each (std::invalid_argument);
/// throws NumericError when the design matrix is degenerate at the optimum.
FssFit fss_fit(std::vector<FssPoint> points);

}  // namespace cdsc
