// SPDX-License-Identifier: Apache-2.0
//
// smse - spectral efficiency laboratory for massive SC-SM MIMO uplink
// Copyright (C) 2026 The smse authors
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

#ifndef SMSE_BESSEL_HPP
#define SMSE_BESSEL_HPP

namespace smse
{

// Zero-order Bessel function of the first kind.
// Even in x; absolute error below 1e-14 on the real line.
double bessel_j0(double x);

} // namespace smse

#endif
