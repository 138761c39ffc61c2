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

#ifndef SMSE_RNG_HPP
#define SMSE_RNG_HPP

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace smse
{

using Engine = std::mt19937_64;

// Tags that separate independent random streams derived from one parent seed.
enum class StreamRole : std::uint64_t
{
    Geometry = 1,
    ChannelTaps = 2,
    EstimationNoise = 3,
    PilotNoise = 4,
    MutualInformation = 5,
    Trial = 6,
    SweepPoint = 7,
};

constexpr std::uint64_t key(StreamRole role) { return static_cast<std::uint64_t>(role); }

// Child seed = hash of (parent, key...) through std::seed_seq. Streams derived this way
// depend only on their key, never on the order in which they are requested.
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> keys);

Engine make_engine(std::uint64_t parent, std::initializer_list<std::uint64_t> keys);

// Circularly symmetric CN(0, variance): variance/2 per real dimension.
class ComplexNormal
{
  public:
    explicit ComplexNormal(double variance)
        : dist_(0.0, std::sqrt(0.5 * variance)) {}

    std::complex<double> operator()(Engine &engine)
    {
        const double re = dist_(engine);
        const double im = dist_(engine);
        return {re, im};
    }

  private:
    std::normal_distribution<double> dist_;
};

} // namespace smse

#endif
