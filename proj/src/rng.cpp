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

#include "smse/rng.hpp"

#include <vector>

namespace smse
{

namespace
{

std::seed_seq make_seed_seq(std::uint64_t parent, std::initializer_list<std::uint64_t> keys)
{
    std::vector<std::uint32_t> words;
    words.reserve(2 * (keys.size() + 1));
    auto push = [&](std::uint64_t v)
    {
        words.push_back(static_cast<std::uint32_t>(v));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(parent);
    for (auto k : keys)
        push(k);
    return std::seed_seq(words.begin(), words.end());
}

} // namespace

std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> keys)
{
    auto seq = make_seed_seq(parent, keys);
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

Engine make_engine(std::uint64_t parent, std::initializer_list<std::uint64_t> keys)
{
    auto seq = make_seed_seq(parent, keys);
    return Engine(seq);
}

} // namespace smse
