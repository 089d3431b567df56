// Copyright 2026 The otoc Authors
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

#include "otoc/parallel.h"

#include <atomic>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

namespace otoc {
namespace {

TEST(ParallelFor, VisitsEveryIndexOnce) {
    for (int threads : {1, 2, 5}) {
        std::vector<std::atomic<int>> hits(97);
        parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, threads);
        for (const auto &h : hits) {
            EXPECT_EQ(h.load(), 1);
        }
    }
    parallel_for(0, [](std::size_t) { FAIL(); }, 3);
}

TEST(ParallelFor, RethrowsBodyException) {
    EXPECT_THROW(parallel_for(
                     20,
                     [](std::size_t i) {
                         if (i == 7) {
                             throw std::runtime_error("boom");
                         }
                     },
                     3),
                 std::runtime_error);
}

TEST(DefaultThreads, OverrideAndRestore) {
    set_default_threads(3);
    EXPECT_EQ(default_threads(), 3);
    set_default_threads(0);
    EXPECT_GE(default_threads(), 1);
}

TEST(KahanSum, CompensatesCancellation) {
    KahanSum k;
    k.add(1.0);
    for (int i = 0; i < 1000; i++) {
        k.add(1e-16);
    }
    EXPECT_NEAR(k.value(), 1.0 + 1e-13, 1e-16);
}

}  // namespace
}  // namespace otoc
