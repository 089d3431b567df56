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

#ifndef OTOC_PARALLEL_H
#define OTOC_PARALLEL_H

#include <cstddef>
#include <functional>

namespace otoc {

/// OTOC_THREADS if set and positive, else the hardware concurrency.
int default_threads();

/// Overrides default_threads() for the calling process; 0 restores the default.
void set_default_threads(int threads);

/// Runs body(i) for i in [0, count). Callers write results into slot i and
/// reduce afterwards in index order, so results never depend on the
/// schedule. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body, int threads = 0);

/// Compensated summation.
class KahanSum {
  public:
    void add(double x) {
        double y = x - c_;
        double t = sum_ + y;
        c_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

}  // namespace otoc

#endif
