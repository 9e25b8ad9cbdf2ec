// Copyright 2026 The aerial Authors
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

// Grunwald-Letnikov fractional derivative / integral over uniformly sampled
// signal histories.
//
//   D^a f(t_n) ~= dt^{-a} * sum_{k=0}^{N-1} w_k f(t_{n-k})
//   w_0 = 1,  w_k = w_{k-1} * (1 - (a + 1) / k)
//
// a > 0 differentiates, a < 0 integrates, a = 0 is the identity. The sum
// runs over the retained window only (short-memory principle); samples before
// the first one are taken as zero.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aerial/types.hpp"

namespace aerial {

template <typename Scalar>
struct GLWeights {
  Scalar alpha{};
  std::vector<Scalar> w;
};

inline void check_order(double alpha) {
  if (!std::isfinite(alpha)) {
    throw InvalidParameter("fractional order must be finite");
  }
  if (std::abs(alpha) >= 2.0) {
    throw InvalidParameter("fractional order must satisfy |alpha| < 2, got " + std::to_string(alpha));
  }
}

template <typename Scalar = double>
GLWeights<Scalar> gl_weights(Scalar alpha, std::size_t n) {
  check_order(static_cast<double>(alpha));
  if (n < 1) {
    throw InvalidParameter("gl_weights needs n >= 1");
  }
  GLWeights<Scalar> out{alpha, std::vector<Scalar>(n)};
  out.w[0] = Scalar(1);
  for (std::size_t k = 1; k < n; ++k) {
    out.w[k] = out.w[k - 1] * (Scalar(1) - (alpha + Scalar(1)) / Scalar(k));
  }
  return out;
}

/// Bounded history of uniformly spaced samples, oldest first.
///
/// Storage is a flat buffer of twice the capacity so the retained window is
/// always contiguous; eviction is an amortized O(1) block shift.
template <typename Scalar = double>
class SampleHistory {
 public:
  SampleHistory(Scalar dt, std::size_t capacity) : dt_(dt), capacity_(capacity) {
    if (!(dt > Scalar(0)) || !std::isfinite(static_cast<double>(dt))) {
      throw InvalidParameter("sample spacing must be positive");
    }
    if (capacity == 0) {
      throw InvalidParameter("history capacity must be positive");
    }
    buffer_.reserve(2 * capacity_);
  }

  void append(Scalar value) {
    if (!std::isfinite(static_cast<double>(value))) {
      throw InvalidParameter("non-finite sample");
    }
    if (buffer_.size() == 2 * capacity_) {
      buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(capacity_));
    }
    buffer_.push_back(value);
  }

  void clear() { buffer_.clear(); }

  Scalar dt() const { return dt_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return std::min(buffer_.size(), capacity_); }
  bool empty() const { return buffer_.empty(); }
  Scalar newest() const { return buffer_.back(); }

  /// Retained window, oldest first.
  std::span<const Scalar> samples() const {
    const std::size_t n = size();
    return std::span<const Scalar>(buffer_.data() + (buffer_.size() - n), n);
  }

 private:
  Scalar dt_;
  std::size_t capacity_;
  std::vector<Scalar> buffer_;
};

/// GL operator of fixed order with its weights precomputed for a window.
template <typename Scalar = double>
class GLOperator {
 public:
  GLOperator(Scalar alpha, Scalar dt, std::size_t capacity)
      : alpha_(alpha), scale_(std::pow(dt, -alpha)) {
    auto weights = gl_weights<Scalar>(alpha, capacity).w;
    reversed_.assign(weights.rbegin(), weights.rend());
  }

  Scalar alpha() const { return alpha_; }

  /// Applies the operator at the newest sample; an empty history yields zero.
  Scalar apply(const SampleHistory<Scalar>& h) const {
    const auto f = h.samples();
    const std::size_t n = std::min(f.size(), reversed_.size());
    if (n == 0) {
      return Scalar(0);
    }
    const Scalar* w = reversed_.data() + (reversed_.size() - n);
    const Scalar* x = f.data() + (f.size() - n);
    Scalar acc(0);
    for (std::size_t i = 0; i < n; ++i) {
      acc += w[i] * x[i];
    }
    return scale_ * acc;
  }

 private:
  Scalar alpha_;
  Scalar scale_;
  std::vector<Scalar> reversed_;
};

template <typename Scalar>
Scalar frac_derivative(const SampleHistory<Scalar>& h, Scalar alpha) {
  check_order(static_cast<double>(alpha));
  if (h.empty()) {
    throw EmptyInput("fractional operator applied to an empty history");
  }
  const auto f = h.samples();
  const auto w = gl_weights<Scalar>(alpha, f.size()).w;
  const std::size_t n = f.size();
  Scalar acc(0);
  for (std::size_t k = 0; k < n; ++k) {
    acc += w[k] * f[n - 1 - k];
  }
  return std::pow(h.dt(), -alpha) * acc;
}

template <typename Scalar>
Scalar frac_integral(const SampleHistory<Scalar>& h, Scalar gamma) {
  if (!(gamma > Scalar(0) && gamma < Scalar(2))) {
    throw InvalidParameter("fractional integral order must lie in (0, 2)");
  }
  return frac_derivative(h, -gamma);
}

}  // namespace aerial
