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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "aerial/frac_ops.hpp"

namespace aerial {
namespace {

// Binomial form of the weights: w_k = (-1)^k * Gamma(alpha + 1) / (Gamma(k + 1) Gamma(alpha - k + 1)).
double binomial_weight(double alpha, int k) {
  double c = 1.0;
  for (int j = 0; j < k; ++j) c *= (alpha - j) / (j + 1);
  return (k % 2 ? -1.0 : 1.0) * c;
}

SampleHistory<double> ramp(double dt, double t_end) {
  const auto n = static_cast<std::size_t>(std::llround(t_end / dt));
  SampleHistory<double> h(dt, n + 1);
  for (std::size_t k = 0; k <= n; ++k) h.append(k * dt);
  return h;
}

TEST(GLWeights, IntegerOrders) {
  const auto one = gl_weights(1.0, 4).w;
  EXPECT_EQ(one, (std::vector<double>{1.0, -1.0, 0.0, 0.0}));
  const auto zero = gl_weights(0.0, 3).w;
  EXPECT_EQ(zero, (std::vector<double>{1.0, 0.0, 0.0}));
}

TEST(GLWeights, HalfOrder) {
  const auto w = gl_weights(0.5, 4).w;
  const double expected[] = {1.0, -0.5, -0.125, -0.0625};
  for (int k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(w[k], expected[k]);
}

TEST(GLWeights, MatchesBinomialForm) {
  for (double alpha : {-0.6, -0.2, 0.3, 0.8, 1.4}) {
    const auto w = gl_weights(alpha, 30).w;
    for (int k = 0; k < 30; ++k) EXPECT_NEAR(w[k], binomial_weight(alpha, k), 1e-12) << alpha << " " << k;
  }
}

TEST(GLWeights, RejectsBadOrder) {
  EXPECT_THROW(gl_weights(std::numeric_limits<double>::quiet_NaN(), 3), InvalidParameter);
  EXPECT_THROW(gl_weights(std::numeric_limits<double>::infinity(), 3), InvalidParameter);
}

TEST(SampleHistory, KeepsNewestWindow) {
  SampleHistory<double> h(0.1, 3);
  for (int k = 1; k <= 5; ++k) h.append(k);
  ASSERT_EQ(h.size(), 3u);
  const auto s = h.samples();
  EXPECT_EQ(s[0], 3.0);
  EXPECT_EQ(s[2], 5.0);
  EXPECT_EQ(h.newest(), 5.0);
  EXPECT_THROW(h.append(std::numeric_limits<double>::quiet_NaN()), InvalidParameter);
}

TEST(FracDerivative, IdentityAndFirstDifference) {
  SampleHistory<double> h(1e-3, 10);
  h.append(1.0);
  h.append(3.7);
  EXPECT_DOUBLE_EQ(frac_derivative(h, 0.0), 3.7);

  SampleHistory<double> r(1e-3, 10);
  r.append(0.0);
  r.append(1e-3);
  EXPECT_NEAR(frac_derivative(r, 1.0), 1.0, 1e-12);
}

TEST(FracDerivative, HalfOrderOfRamp) {
  const double exact = 1.0 / std::tgamma(1.5);  // t^{1 - a} / Gamma(2 - a) at t = 1
  EXPECT_NEAR(exact, 1.1284, 1e-4);
  const double e1 = std::abs(frac_derivative(ramp(1e-3, 1.0), 0.5) - exact);
  const double e2 = std::abs(frac_derivative(ramp(5e-4, 1.0), 0.5) - exact);
  EXPECT_LT(e1 / exact, 0.01);
  EXPECT_GE(std::log2(e1 / e2), 0.9);
}

TEST(FracDerivative, EmptyHistoryThrows) {
  SampleHistory<double> h(1e-3, 4);
  EXPECT_THROW(frac_derivative(h, 0.5), EmptyInput);
  EXPECT_THROW(frac_integral(h, 0.5), EmptyInput);
}

TEST(FracIntegral, ConstantHistories) {
  const double dt = 1e-3;
  SampleHistory<double> two(dt, 1001), one(dt, 1001);
  for (int k = 0; k <= 1000; ++k) {
    two.append(2.0);
    one.append(1.0);
  }
  EXPECT_NEAR(frac_integral(two, 0.999999), 2.0, 0.01);
  const double exact = 1.0 / std::tgamma(1.5);  // t^g / Gamma(1 + g) at t = 1, g = 0.5
  EXPECT_LT(std::abs(frac_integral(one, 0.5) - exact) / exact, 0.01);
  EXPECT_THROW(frac_integral(one, 0.0), InvalidParameter);
  EXPECT_THROW(frac_integral(one, 2.0), InvalidParameter);
}

TEST(GLOperator, ColdStartIsZeroAndMatchesFreeFunction) {
  const double dt = 1e-3;
  GLOperator<double> op(0.4, dt, 50);
  SampleHistory<double> h(dt, 50);
  EXPECT_EQ(op.apply(h), 0.0);
  for (int k = 0; k < 80; ++k) {
    h.append(std::sin(0.1 * k));
    EXPECT_NEAR(op.apply(h), frac_derivative(h, 0.4), 1e-9);
  }
}

TEST(GLOperator, ShortMemoryTruncationConverges) {
  // A long window approaches the full-memory value of D^0.5 t.
  const double dt = 1e-3;
  const auto full = ramp(dt, 3.0);
  SampleHistory<double> windowed(dt, 2001);
  for (double x : full.samples()) windowed.append(x);
  const double exact = std::sqrt(3.0) / std::tgamma(1.5);
  EXPECT_LT(std::abs(frac_derivative(full, 0.5) - exact) / exact, 0.01);
  EXPECT_LT(std::abs(frac_derivative(windowed, 0.5) - exact) / exact, 0.2);
}

}  // namespace
}  // namespace aerial
