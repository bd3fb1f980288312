#include <gtest/gtest.h>

#include <boost/math/special_functions/digamma.hpp>

#include "leadlag/special.hpp"

using leadlag::digamma;

TEST(Digamma, AtOneIsNegativeEulerGamma) {
  EXPECT_NEAR(digamma(1.0), -0.5772156649015329, 1e-14);
  EXPECT_NEAR(digamma(2.0), 1.0 - leadlag::kEulerGamma, 1e-14);
}

TEST(Digamma, RecurrenceIdentity) {
  for (double x : {1.0, 2.5, 10.0, 0.3, 123.75}) {
    EXPECT_NEAR(digamma(x + 1.0) - digamma(x), 1.0 / x, 1e-10) << x;
  }
}

TEST(Digamma, MatchesBoostOverGrid) {
  for (double x = 1.0; x < 3000.0; x *= 1.07) {
    EXPECT_NEAR(digamma(x), boost::math::digamma(x), 1e-13 * std::max(1.0, std::abs(boost::math::digamma(x)))) << x;
  }
  for (int n = 1; n <= 2001; ++n) {
    EXPECT_NEAR(digamma(n), boost::math::digamma(static_cast<double>(n)), 1e-13 * std::max(1.0, std::abs(boost::math::digamma(static_cast<double>(n))))) << n;
  }
  for (double x = 0.05; x < 1.0; x += 0.05) {
    EXPECT_NEAR(digamma(x), boost::math::digamma(x), 1e-9) << x;
  }
}

TEST(Digamma, RejectsNonPositive) {
  EXPECT_THROW(digamma(0.0), leadlag::DataError);
  EXPECT_THROW(digamma(-2.5), leadlag::DataError);
}
