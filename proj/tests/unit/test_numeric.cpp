#include <cmath>
#include <random>

#include "doctest.h"
#include "noether/dual.hpp"
#include "noether/matrix.hpp"

using namespace noether;

TEST_CASE("inverse of the identity") {
  CHECK(max_abs_diff(inverse(Matrix<double>::identity(2)), Matrix<double>::identity(2)) == 0.0);
}

TEST_CASE("inverse of the Maurer-Cartan matrix at kappa 1, tau 2") {
  const Matrix<double> K{{1.0, 0.5}, {-2.0, 0.0}};
  const Matrix<double> expected{{0.0, -0.5}, {2.0, 1.0}};
  CHECK(max_abs_diff(inverse(K), expected) < 1e-15);
  CHECK(max_abs_diff(K * inverse(K), Matrix<double>::identity(2)) < 1e-15);
}

TEST_CASE("rank-deficient matrix is singular") {
  const Matrix<double> M{{1.0, 1.0}, {1.0, 1.0}};
  try {
    (void)inverse(M);
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
}

TEST_CASE("inverse on random well-conditioned matrices of every dimension") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 1; n <= 5; ++n) {
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      // Diagonal dominance keeps the condition number moderate.
      Matrix<double> M(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = u(rng) + (i == j ? 2.0 * n : 0.0);
      worst = std::max(worst, max_abs_diff(M * inverse(M), Matrix<double>::identity(n)));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("determinant of small matrices") {
  CHECK(determinant(Matrix<double>{{2.0, 1.0}, {1.0, 1.0}}) == doctest::Approx(1.0));
  const Matrix<double> M{{1.0, 2.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 3.0}, {0.0, 0.0, 2.0, 0.0}, {1.0, 0.0, 0.0, 1.0}};
  CHECK(determinant(M) == doctest::Approx(14.0));
}

TEST_CASE("dual derivatives of elementary functions") {
  CHECK(derivative_of([](auto x) { return x * x; }, 3.0) == 6.0);
  CHECK(derivative_of([](auto x) { return decltype(x)(1.0) / x; }, 2.0) == -0.25);
  const double root = derivative_of([](auto x) {
    using std::sqrt;
    return sqrt(x);
  }, 4.0);
  CHECK(root == 0.25);
  CHECK(std::abs(root - (std::sqrt(4.0 + 1e-6) - std::sqrt(4.0 - 1e-6)) / 2e-6) < 1e-6);
}

TEST_CASE("nested duals give second derivatives") {
  using D2 = Dual<Dual<double>>;
  const D2 x(Dual<double>(3.0, 1.0), Dual<double>(1.0, 0.0));
  const D2 y = x * x * x;
  CHECK(y.tangent().tangent() == doctest::Approx(18.0));
}

TEST_CASE("dual sqrt at zero with a nonzero tangent is a branch point") {
  CHECK_THROWS_AS((void)sqrt(Dual<double>(0.0, 1.0)), Error);
}

TEST_CASE("dual derivative of random compositions matches central differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  const auto f = [](auto x) {
    using std::sqrt;
    using T = decltype(x);
    return (x * x - T(0.3) * x) / (x + T(1.0)) + sqrt(x * T(2.0) + T(1.0)) - T(1.0) / (x * x);
  };
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const double x = u(rng);
    const double h = 1e-6;
    const double fd = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d = derivative_of(f, x);
    worst = std::max(worst, std::abs(d - fd) / std::max(1.0, std::abs(d)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("complex duals") {
  const Complex z(1.0, 2.0);
  const Complex d = derivative_of([](auto x) { return x * x; }, z);
  CHECK(std::abs(d - Complex(2.0, 4.0)) < 1e-15);
}
