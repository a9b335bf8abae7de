#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ftvol/error.hpp"
#include "ftvol/ftransform.hpp"
#include "support/oracles.hpp"

using namespace ftvol;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an ftvol::Error";
  return ErrorCode::Io;
}

std::vector<double> grid(int last) {
  std::vector<double> t;
  for (int k = 0; k <= last; ++k) t.push_back(k);
  return t;
}

const auto kSmallHat = FuzzyPartition::build_uniform(0, 4, 2, Shape::Hat);

}  // namespace

TEST(DirectDiscrete, ConstantSignal) {
  for (Shape shape : {Shape::Hat, Shape::ZShaped}) {
    const auto p = FuzzyPartition::build_uniform(0, 30, 4, shape);
    const auto t = grid(28);
    const std::vector<double> f(t.size(), 3.25);
    for (double c : direct_discrete(t, f, p).components) EXPECT_NEAR(c, 3.25, 1e-15);
  }
}

TEST(DirectDiscrete, LinearSignalSmallGrid) {
  const auto t = grid(4);
  const auto exact = direct_discrete(t, t, kSmallHat, Normalization::Exact);
  const auto paper = direct_discrete(t, t, kSmallHat, Normalization::Paper);
  // (1 * 0.5 + 2 * 1 + 3 * 0.5) / 2
  EXPECT_DOUBLE_EQ(exact.components[1], 2.0);
  EXPECT_DOUBLE_EQ(paper.components[1], 2.0);
  // boundary: exact = (0 * 1 + 1 * 0.5) / 1.5; paper divides by T = 2
  EXPECT_DOUBLE_EQ(exact.components[0], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(paper.components[0], 0.25);
  EXPECT_DOUBLE_EQ(exact.weights[1], 2.0);
}

TEST(DirectDiscrete, MatchesNaiveLoop) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  for (Shape shape : {Shape::Hat, Shape::ZShaped}) {
    const auto p = FuzzyPartition::build_uniform(0, 40, 2.5, shape);
    std::vector<double> t, f;
    for (double x = 0; x <= 40; x += 0.3) {
      t.push_back(x);
      f.push_back(u(rng));
    }
    const auto got = direct_discrete(t, f, p).components;
    const auto want = oracle::direct_discrete(p.nodes(), t, f, shape == Shape::ZShaped);
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
  }
}

TEST(DirectDiscrete, Errors) {
  const std::vector<double> sparse_t = {0.0, 4.0};
  const std::vector<double> sparse_f = {1.0, 1.0};
  EXPECT_EQ(code_of([&] { direct_discrete(sparse_t, sparse_f, kSmallHat); }),
            ErrorCode::EmptySupport);
  const std::vector<double> outside_t = {0.0, 1.0, 2.0, 5.0};
  const std::vector<double> outside_f(4, 1.0);
  EXPECT_EQ(code_of([&] { direct_discrete(outside_t, outside_f, kSmallHat); }),
            ErrorCode::OutOfDomain);
  EXPECT_EQ(code_of([&] { direct_discrete(outside_t, sparse_f, kSmallHat); }),
            ErrorCode::BadArgument);
}

TEST(DirectDiscrete, ModesAgreeOnInteriorNodes) {
  for (Shape shape : {Shape::Hat, Shape::ZShaped}) {
    for (int T : {2, 5, 21}) {
      const auto p = FuzzyPartition::over_samples(10 * T, T, shape);
      const auto t = grid(static_cast<int>(p.domain_end()));
      const auto f = oracle::random_returns(T, t.size());
      const auto exact = direct_discrete(t, f, p, Normalization::Exact);
      const auto paper = direct_discrete(t, f, p, Normalization::Paper);
      for (std::size_t i = 1; i + 1 < p.node_count(); ++i) {
        EXPECT_NEAR(exact.components[i], paper.components[i], 1e-12);
      }
      EXPECT_NE(exact.components.front(), paper.components.front());
    }
  }
}

TEST(DirectDiscrete, WeightedAverageBounds) {
  const auto p = FuzzyPartition::over_samples(200, 10, Shape::ZShaped);
  const auto t = grid(static_cast<int>(p.domain_end()));
  const auto f = oracle::random_returns(8, t.size());
  const auto ft = direct_discrete(t, f, p);
  for (std::size_t i = 0; i < p.node_count(); ++i) {
    double lo = 1e300, hi = -1e300;
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (p.membership(i, t[j]) > 0) {
        lo = std::min(lo, f[j]);
        hi = std::max(hi, f[j]);
      }
    }
    EXPECT_GE(ft.components[i], lo);
    EXPECT_LE(ft.components[i], hi);
  }
}

TEST(DirectDiscrete, Linearity) {
  const auto p = FuzzyPartition::over_samples(300, 7, Shape::Hat);
  const auto t = grid(static_cast<int>(p.domain_end()));
  const auto f = oracle::random_returns(1, t.size());
  const auto g = oracle::random_returns(2, t.size());
  const double alpha = -2.75;
  std::vector<double> combo(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) combo[j] = alpha * f[j] + g[j];
  for (auto mode : {Normalization::Exact, Normalization::Paper}) {
    const auto Ff = direct_discrete(t, f, p, mode);
    const auto Fg = direct_discrete(t, g, p, mode);
    const auto Fc = direct_discrete(t, combo, p, mode);
    for (std::size_t i = 0; i < p.node_count(); ++i) {
      EXPECT_NEAR(Fc.components[i], alpha * Ff.components[i] + Fg.components[i], 1e-12);
    }
    const auto inv_f = inverse_discrete(Ff, t);
    const auto inv_g = inverse_discrete(Fg, t);
    const auto inv_c = inverse_discrete(Fc, t);
    for (std::size_t j = 0; j < t.size(); ++j) {
      EXPECT_NEAR(inv_c[j], alpha * inv_f[j] + inv_g[j], 1e-12);
    }
  }
}

TEST(InverseDiscrete, Basics) {
  FTransformResult ft{{0.0, 2.0, 4.0}, kSmallHat, Normalization::Exact, {}};
  EXPECT_DOUBLE_EQ(inverse_at(ft, 1.0), 1.0);
  EXPECT_EQ(inverse_at(ft, 2.0), 2.0);
  EXPECT_EQ(inverse_at(ft, 4.0), 4.0);
  FTransformResult flat{{1.5, 1.5, 1.5}, kSmallHat, Normalization::Exact, {}};
  for (double x : inverse_discrete(flat, std::vector<double>{0.0, 0.3, 1.7, 3.9}))
    EXPECT_NEAR(x, 1.5, 1e-15);
  EXPECT_EQ(code_of([&] { inverse_at(ft, 4.01); }), ErrorCode::OutOfDomain);
}

TEST(InverseDiscrete, ReconstructionImprovesWithFinerPartition) {
  // Lipschitz signal on a fine grid; halve T three times.
  std::vector<double> t, f;
  for (int k = 0; k <= 1024; ++k) {
    const double x = k / 64.0;
    t.push_back(x);
    f.push_back(std::sin(x) + 0.3 * std::abs(x - 7.3));
  }
  double previous = 1e300;
  for (double T : {4.0, 2.0, 1.0, 0.5}) {
    const auto p = FuzzyPartition::build_uniform(0, 16, T, Shape::Hat);
    const auto back = inverse_discrete(direct_discrete(t, f, p), t);
    double worst = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) worst = std::max(worst, std::abs(back[j] - f[j]));
    EXPECT_LT(worst, previous) << "T=" << T;
    previous = worst;
  }
}

TEST(DirectContinuous, ConstantAndLinear) {
  for (auto rule : {QuadratureRule::Simpson, QuadratureRule::Trapezoid}) {
    const auto p = FuzzyPartition::build_uniform(1, 9, 2, Shape::ZShaped);
    for (double c : direct_continuous([](double) { return -0.7; }, p, {rule, 8}).components) {
      EXPECT_NEAR(c, -0.7, 1e-14);
    }
  }
  for (Shape shape : {Shape::Hat, Shape::ZShaped}) {
    const auto p = FuzzyPartition::build_uniform(0, 10, 2.5, shape);
    const auto ft = direct_continuous([](double x) { return x; }, p);
    // symmetric weights about each interior node return the node itself
    for (std::size_t i = 1; i + 1 < p.node_count(); ++i) {
      EXPECT_NEAR(ft.components[i], p.node(i), 1e-12);
    }
  }
}

TEST(DirectContinuous, BoundaryMatchesClosedForm) {
  // Hat on [0, T] with f(x) = x: int x (1 - x/T) / int (1 - x/T) = T / 3.
  const auto p = FuzzyPartition::build_uniform(0, 6, 3, Shape::Hat);
  const auto ft = direct_continuous([](double x) { return x; }, p);
  EXPECT_NEAR(ft.components[0], 1.0, 1e-12);
  EXPECT_NEAR(ft.components[2], 6.0 - 1.0, 1e-12);
}

TEST(DirectContinuous, QuadratureConverges) {
  const auto f = [](double x) { return std::exp(-x / 5.0) * std::cos(x / 3.0); };
  for (Shape shape : {Shape::Hat, Shape::ZShaped}) {
    const auto p = FuzzyPartition::build_uniform(0, 12, 1, shape);
    const auto coarse = direct_continuous(f, p, {QuadratureRule::Simpson, 64});
    const auto fine = direct_continuous(f, p, {QuadratureRule::Simpson, 128});
    for (std::size_t i = 0; i < p.node_count(); ++i) {
      EXPECT_LT(std::abs(coarse.components[i] - fine.components[i]), 1e-8);
    }
  }
}

TEST(DirectContinuous, DiscreteLimit) {
  // Dense sample grids approach the integral definition; the gap is O(h),
  // driven by the endpoint samples of the boundary nodes.
  const auto f = [](double x) { return x * x - 2.0 * x; };
  const auto p = FuzzyPartition::build_uniform(0, 8, 2, Shape::Hat);
  const auto continuous = direct_continuous(f, p);
  const auto gap = [&](int per_unit) {
    std::vector<double> t, v;
    for (int k = 0; k <= 8 * per_unit; ++k) {
      t.push_back(static_cast<double>(k) / per_unit);
      v.push_back(f(t.back()));
    }
    const auto discrete = direct_discrete(t, v, p);
    double worst = 0.0;
    for (std::size_t i = 0; i < p.node_count(); ++i) {
      worst = std::max(worst, std::abs(discrete.components[i] - continuous.components[i]));
    }
    return worst;
  };
  const double coarse = gap(1000), fine = gap(10000);
  EXPECT_LT(fine, 1e-3);
  EXPECT_NEAR(coarse / fine, 10.0, 1.0);
}

TEST(DirectContinuous, BadQuadratureSpec) {
  EXPECT_EQ(code_of([] {
              direct_continuous([](double) { return 0.0; }, kSmallHat,
                                {QuadratureRule::Simpson, 1});
            }),
            ErrorCode::BadQuadratureSpec);
  EXPECT_EQ(code_of([] {
              direct_continuous([](double) { return 0.0; }, kSmallHat,
                                {QuadratureRule::Simpson, 7});
            }),
            ErrorCode::BadQuadratureSpec);
}

TEST(ErrorFunctional, MinimizedByComponent) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  const auto p = FuzzyPartition::build_uniform(0, 20, 4, Shape::ZShaped);
  std::vector<double> t, f;
  for (double x = 0; x <= 20; x += 0.5) {
    t.push_back(x);
    f.push_back(u(rng));
  }
  const auto ft = direct_discrete(t, f, p);
  for (std::size_t i = 0; i < p.node_count(); ++i) {
    const double best = error_functional(t, f, p, i, ft.components[i]);
    for (double eps : {1e-3, 1e-2, 1e-1}) {
      EXPECT_GE(error_functional(t, f, p, i, ft.components[i] + eps), best);
      EXPECT_GE(error_functional(t, f, p, i, ft.components[i] - eps), best);
    }
  }
}

TEST(ErrorFunctional, ZeroResidualAndRangeCheck) {
  const auto t = grid(4);
  const std::vector<double> f(t.size(), 2.0);
  EXPECT_EQ(error_functional(t, f, kSmallHat, 1, 2.0), 0.0);
  EXPECT_EQ(code_of([&] { error_functional(t, f, kSmallHat, 3, 2.0); }),
            ErrorCode::IndexOutOfRange);
}

TEST(ErrorFunctional, ParabolaVertex) {
  // Phi(c) = a c^2 + b c + k exactly; three samples pin it down and the
  // vertex -b / 2a must be the component.
  const auto p = FuzzyPartition::build_uniform(0, 30, 5, Shape::Hat);
  const auto t = grid(30);
  const auto f = oracle::random_returns(77, t.size(), 1.0);
  const auto ft = direct_discrete(t, f, p);
  for (std::size_t i = 0; i < p.node_count(); ++i) {
    const double c0 = ft.components[i];
    const double h = 0.5;
    const double ym = error_functional(t, f, p, i, c0 - h);
    const double y0 = error_functional(t, f, p, i, c0);
    const double yp = error_functional(t, f, p, i, c0 + h);
    const double a = (yp - 2 * y0 + ym) / (2 * h * h);
    const double b = (yp - ym) / (2 * h);
    EXPECT_NEAR(c0 - b / (2 * a), c0, 1e-9);
  }
}
