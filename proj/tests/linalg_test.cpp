#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qfa/error.hpp"
#include "qfa/linalg.hpp"
#include "qfa/random.hpp"

using namespace qfa;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

SquareMatrix hadamard() {
  const Complex m[] = {kH, kH, kH, -kH};
  return SquareMatrix::from_dense(2, m);
}

}  // namespace

TEST(StateVector, NormAndArithmetic) {
  StateVector v({Complex(0.6, 0), Complex(0, 0.8)});
  EXPECT_DOUBLE_EQ(v.norm_squared(), 1.0);
  auto w = v + StateVector::basis(2, 0);
  EXPECT_DOUBLE_EQ(w[0].real(), 1.6);
  w *= Complex(0, 1);
  EXPECT_DOUBLE_EQ(w[0].imag(), 1.6);
  EXPECT_THROW(StateVector::basis(2, 2), DimensionError);
}

TEST(StateVector, InnerProductConjugatesLeft) {
  StateVector a({Complex(0, 1), 0});
  StateVector b({Complex(0, 1), 0});
  EXPECT_EQ(inner_product(a, b), Complex(1, 0));
}

TEST(SquareMatrix, ColumnsAreImages) {
  SquareMatrix m(3);
  m.set_column(1, {{2, 1.0}, {0, 0.0}});
  EXPECT_EQ(m.nonzeros(), 1u);
  EXPECT_EQ(m.at(2, 1), Complex(1.0));
  const auto v = apply(m, StateVector::basis(3, 1));
  EXPECT_EQ(v[2], Complex(1.0));
}

TEST(SquareMatrix, AdjointAndDenseAgree) {
  const Complex entries[] = {1, Complex(0, 2), 3, 4};
  const auto m = SquareMatrix::from_dense(2, entries);
  const auto a = m.adjoint();
  EXPECT_EQ(a.at(1, 0), Complex(0, -2));
  EXPECT_EQ(a.at(0, 1), Complex(3));
}

TEST(Unitarity, DetectsDeviation) {
  EXPECT_TRUE(is_unitary(hadamard()));
  const Complex bad[] = {1, 0, 0, 0.5};
  const auto dev = unitarity_deviation(SquareMatrix::from_dense(2, bad));
  EXPECT_NEAR(dev.magnitude, 0.75, 1e-15);
  EXPECT_EQ(dev.column, 1u);
}

TEST(Completion, KeepsSpecifiedColumnsAndFillsGreedily) {
  SquareMatrix partial(2);
  partial.set_column(0, {{0, kH}, {1, kH}});
  const std::size_t given[] = {0};
  const auto u = complete_unitary(partial, given);
  EXPECT_TRUE(is_unitary(u, 1e-12));
  EXPECT_EQ(u.at(0, 0), Complex(kH));
  // e_0 minus its projection on the specified column, normalized.
  EXPECT_NEAR(u.at(0, 1).real(), kH, 1e-15);
  EXPECT_NEAR(u.at(1, 1).real(), -kH, 1e-15);
}

TEST(Completion, RejectsNonOrthogonalColumns) {
  SquareMatrix partial(3);
  partial.set_column(0, {{0, 1.0}});
  partial.set_column(1, {{0, kH}, {1, kH}});
  const std::size_t given[] = {0, 1};
  EXPECT_THROW(complete_unitary(partial, given), NotCompletableError);
}

TEST(Completion, RandomPartialIsometriesComplete) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.uniform_int(0, 5);
    // Columns of a random unitary built from a completion of one random vector.
    std::vector<MatrixEntry> col;
    double norm = 0;
    std::vector<Complex> raw(n);
    for (auto& x : raw) {
      x = Complex(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
      norm += std::norm(x);
    }
    for (std::size_t i = 0; i < n; ++i) col.push_back({i, raw[i] / std::sqrt(norm)});
    SquareMatrix partial(n);
    const std::size_t target = rng.uniform_int(0, n - 1);
    partial.set_column(target, col);
    const std::size_t given[] = {target};
    const auto u = complete_unitary(partial, given);
    EXPECT_LE(unitarity_deviation(u).magnitude, 1e-12);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(u.at(i, target), partial.at(i, target));
  }
}

TEST(TensorAndDirectSum, MatchDenseOracle) {
  const auto h = hadamard();
  const auto t = tensor_product(h, h);
  const auto d = oracle::dense(t);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      const double sign = ((r & c & 1) ^ ((r >> 1) & (c >> 1) & 1)) ? -1.0 : 1.0;
      EXPECT_NEAR(d[r][c].real(), 0.5 * sign, 1e-15);
    }
  }
  EXPECT_TRUE(is_unitary(t));
  const SquareMatrix blocks[] = {h, SquareMatrix::identity(1)};
  const auto s = direct_sum(blocks);
  EXPECT_TRUE(is_unitary(s));
  EXPECT_EQ(s.dimension(), 3u);
  EXPECT_EQ(s.at(2, 2), Complex(1));
  EXPECT_EQ(s.at(2, 0), Complex(0));
}

TEST(Measurement, SplitsWithoutRenormalizing) {
  const std::size_t acc[] = {0};
  const std::size_t rej[] = {1};
  const auto part = Partition::from_sets(3, acc, rej);
  StateVector v({0.5, Complex(0, 0.5), kH});
  const auto m = measure(v, part);
  EXPECT_NEAR(m.probabilities.p_acc, 0.25, 1e-15);
  EXPECT_NEAR(m.probabilities.p_rej, 0.25, 1e-15);
  EXPECT_NEAR(m.probabilities.p_non, 0.5, 1e-15);
  EXPECT_EQ(m.non_halting[2], Complex(kH));
  EXPECT_EQ(m.non_halting[0], Complex(0));
  EXPECT_THROW(measure(StateVector(2), part), DimensionError);

  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    StateVector w({Complex(rng.uniform01(), -rng.uniform01()), rng.uniform01(), Complex(0, rng.uniform01())});
    const auto r = measure(w, part);
    const auto& p = r.probabilities;
    EXPECT_NEAR(p.p_acc + p.p_rej + p.p_non, w.norm_squared(), 1e-12);
    EXPECT_EQ(inner_product(r.accepting, r.non_halting), Complex(0));
  }
}

TEST(Partition, RejectsOverlap) {
  const std::size_t both[] = {1};
  EXPECT_THROW(Partition::from_sets(3, both, both), InvalidArgument);
  const std::size_t out_of_range[] = {3};
  EXPECT_THROW(Partition::from_sets(3, out_of_range, {}), InvalidArgument);
}

TEST(Distance, SumOfAbsoluteDifferences) {
  EXPECT_DOUBLE_EQ(tv_distance({1, 0, 0}, {0, 1, 0}), 2.0);
  EXPECT_NEAR(tv_distance({0.5, 0.25, 0.25}, {0.25, 0.5, 0.25}), 0.5, 1e-15);
}
