#pragma once

// Complex vectors, column-sparse square matrices, measurement and
// distribution distance. Matrices store columns: column q is the image of
// the basis vector |q>, which is how automaton transitions are written.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qfa {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kClosedFormTolerance = 1e-12;

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t dimension) : amps_(dimension) {}
  explicit StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {}

  static StateVector basis(std::size_t dimension, std::size_t index);

  std::size_t dimension() const noexcept { return amps_.size(); }
  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }

  double norm_squared() const noexcept;
  double norm() const noexcept;
  bool is_finite() const noexcept;

  StateVector& operator+=(const StateVector& other);
  StateVector& operator-=(const StateVector& other);
  StateVector& operator*=(Complex factor);

  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<Complex> amps_;
};

/// <a, b> with the conjugate on the left argument.
Complex inner_product(const StateVector& a, const StateVector& b);

struct MatrixEntry {
  std::size_t row;
  Complex value;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t dimension = 0) : columns_(dimension) {}

  static SquareMatrix identity(std::size_t dimension);
  /// Row-major dense input; exact zeros are not stored.
  static SquareMatrix from_dense(std::size_t dimension, std::span<const Complex> row_major);

  std::size_t dimension() const noexcept { return columns_.size(); }
  std::size_t nonzeros() const noexcept;

  Complex at(std::size_t row, std::size_t col) const;
  void set(std::size_t row, std::size_t col, Complex value);

  std::span<const MatrixEntry> column(std::size_t col) const { return columns_.at(col); }
  /// Entries may arrive in any order; they are sorted and zeros dropped.
  void set_column(std::size_t col, std::vector<MatrixEntry> entries);
  StateVector column_vector(std::size_t col) const;

  bool is_finite() const noexcept;
  SquareMatrix adjoint() const;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::vector<std::vector<MatrixEntry>> columns_;
};

StateVector apply(const SquareMatrix& m, const StateVector& v);

/// Largest |(M^H M - I)_{ij}| together with the column where it occurs.
struct UnitarityDeviation {
  double magnitude = 0.0;
  std::size_t column = 0;
};
UnitarityDeviation unitarity_deviation(const SquareMatrix& m);
bool is_unitary(const SquareMatrix& m, double tol = kDefaultTolerance);

/// Fills every column not listed in `specified` so that the result is
/// unitary. Specified columns are copied verbatim; the rest are an
/// orthonormal basis of their complement, built greedily from e_0, e_1, ...
/// Throws NotCompletableError when the specified columns are not
/// orthonormal within `tol`.
SquareMatrix complete_unitary(const SquareMatrix& partial,
                              std::span<const std::size_t> specified,
                              double tol = kDefaultTolerance);

SquareMatrix tensor_product(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix direct_sum(std::span<const SquareMatrix> blocks);

enum class HaltClass : std::uint8_t { non_halting, accepting, rejecting };

/// Assignment of every basis index to one of the three observable classes.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<HaltClass> classes) : classes_(std::move(classes)) {}

  /// Throws InvalidArgument on overlapping or out-of-range indices.
  static Partition from_sets(std::size_t dimension,
                             std::span<const std::size_t> accepting,
                             std::span<const std::size_t> rejecting);

  std::size_t dimension() const noexcept { return classes_.size(); }
  HaltClass operator[](std::size_t i) const { return classes_[i]; }
  std::size_t count(HaltClass c) const noexcept;

 private:
  std::vector<HaltClass> classes_;
};

struct OutcomeDistribution {
  double p_acc = 0.0;
  double p_rej = 0.0;
  double p_non = 0.0;

  double total() const noexcept { return p_acc + p_rej + p_non; }
};

struct Measurement {
  OutcomeDistribution probabilities;
  // Un-renormalized projections onto each class.
  StateVector accepting;
  StateVector rejecting;
  StateVector non_halting;
};

Measurement measure(const StateVector& v, const Partition& partition);

/// Sum of absolute coordinate differences, in [0, 2].
double tv_distance(const OutcomeDistribution& a, const OutcomeDistribution& b);

}  // namespace qfa
