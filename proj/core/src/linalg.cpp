#include "qfa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfa/error.hpp"

namespace qfa {

namespace {

void require_same_dimension(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

struct RowEntry {
  std::size_t col;
  double re;
  double im;
};

// Maximum |<c_i, c_j> - delta_ij| over the listed columns. Works row by row so
// that block-structured matrices cost only the sum of their block products.
UnitarityDeviation gram_deviation(const std::vector<std::vector<MatrixEntry>>& columns,
                                  std::span<const std::size_t> selected) {
  const std::size_t n = columns.size();
  std::vector<bool> in_selection(n, false);
  for (auto c : selected) in_selection[c] = true;

  std::vector<std::vector<RowEntry>> rows(n);
  for (std::size_t c = 0; c < n; ++c) {
    if (!in_selection[c]) continue;
    for (const auto& e : columns[c]) rows[e.row].push_back({c, e.value.real(), e.value.imag()});
  }

  UnitarityDeviation worst;
  std::vector<double> acc_re(n, 0.0), acc_im(n, 0.0);
  std::vector<bool> touched_flag(n, false);
  std::vector<std::size_t> touched;
  for (auto j : selected) {
    for (const auto& e : columns[j]) {
      const double bre = e.value.real(), bim = e.value.imag();
      for (const auto& a : rows[e.row]) {
        if (a.col > j) break;
        // conj(a) * b
        acc_re[a.col] += a.re * bre + a.im * bim;
        acc_im[a.col] += a.re * bim - a.im * bre;
        if (!touched_flag[a.col]) {
          touched_flag[a.col] = true;
          touched.push_back(a.col);
        }
      }
    }
    if (!touched_flag[j]) {
      if (1.0 > worst.magnitude) worst = {1.0, j};
    }
    for (auto i : touched) {
      const double target = (i == j) ? 1.0 : 0.0;
      const double dev = std::hypot(acc_re[i] - target, acc_im[i]);
      if (dev > worst.magnitude) worst = {dev, j};
      acc_re[i] = acc_im[i] = 0.0;
      touched_flag[i] = false;
    }
    touched.clear();
  }
  return worst;
}

}  // namespace

StateVector StateVector::basis(std::size_t dimension, std::size_t index) {
  if (index >= dimension) throw DimensionError("basis index out of range");
  StateVector v(dimension);
  v[index] = 1.0;
  return v;
}

double StateVector::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

double StateVector::norm() const noexcept { return std::sqrt(norm_squared()); }

bool StateVector::is_finite() const noexcept {
  return std::all_of(amps_.begin(), amps_.end(), [](const Complex& a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
  });
}

StateVector& StateVector::operator+=(const StateVector& other) {
  require_same_dimension(dimension(), other.dimension(), "vector addition");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += other.amps_[i];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& other) {
  require_same_dimension(dimension(), other.dimension(), "vector subtraction");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] -= other.amps_[i];
  return *this;
}

StateVector& StateVector::operator*=(Complex factor) {
  for (auto& a : amps_) a *= factor;
  return *this;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  require_same_dimension(a.dimension(), b.dimension(), "inner product");
  Complex s{};
  for (std::size_t i = 0; i < a.dimension(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

SquareMatrix SquareMatrix::identity(std::size_t dimension) {
  SquareMatrix m(dimension);
  for (std::size_t i = 0; i < dimension; ++i) m.columns_[i].push_back({i, 1.0});
  return m;
}

SquareMatrix SquareMatrix::from_dense(std::size_t dimension, std::span<const Complex> row_major) {
  if (row_major.size() != dimension * dimension) {
    throw DimensionError("dense matrix needs dimension^2 entries");
  }
  SquareMatrix m(dimension);
  for (std::size_t c = 0; c < dimension; ++c) {
    for (std::size_t r = 0; r < dimension; ++r) {
      const Complex v = row_major[r * dimension + c];
      if (v != Complex{}) m.columns_[c].push_back({r, v});
    }
  }
  return m;
}

std::size_t SquareMatrix::nonzeros() const noexcept {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

Complex SquareMatrix::at(std::size_t row, std::size_t col) const {
  const auto& c = columns_.at(col);
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const MatrixEntry& e, std::size_t r) { return e.row < r; });
  return (it != c.end() && it->row == row) ? it->value : Complex{};
}

void SquareMatrix::set(std::size_t row, std::size_t col, Complex value) {
  if (row >= dimension() || col >= dimension()) throw DimensionError("matrix index out of range");
  auto& c = columns_[col];
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const MatrixEntry& e, std::size_t r) { return e.row < r; });
  if (it != c.end() && it->row == row) {
    if (value == Complex{}) {
      c.erase(it);
    } else {
      it->value = value;
    }
  } else if (value != Complex{}) {
    c.insert(it, {row, value});
  }
}

void SquareMatrix::set_column(std::size_t col, std::vector<MatrixEntry> entries) {
  if (col >= dimension()) throw DimensionError("column index out of range");
  std::erase_if(entries, [](const MatrixEntry& e) { return e.value == Complex{}; });
  std::sort(entries.begin(), entries.end(),
            [](const MatrixEntry& a, const MatrixEntry& b) { return a.row < b.row; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].row >= dimension()) throw DimensionError("row index out of range");
    if (i > 0 && entries[i].row == entries[i - 1].row) {
      throw InvalidArgument("duplicate row in column specification");
    }
  }
  columns_[col] = std::move(entries);
}

StateVector SquareMatrix::column_vector(std::size_t col) const {
  StateVector v(dimension());
  for (const auto& e : columns_.at(col)) v[e.row] = e.value;
  return v;
}

bool SquareMatrix::is_finite() const noexcept {
  for (const auto& c : columns_) {
    for (const auto& e : c) {
      if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) return false;
    }
  }
  return true;
}

SquareMatrix SquareMatrix::adjoint() const {
  SquareMatrix out(dimension());
  for (std::size_t c = 0; c < dimension(); ++c) {
    for (const auto& e : columns_[c]) out.columns_[e.row].push_back({c, std::conj(e.value)});
  }
  return out;
}

StateVector apply(const SquareMatrix& m, const StateVector& v) {
  require_same_dimension(m.dimension(), v.dimension(), "apply");
  StateVector out(v.dimension());
  for (std::size_t c = 0; c < m.dimension(); ++c) {
    const Complex x = v[c];
    if (x == Complex{}) continue;
    for (const auto& e : m.column(c)) out[e.row] += e.value * x;
  }
  return out;
}

UnitarityDeviation unitarity_deviation(const SquareMatrix& m) {
  std::vector<std::vector<MatrixEntry>> columns(m.dimension());
  std::vector<std::size_t> all(m.dimension());
  for (std::size_t c = 0; c < m.dimension(); ++c) {
    auto col = m.column(c);
    columns[c].assign(col.begin(), col.end());
    all[c] = c;
  }
  return gram_deviation(columns, all);
}

bool is_unitary(const SquareMatrix& m, double tol) {
  return m.is_finite() && unitarity_deviation(m).magnitude <= tol;
}

SquareMatrix complete_unitary(const SquareMatrix& partial, std::span<const std::size_t> specified,
                              double tol) {
  const std::size_t n = partial.dimension();
  std::vector<bool> is_specified(n, false);
  std::vector<std::size_t> given;
  for (auto c : specified) {
    if (c >= n) throw DimensionError("specified column out of range");
    if (!is_specified[c]) given.push_back(c);
    is_specified[c] = true;
  }
  std::sort(given.begin(), given.end());

  std::vector<std::vector<MatrixEntry>> columns(n);
  for (auto c : given) {
    auto col = partial.column(c);
    columns[c].assign(col.begin(), col.end());
  }
  const auto dev = gram_deviation(columns, given);
  if (dev.magnitude > tol) {
    throw NotCompletableError("specified images are not orthonormal (deviation " +
                              std::to_string(dev.magnitude) + " at column " +
                              std::to_string(dev.column) + ")");
  }

  SquareMatrix out(n);
  for (auto c : given) out.set_column(c, columns[c]);
  if (given.size() == n) return out;

  // Orthonormal set so far, with a row index for cheap projections.
  std::vector<std::vector<MatrixEntry>> basis;
  std::vector<std::vector<std::pair<std::size_t, Complex>>> row_members(n);
  auto add_to_basis = [&](std::vector<MatrixEntry> v) {
    const std::size_t id = basis.size();
    for (const auto& e : v) row_members[e.row].push_back({id, e.value});
    basis.push_back(std::move(v));
  };
  for (auto c : given) add_to_basis(columns[c]);

  std::vector<std::size_t> free_columns;
  for (std::size_t c = 0; c < n; ++c) {
    if (!is_specified[c]) free_columns.push_back(c);
  }

  // Some unscanned candidate always has residual^2 >= 1/(2n), so this
  // threshold never stalls the scan.
  const double min_residual_sq = 1.0 / (4.0 * static_cast<double>(n));

  std::vector<Complex> r(n);
  std::vector<bool> r_flag(n, false);
  std::vector<std::size_t> r_support;
  auto touch = [&](std::size_t i) {
    if (!r_flag[i]) {
      r_flag[i] = true;
      r_support.push_back(i);
    }
  };
  std::vector<Complex> coeff(n);
  std::vector<bool> coeff_flag(n, false);
  std::vector<std::size_t> coeff_support;

  std::size_t next_free = 0;
  for (std::size_t cand = 0; cand < n && next_free < free_columns.size(); ++cand) {
    r[cand] = 1.0;
    touch(cand);
    // Classical Gram-Schmidt against e_cand needs only the basis vectors with
    // a nonzero in row `cand`.
    for (const auto& [b, v] : row_members[cand]) {
      const Complex c = std::conj(v);
      for (const auto& e : basis[b]) {
        r[e.row] -= c * e.value;
        touch(e.row);
      }
    }
    // Second pass restores orthogonality lost to rounding.
    for (auto t : r_support) {
      if (r[t] == Complex{}) continue;
      for (const auto& [b, v] : row_members[t]) {
        coeff[b] += std::conj(v) * r[t];
        if (!coeff_flag[b]) {
          coeff_flag[b] = true;
          coeff_support.push_back(b);
        }
      }
    }
    for (auto b : coeff_support) {
      for (const auto& e : basis[b]) {
        r[e.row] -= coeff[b] * e.value;
        touch(e.row);
      }
      coeff[b] = Complex{};
      coeff_flag[b] = false;
    }
    coeff_support.clear();

    double norm_sq = 0.0;
    for (auto t : r_support) norm_sq += std::norm(r[t]);
    if (norm_sq >= min_residual_sq) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      std::vector<MatrixEntry> v;
      for (auto t : r_support) {
        const Complex x = r[t] * inv;
        if (std::abs(x) > 1e-15) v.push_back({t, x});
      }
      std::sort(v.begin(), v.end(),
                [](const MatrixEntry& a, const MatrixEntry& b) { return a.row < b.row; });
      out.set_column(free_columns[next_free++], v);
      add_to_basis(std::move(v));
    }
    for (auto t : r_support) {
      r[t] = Complex{};
      r_flag[t] = false;
    }
    r_support.clear();
  }
  if (next_free != free_columns.size()) {
    throw NotCompletableError("orthonormal extension did not span the complement");
  }
  return out;
}

SquareMatrix tensor_product(const SquareMatrix& a, const SquareMatrix& b) {
  const std::size_t na = a.dimension(), nb = b.dimension();
  SquareMatrix out(na * nb);
  for (std::size_t ja = 0; ja < na; ++ja) {
    for (std::size_t jb = 0; jb < nb; ++jb) {
      std::vector<MatrixEntry> col;
      col.reserve(a.column(ja).size() * b.column(jb).size());
      for (const auto& ea : a.column(ja)) {
        for (const auto& eb : b.column(jb)) {
          col.push_back({ea.row * nb + eb.row, ea.value * eb.value});
        }
      }
      out.set_column(ja * nb + jb, std::move(col));
    }
  }
  return out;
}

SquareMatrix direct_sum(std::span<const SquareMatrix> blocks) {
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.dimension();
  SquareMatrix out(total);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t c = 0; c < b.dimension(); ++c) {
      std::vector<MatrixEntry> col;
      col.reserve(b.column(c).size());
      for (const auto& e : b.column(c)) col.push_back({e.row + offset, e.value});
      out.set_column(c + offset, std::move(col));
    }
    offset += b.dimension();
  }
  return out;
}

Partition Partition::from_sets(std::size_t dimension, std::span<const std::size_t> accepting,
                               std::span<const std::size_t> rejecting) {
  std::vector<HaltClass> classes(dimension, HaltClass::non_halting);
  for (auto i : accepting) {
    if (i >= dimension) throw InvalidArgument("accepting index out of range");
    classes[i] = HaltClass::accepting;
  }
  for (auto i : rejecting) {
    if (i >= dimension) throw InvalidArgument("rejecting index out of range");
    if (classes[i] == HaltClass::accepting) {
      throw InvalidArgument("overlapping partition: index " + std::to_string(i) +
                            " is both accepting and rejecting");
    }
    classes[i] = HaltClass::rejecting;
  }
  return Partition(std::move(classes));
}

std::size_t Partition::count(HaltClass c) const noexcept {
  return static_cast<std::size_t>(std::count(classes_.begin(), classes_.end(), c));
}

Measurement measure(const StateVector& v, const Partition& partition) {
  require_same_dimension(v.dimension(), partition.dimension(), "measure");
  Measurement m{{}, StateVector(v.dimension()), StateVector(v.dimension()),
                StateVector(v.dimension())};
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    const double p = std::norm(v[i]);
    switch (partition[i]) {
      case HaltClass::accepting:
        m.accepting[i] = v[i];
        m.probabilities.p_acc += p;
        break;
      case HaltClass::rejecting:
        m.rejecting[i] = v[i];
        m.probabilities.p_rej += p;
        break;
      case HaltClass::non_halting:
        m.non_halting[i] = v[i];
        m.probabilities.p_non += p;
        break;
    }
  }
  return m;
}

double tv_distance(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  return std::abs(a.p_acc - b.p_acc) + std::abs(a.p_rej - b.p_rej) + std::abs(a.p_non - b.p_non);
}

}  // namespace qfa
