#pragma once

// Dense complex matrices of dimension 2, 4 or 8, a cyclic-Jacobi Hermitian
// eigensolver, density-matrix validation and qubit partial traces.
// Everything here is value-typed and reentrant.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <sstream>
#include <vector>

#include "spectator/errors.hpp"

namespace spectator {

using Complex = std::complex<double>;

namespace detail {
inline bool valid_matrix_dim(int dim) { return dim == 2 || dim == 4 || dim == 8; }
}  // namespace detail

class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {
    if (!detail::valid_matrix_dim(dim)) {
      throw std::invalid_argument("ComplexMatrix: dim must be 2, 4 or 8");
    }
  }

  static ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return dim_; }

  Complex& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
  const Complex& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& v : a_) v *= s;
    return *this;
  }
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.dim_;
    ComplexMatrix c(n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  // entrywise max |this - o|
  double max_abs_diff(const ComplexMatrix& o) const {
    double m = 0.0;
    for (size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - o.a_[i]));
    return m;
  }

  // max entrywise |A - A^dagger|
  double hermiticity_defect() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j)
        m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
  }

 private:
  int dim_;
  std::vector<Complex> a_;
};

struct EigResult {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // columns; m = V diag(values) V^dagger
};

// Cyclic Jacobi diagonalisation of a Hermitian matrix.  Dimensions here are
// at most 8, where the method converges in a handful of sweeps and needs no
// external dependency.
inline EigResult eig_hermitian(const ComplexMatrix& m, double tol = 1e-10) {
  const int n = m.dim();
  if (m.hermiticity_defect() > tol) {
    throw ContractError("eig_hermitian: input is not Hermitian within tolerance");
  }

  // Work on the exactly-Hermitian average so rounding in the input cannot
  // leak into complex diagonal entries.
  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(a.max_abs(), 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= 1e-16 * scale) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-18 * scale) continue;

        // Unitary plane rotation J with J(p,p)=J(q,q)=c, J(p,q)=s*u,
        // J(q,p)=-s*conj(u), u = apq/|apq|, chosen so (J^dag A J)(p,q) = 0.
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex u = apq / mag;

        // B = A J on columns p, q
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * std::conj(u) * akq;
          a(k, q) = s * u * akp + c * akq;
        }
        // A' = J^dag B on rows p, q
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * u * aqk;
          a(q, k) = s * std::conj(u) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (int k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * std::conj(u) * vkq;
          v(k, q) = s * u * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

  EigResult r{std::vector<double>(n), ComplexMatrix(n)};
  for (int c = 0; c < n; ++c) {
    r.values[c] = a(order[c], order[c]).real();
    for (int k = 0; k < n; ++k) r.vectors(k, c) = v(k, order[c]);
  }
  return r;
}

// Hermitian, unit-trace, positive-semidefinite matrix.  The contract is
// checked at construction; tolerance applies to all three conditions.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, double tolerance = 1e-10)
      : m_(std::move(m)), tol_(tolerance) {
    validate();
  }

  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }
  double tolerance() const { return tol_; }
  const Complex& operator()(int r, int c) const { return m_(r, c); }

  void validate() const {
    const double h = m_.hermiticity_defect();
    if (h > tol_) {
      throw ContractError("DensityMatrix: Hermiticity defect " + std::to_string(h));
    }
    const double tr = std::abs(m_.trace() - Complex{1.0, 0.0});
    if (tr > tol_) {
      throw ContractError("DensityMatrix: |Tr - 1| = " + std::to_string(tr));
    }
    const auto eig = eig_hermitian(m_, tol_);
    if (eig.values.back() < -tol_) {
      throw ContractError("DensityMatrix: min eigenvalue " + std::to_string(eig.values.back()));
    }
  }

 private:
  ComplexMatrix m_;
  double tol_;
};

// Spectrum prepared for x*ln(x): eigenvalues in [-1e-12, 0) are rounded to
// zero; anything more negative is treated as a genuine contract violation
// rather than quadrature round-off.
inline std::vector<double> clipped_spectrum(const DensityMatrix& rho) {
  auto eig = eig_hermitian(rho.matrix(), rho.tolerance());
  for (auto& v : eig.values) {
    if (v < 0.0) {
      if (v < -1e-12) {
        throw ContractError("clipped_spectrum: eigenvalue " + std::to_string(v) +
                            " below clip tolerance");
      }
      v = 0.0;
    }
  }
  return eig.values;
}

// Subsystem labels for tripartite states (row-major tensor order A x B x C).
inline constexpr int kSubsystemA = 0;
inline constexpr int kSubsystemB = 1;
inline constexpr int kSubsystemC = 2;

// Partial trace over qubit subsystems.  `keep` lists the subsystems to
// retain, strictly ascending, using the tensor order of the input (qubit 0
// is the most significant index bit).  The result preserves that order.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> keep) {
  const int dim = rho.dim();
  int n = 0;
  while ((1 << n) < dim) ++n;
  if ((1 << n) != dim) throw std::invalid_argument("partial_trace: dimension is not a power of 2");

  const int k = static_cast<int>(keep.size());
  if (k == 0 || k > n) throw std::invalid_argument("partial_trace: invalid keep selector");
  for (int i = 0; i < k; ++i) {
    if (keep[i] < 0 || keep[i] >= n || (i > 0 && keep[i] <= keep[i - 1])) {
      throw std::invalid_argument("partial_trace: invalid keep selector");
    }
  }

  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  }

  const int dk = 1 << k;
  const int dt = 1 << static_cast<int>(traced.size());
  ComplexMatrix out(dk);
  auto scatter = [&](int kept_bits, int traced_bits) {
    int idx = 0;
    for (int i = 0; i < k; ++i) {
      if (kept_bits & (1 << (k - 1 - i))) idx |= 1 << (n - 1 - keep[i]);
    }
    for (size_t i = 0; i < traced.size(); ++i) {
      if (traced_bits & (1 << (static_cast<int>(traced.size()) - 1 - static_cast<int>(i)))) {
        idx |= 1 << (n - 1 - traced[i]);
      }
    }
    return idx;
  };

  for (int r = 0; r < dk; ++r) {
    for (int c = 0; c < dk; ++c) {
      Complex acc = 0.0;
      for (int t = 0; t < dt; ++t) acc += rho(scatter(r, t), scatter(c, t));
      out(r, c) = acc;
    }
  }
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return DensityMatrix(partial_trace(rho.matrix(), std::span<const int>(keep.begin(), keep.size())),
                       rho.tolerance());
}

}  // namespace spectator
