#pragma once

// Shared test utilities: deterministic random states, least-squares fits,
// a characteristic-polynomial root oracle for the eigensolver, and a small
// CSV reader for the emitted datasets.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spectator/complex_matrix.hpp"
#include "spectator/states.hpp"

namespace testutil {

inline std::mt19937_64 make_rng(unsigned long long seed) { return std::mt19937_64(seed); }

inline spectator::TripartiteSpinState random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::array<spectator::Complex, 8> c{};
  for (auto& v : c) v = spectator::Complex{gauss(rng), gauss(rng)};
  return spectator::TripartiteSpinState(c);
}

inline spectator::TripartiteSpinState random_real_state(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::array<spectator::Complex, 8> c{};
  for (auto& v : c) v = spectator::Complex{gauss(rng), 0.0};
  return spectator::TripartiteSpinState(c);
}

struct LinFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

inline LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0, ss_tot = 0;
  for (size_t i = 0; i < n; ++i) {
    const double pred = f.intercept + f.slope * x[i];
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - my) * (y[i] - my);
  }
  f.r2 = 1.0 - ss_res / ss_tot;
  return f;
}

// Monic characteristic polynomial of a Hermitian matrix by the
// Faddeev-LeVerrier recurrence; coefficients ascending, p[n] = 1.
inline std::vector<double> charpoly(const spectator::ComplexMatrix& a) {
  const int n = a.dim();
  std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
  c[static_cast<size_t>(n)] = 1.0;
  spectator::ComplexMatrix m = spectator::ComplexMatrix::identity(n);  // M_0
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      // M_k = A (M_{k-1} + c_{n-k+1} I)
      spectator::ComplexMatrix t = m;
      for (int i = 0; i < n; ++i) t(i, i) += c[static_cast<size_t>(n - k + 1)];
      m = a * t;
    } else {
      m = a * m;
    }
    c[static_cast<size_t>(n - k)] = -m.trace().real() / k;
  }
  return c;
}

inline double poly_eval(const std::vector<double>& p, double x) {
  double v = 0.0;
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

// All roots of a real-rooted monic polynomial, descending: the extrema
// (roots of the derivative, found recursively) bracket the roots, and each
// bracket is bisected.
inline std::vector<double> real_roots_monic(const std::vector<double>& p) {
  const int deg = static_cast<int>(p.size()) - 1;
  if (deg == 1) return {-p[0]};

  std::vector<double> dp(static_cast<size_t>(deg));
  for (int i = 1; i <= deg; ++i) dp[static_cast<size_t>(i - 1)] = p[static_cast<size_t>(i)] * i;
  const double lead = dp.back();
  for (auto& v : dp) v /= lead;
  const std::vector<double> extrema = real_roots_monic(dp);

  double bound = 1.0;
  for (int i = 0; i < deg; ++i) bound = std::max(bound, std::abs(p[static_cast<size_t>(i)]));
  bound += 1.0;

  std::vector<double> edges;
  edges.push_back(-bound);
  for (auto it = extrema.rbegin(); it != extrema.rend(); ++it) edges.push_back(*it);
  edges.push_back(bound);

  std::vector<double> roots;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    double a = edges[i], b = edges[i + 1];
    double fa = poly_eval(p, a), fb = poly_eval(p, b);
    if (fa == 0.0) {
      roots.push_back(a);
      continue;
    }
    if (fa * fb > 0.0) continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      const double fm = poly_eval(p, mid);
      if (fm == 0.0 || b - a < 1e-15 * std::max(1.0, std::abs(mid))) {
        a = b = mid;
        break;
      }
      if (fa * fm < 0.0) {
        b = mid;
        fb = fm;
      } else {
        a = mid;
        fa = fm;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int col(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return static_cast<int>(i);
    }
    throw std::runtime_error("no column " + name);
  }
  std::vector<double> column(const std::string& name) const {
    const int c = col(name);
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r[static_cast<size_t>(c)]);
    return v;
  }
};

inline Csv parse_csv_text(const std::string& text) {
  Csv out;
  std::istringstream is(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      out.comments.push_back(line);
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!header_seen) {
      out.columns = cells;
      header_seen = true;
    } else {
      std::vector<double> row;
      row.reserve(cells.size());
      for (const auto& c : cells) row.push_back(std::stod(c));
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

inline Csv parse_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv_text(ss.str());
}

}  // namespace testutil
