#pragma once

// Tripartite spin in-states on the A (electron) x B (positron) x C
// (spectator) product space.
//
// Basis ordering, fixed once for the whole project: the eight kets
// |s_A s_B s_C> are enumerated with Up = 0, Down = 1 and A the most
// significant bit,
//   index 4*a + 2*b + c:
//   0 uuu, 1 uud, 2 udu, 3 udd, 4 duu, 5 dud, 6 ddu, 7 ddd.
// Every explicit matrix elsewhere in the library refers to this ordering.
// Coefficients are complex; the named constructors happen to be real.

#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "spectator/complex_matrix.hpp"
#include "spectator/kinematics.hpp"

namespace spectator {

class TripartiteSpinState {
 public:
  // Renormalises projectively; a (near) zero vector is an argument error.
  explicit TripartiteSpinState(const std::array<Complex, 8>& c) : c_(c) {
    double n2 = 0.0;
    for (const auto& v : c_) n2 += std::norm(v);
    if (n2 < 1e-24) throw std::invalid_argument("TripartiteSpinState: zero coefficient vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& v : c_) v *= inv;
  }

  const std::array<Complex, 8>& coefficients() const { return c_; }
  Complex coeff(int i) const { return c_[static_cast<size_t>(i)]; }
  Complex coeff(Spin a, Spin b, Spin c) const {
    return c_[static_cast<size_t>(4 * index(a) + 2 * index(b) + index(c))];
  }

  bool is_real(double tol = 1e-12) const {
    for (const auto& v : c_) {
      if (std::abs(v.imag()) > tol) return false;
    }
    return true;
  }

  // |S><S| as an 8x8 matrix
  ComplexMatrix projector() const {
    ComplexMatrix p(8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) p(i, j) = c_[i] * std::conj(c_[j]);
    return p;
  }

 private:
  std::array<Complex, 8> c_;
};

inline TripartiteSpinState make_ghz() {
  std::array<Complex, 8> c{};
  c[0] = c[7] = 1.0 / std::numbers::sqrt2;
  return TripartiteSpinState(c);
}

inline TripartiteSpinState make_w() {
  std::array<Complex, 8> c{};
  c[3] = c[5] = c[6] = 1.0 / std::sqrt(3.0);
  return TripartiteSpinState(c);
}

// [cos(a)|u> + sin(a)|d>]_A x [cos(eta)|ud> + sin(eta)|du>]_BC
inline TripartiteSpinState make_a_psi(double alpha, double eta) {
  std::array<Complex, 8> c{};
  c[1] = std::cos(alpha) * std::cos(eta);
  c[2] = std::cos(alpha) * std::sin(eta);
  c[5] = std::sin(alpha) * std::cos(eta);
  c[6] = std::sin(alpha) * std::sin(eta);
  return TripartiteSpinState(c);
}

// [cos(a)|u> + sin(a)|d>]_A x [cos(eta)|uu> + sin(eta)|dd>]_BC
inline TripartiteSpinState make_a_phi(double alpha, double eta) {
  std::array<Complex, 8> c{};
  c[0] = std::cos(alpha) * std::cos(eta);
  c[3] = std::cos(alpha) * std::sin(eta);
  c[4] = std::sin(alpha) * std::cos(eta);
  c[7] = std::sin(alpha) * std::sin(eta);
  return TripartiteSpinState(c);
}

inline TripartiteSpinState make_general(const std::array<Complex, 8>& c) {
  return TripartiteSpinState(c);
}

// Two-party state on B x C (basis uu, ud, du, dd), normalised on input.
struct BCState {
  std::array<Complex, 4> d{};

  explicit BCState(const std::array<Complex, 4>& coeffs) : d(coeffs) {
    double n2 = 0.0;
    for (const auto& v : d) n2 += std::norm(v);
    if (n2 < 1e-24) throw std::invalid_argument("BCState: zero coefficient vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& v : d) v *= inv;
  }
};

// Statistical mixture of pure tripartite states with fixed weights.
struct SpinEnsemble {
  struct Component {
    double weight;
    TripartiteSpinState state;
  };
  std::vector<Component> components;

  static SpinEnsemble pure(TripartiteSpinState s) {
    SpinEnsemble e;
    e.components.push_back({1.0, std::move(s)});
    return e;
  }
};

// Unpolarised A times a pure BC state: the even mixture of A=up x d and
// A=down x d, to be combined before normalisation downstream.
inline SpinEnsemble make_mixture_bc(const BCState& bc) {
  std::array<Complex, 8> up{}, down{};
  for (int i = 0; i < 4; ++i) {
    up[i] = bc.d[static_cast<size_t>(i)];
    down[i + 4] = bc.d[static_cast<size_t>(i)];
  }
  SpinEnsemble e;
  e.components.push_back({0.5, TripartiteSpinState(up)});
  e.components.push_back({0.5, TripartiteSpinState(down)});
  return e;
}

// ---------------------------------------------------------------------------
// CLI state specification strings:
//   ghz | w | a-psi[:+|-] | a-phi[:+|-] | general:<8 complex> | bc-mixture:<4 complex>
// Complex entries are comma separated, e.g. "general:0.5,0,0,0.5i,0,0,0,-0.5+0.5i".

namespace detail {

inline Complex parse_complex(const std::string& tok) {
  if (tok.empty()) throw std::invalid_argument("empty complex literal");
  // split into one or two signed terms; an 'i'/'j' suffix marks the imaginary one
  double re = 0.0, im = 0.0;
  size_t pos = 0;
  bool any = false;
  while (pos < tok.size()) {
    size_t start = pos;
    if (tok[pos] == '+' || tok[pos] == '-') ++pos;
    while (pos < tok.size() && (std::isdigit(static_cast<unsigned char>(tok[pos])) || tok[pos] == '.')) ++pos;
    if (pos < tok.size() && (tok[pos] == 'e' || tok[pos] == 'E')) {
      ++pos;
      if (pos < tok.size() && (tok[pos] == '+' || tok[pos] == '-')) ++pos;
      while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) ++pos;
    }
    bool imag = false;
    if (pos < tok.size() && (tok[pos] == 'i' || tok[pos] == 'j')) {
      imag = true;
      ++pos;
    }
    if (pos == start) throw std::invalid_argument("bad complex literal '" + tok + "'");
    std::string num = tok.substr(start, pos - start - (imag ? 1 : 0));
    if (num.empty() || num == "+" || num == "-") {
      if (!imag) throw std::invalid_argument("bad complex literal '" + tok + "'");
      num += "1";  // bare "i", "+i", "-i"
    }
    double val = 0.0;
    try {
      size_t used = 0;
      val = std::stod(num, &used);
      if (used != num.size()) throw std::invalid_argument(num);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad complex literal '" + tok + "'");
    }
    (imag ? im : re) += val;
    any = true;
  }
  if (!any) throw std::invalid_argument("bad complex literal '" + tok + "'");
  return {re, im};
}

template <size_t N>
std::array<Complex, N> parse_complex_list(const std::string& body) {
  std::array<Complex, N> out{};
  size_t pos = 0, count = 0;
  while (count < N) {
    const size_t comma = body.find(',', pos);
    const std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                        : comma - pos);
    out[count++] = parse_complex(tok);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (count != N || body.find(',', pos) != std::string::npos) {
    throw std::invalid_argument("expected " + std::to_string(N) + " complex entries");
  }
  return out;
}

}  // namespace detail

struct StateSpec {
  enum class Kind { Ghz, W, APsi, APhi, General, BcMixture };

  Kind kind = Kind::W;
  double eta = std::numbers::pi / 4.0;  // for APsi / APhi; 0 means "use config default"
  bool eta_fixed = false;               // tag carried an explicit :+ / :-
  std::array<Complex, 8> general_c{};
  std::array<Complex, 4> bc_d{};
  std::string tag;

  static StateSpec parse(const std::string& spec) {
    StateSpec s;
    s.tag = spec;
    const size_t colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);

    auto parse_sign = [&](const std::string& b) {
      if (b.empty()) return;  // defer to the --eta flag
      if (b == "+") {
        s.eta = std::numbers::pi / 4.0;
      } else if (b == "-") {
        s.eta = 3.0 * std::numbers::pi / 4.0;
      } else {
        throw std::invalid_argument("state '" + head + "' takes ':+' or ':-'");
      }
      s.eta_fixed = true;
    };

    if (head == "ghz") {
      s.kind = Kind::Ghz;
    } else if (head == "w") {
      s.kind = Kind::W;
    } else if (head == "a-psi") {
      s.kind = Kind::APsi;
      parse_sign(body);
    } else if (head == "a-phi") {
      s.kind = Kind::APhi;
      parse_sign(body);
    } else if (head == "general") {
      s.kind = Kind::General;
      s.general_c = detail::parse_complex_list<8>(body);
      TripartiteSpinState probe(s.general_c);  // validates now, not at sweep time
    } else if (head == "bc-mixture") {
      s.kind = Kind::BcMixture;
      s.bc_d = detail::parse_complex_list<4>(body);
      BCState probe(s.bc_d);
    } else {
      throw std::invalid_argument("unknown state tag '" + spec + "'");
    }
    return s;
  }

  bool uses_alpha() const { return kind == Kind::APsi || kind == Kind::APhi; }

  SpinEnsemble realize(double alpha) const {
    switch (kind) {
      case Kind::Ghz:
        return SpinEnsemble::pure(make_ghz());
      case Kind::W:
        return SpinEnsemble::pure(make_w());
      case Kind::APsi:
        return SpinEnsemble::pure(make_a_psi(alpha, eta));
      case Kind::APhi:
        return SpinEnsemble::pure(make_a_phi(alpha, eta));
      case Kind::General:
        return SpinEnsemble::pure(make_general(general_c));
      case Kind::BcMixture:
        return make_mixture_bc(BCState(bc_d));
    }
    throw std::invalid_argument("unreachable state kind");
  }
};

}  // namespace spectator
