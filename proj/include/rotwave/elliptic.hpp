/**
 * @file elliptic.hpp
 * @brief Complete elliptic integral K(m) and Jacobi elliptic functions sn, cn, dn.
 *
 * Everything is parameterized by the parameter m = k^2, never by the modulus k.
 */
#pragma once

namespace rotwave {

struct EllipticModulus {
  double mParam = 0.0;

  /// The single place where a modulus k is converted to the parameter m = k^2.
  static EllipticModulus from_modulus(double k) { return {k * k}; }
};

struct JacobiTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

/// Quarter period K(m) by the arithmetic-geometric mean. Throws std::domain_error at m = 1
/// (divergent) and std::invalid_argument outside [0, 1).
[[nodiscard]] double complete_K(EllipticModulus mu);

/// sn, cn, dn for real u and m in [0, 1]; u is first reduced modulo 4K(m).
[[nodiscard]] JacobiTriple jacobi(double u, EllipticModulus mu);

}  // namespace rotwave
