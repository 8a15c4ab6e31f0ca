// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace pvqe {

using Complex = std::complex<double>;

inline constexpr double kDefaultSimplifyThreshold = 1e-12;
inline constexpr int kMaxPauliQubits = 64;

enum class Pauli : std::uint8_t { I, X, Y, Z };

/// Tensor product of single-qubit Paulis in symplectic form.
///
/// Qubit q carries X when only bit q of `x` is set, Z when only bit q of `z`
/// is set, and Y when both are set. The operator represented is exactly the
/// product of the listed single-qubit Paulis (no hidden phase), i.e.
/// i^{|x & z|} X^x Z^z.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  static PauliString single(int qubit, Pauli p);

  Pauli at(int qubit) const;
  int weight() const;
  bool is_identity() const { return x == 0 && z == 0; }
  /// Number of qubits carrying Y.
  int y_count() const;
  /// Highest qubit index acted on, or -1 for the identity.
  int max_qubit() const;

  /// "X0 Y3 Z5"; the identity renders as "I".
  std::string to_string() const;

  friend auto operator<=>(const PauliString&, const PauliString&) = default;
};

/// Product a·b = i^phase · result.
struct PauliProduct {
  int phase;  // power of i, in [0, 4)
  PauliString result;
};

PauliProduct multiply(PauliString a, PauliString b);

/// Weighted sum of Pauli strings on a fixed number of qubits.
///
/// Terms are kept in an ordered map so iteration order, and with it every
/// downstream floating-point reduction, is deterministic.
class PauliSum {
 public:
  using TermMap = std::map<PauliString, Complex>;

  PauliSum() = default;
  explicit PauliSum(int n_qubits);

  static PauliSum identity(int n_qubits, Complex coeff = 1.0);
  static PauliSum from_term(int n_qubits, PauliString s, Complex coeff = 1.0);

  int n_qubits() const { return n_qubits_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Adds coeff to the coefficient of s (merging duplicates).
  void add_term(PauliString s, Complex coeff);
  Complex coefficient(PauliString s) const;

  PauliSum adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  bool is_anti_hermitian(double tol = 1e-12) const;
  /// Sum of |coefficient|, an upper bound on the spectral norm.
  double one_norm() const;
  double max_abs_coefficient() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex scale);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
  friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

 private:
  void check_compatible(const PauliSum& other) const;

  int n_qubits_ = 0;
  TermMap terms_;
};

/// Exact product, simplified with `threshold`.
PauliSum pauli_multiply(const PauliSum& a, const PauliSum& b,
                        double threshold = kDefaultSimplifyThreshold);

/// Drops terms with |coeff| < threshold. Duplicates are already merged on
/// insertion, so this never increases the term count.
PauliSum simplify(const PauliSum& a,
                  double threshold = kDefaultSimplifyThreshold);

PauliSum commutator(const PauliSum& a, const PauliSum& b,
                    double threshold = kDefaultSimplifyThreshold);

/// One term per line: `coeff_re coeff_im X0 Y3 Z5` (identity has no ops).
std::string to_text(const PauliSum& p);
PauliSum pauli_sum_from_text(std::string_view text, int n_qubits);

}  // namespace pvqe
