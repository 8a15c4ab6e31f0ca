// SPDX-License-Identifier: Apache-2.0
#include "pvqe/pauli.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "pvqe/error.hpp"

namespace pvqe {

namespace {

constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_qubit(int q) {
  if (q < 0 || q >= kMaxPauliQubits)
    throw BoundsError("qubit index " + std::to_string(q) + " out of range");
}

}  // namespace

PauliString PauliString::single(int qubit, Pauli p) {
  check_qubit(qubit);
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  PauliString s;
  if (p == Pauli::X || p == Pauli::Y) s.x = bit;
  if (p == Pauli::Z || p == Pauli::Y) s.z = bit;
  return s;
}

Pauli PauliString::at(int qubit) const {
  const bool xb = (x >> qubit) & 1U;
  const bool zb = (z >> qubit) & 1U;
  if (xb && zb) return Pauli::Y;
  if (xb) return Pauli::X;
  if (zb) return Pauli::Z;
  return Pauli::I;
}

int PauliString::weight() const { return std::popcount(x | z); }

int PauliString::y_count() const { return std::popcount(x & z); }

int PauliString::max_qubit() const {
  const std::uint64_t support = x | z;
  return support == 0 ? -1 : 63 - std::countl_zero(support);
}

std::string PauliString::to_string() const {
  if (is_identity()) return "I";
  std::string out;
  const std::uint64_t support = x | z;
  for (int q = 0; q < kMaxPauliQubits; ++q) {
    if (!((support >> q) & 1U)) continue;
    if (!out.empty()) out += ' ';
    switch (at(q)) {
      case Pauli::X: out += 'X'; break;
      case Pauli::Y: out += 'Y'; break;
      case Pauli::Z: out += 'Z'; break;
      case Pauli::I: break;
    }
    out += std::to_string(q);
  }
  return out;
}

PauliProduct multiply(PauliString a, PauliString b) {
  // a = i^{ya} X^xa Z^za, b = i^{yb} X^xb Z^zb;
  // Z^za X^xb = (-1)^{|za & xb|} X^xb Z^za.
  const PauliString r{a.x ^ b.x, a.z ^ b.z};
  int phase = a.y_count() + b.y_count() + 2 * std::popcount(a.z & b.x) -
              r.y_count();
  phase = ((phase % 4) + 4) % 4;
  return {phase, r};
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxPauliQubits)
    throw BoundsError("qubit count " + std::to_string(n_qubits) +
                      " out of range");
}

PauliSum PauliSum::identity(int n_qubits, Complex coeff) {
  PauliSum p(n_qubits);
  p.add_term(PauliString{}, coeff);
  return p;
}

PauliSum PauliSum::from_term(int n_qubits, PauliString s, Complex coeff) {
  PauliSum p(n_qubits);
  p.add_term(s, coeff);
  return p;
}

void PauliSum::add_term(PauliString s, Complex coeff) {
  if (s.max_qubit() >= n_qubits_)
    throw BoundsError("Pauli string " + s.to_string() + " exceeds " +
                      std::to_string(n_qubits_) + " qubits");
  terms_[s] += coeff;
}

Complex PauliSum::coefficient(PauliString s) const {
  const auto it = terms_.find(s);
  return it == terms_.end() ? Complex{} : it->second;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_qubits_);
  for (const auto& [s, c] : terms_) out.terms_.emplace(s, std::conj(c));
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [s, c] : terms_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

bool PauliSum::is_anti_hermitian(double tol) const {
  for (const auto& [s, c] : terms_)
    if (std::abs(c.real()) > tol) return false;
  return true;
}

double PauliSum::one_norm() const {
  double n = 0.0;
  for (const auto& [s, c] : terms_) n += std::abs(c);
  return n;
}

double PauliSum::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [s, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void PauliSum::check_compatible(const PauliSum& other) const {
  if (n_qubits_ != other.n_qubits_)
    throw DimensionError("Pauli sums act on " + std::to_string(n_qubits_) +
                         " and " + std::to_string(other.n_qubits_) +
                         " qubits");
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  check_compatible(other);
  for (const auto& [s, c] : other.terms_) terms_[s] += c;
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  check_compatible(other);
  for (const auto& [s, c] : other.terms_) terms_[s] -= c;
  return *this;
}

PauliSum& PauliSum::operator*=(Complex scale) {
  for (auto& [s, c] : terms_) c *= scale;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  a.check_compatible(b);
  PauliSum out(a.n_qubits());
  for (const auto& [sa, ca] : a.terms())
    for (const auto& [sb, cb] : b.terms()) {
      const auto [phase, r] = multiply(sa, sb);
      out.terms_[r] += kIPowers[phase] * ca * cb;
    }
  return out;
}

PauliSum pauli_multiply(const PauliSum& a, const PauliSum& b,
                        double threshold) {
  return simplify(a * b, threshold);
}

PauliSum simplify(const PauliSum& a, double threshold) {
  if (threshold < 0.0) throw ContractError("negative simplify threshold");
  PauliSum out(a.n_qubits());
  for (const auto& [s, c] : a.terms())
    if (std::abs(c) >= threshold) out.add_term(s, c);
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b, double threshold) {
  return simplify(a * b - b * a, threshold);
}

std::string to_text(const PauliSum& p) {
  std::string out;
  char buf[64];
  for (const auto& [s, c] : p.terms()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g", c.real(), c.imag());
    out += buf;
    if (!s.is_identity()) {
      out += ' ';
      out += s.to_string();
    }
    out += '\n';
  }
  return out;
}

PauliSum pauli_sum_from_text(std::string_view text, int n_qubits) {
  PauliSum out(n_qubits);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string re_tok, im_tok;
    if (!(ls >> re_tok)) continue;
    if (!(ls >> im_tok))
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected real and imaginary coefficient");
    double re = 0.0, im = 0.0;
    try {
      re = std::stod(re_tok);
      im = std::stod(im_tok);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": non-numeric coefficient");
    }
    PauliString s;
    std::string op;
    while (ls >> op) {
      if (op == "I") continue;
      Pauli p;
      switch (op[0]) {
        case 'X': p = Pauli::X; break;
        case 'Y': p = Pauli::Y; break;
        case 'Z': p = Pauli::Z; break;
        default:
          throw ParseError("line " + std::to_string(line_no) +
                           ": unknown Pauli '" + op + "'");
      }
      int q = -1;
      const auto [ptr, ec] =
          std::from_chars(op.data() + 1, op.data() + op.size(), q);
      if (ec != std::errc{} || ptr != op.data() + op.size() || q < 0)
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad qubit index in '" + op + "'");
      if (q >= n_qubits)
        throw BoundsError("line " + std::to_string(line_no) + ": qubit " +
                          std::to_string(q) + " >= " +
                          std::to_string(n_qubits));
      if ((s.x | s.z) >> q & 1U)
        throw ParseError("line " + std::to_string(line_no) + ": qubit " +
                         std::to_string(q) + " listed twice");
      const PauliString single = PauliString::single(q, p);
      s.x |= single.x;
      s.z |= single.z;
    }
    out.add_term(s, Complex(re, im));
  }
  return out;
}

}  // namespace pvqe
