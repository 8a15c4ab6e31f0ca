// SPDX-License-Identifier: Apache-2.0
#include "pvqe/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"

#include "pvqe/error.hpp"

namespace pvqe {

IntegralSet IntegralSet::zeros(int n, int n_electrons, int ms2) {
  IntegralSet ints;
  ints.n_spatial = n;
  ints.n_electrons = n_electrons;
  ints.ms2 = ms2;
  ints.h1 = Eigen::MatrixXd::Zero(n, n);
  ints.eri = Eigen::MatrixXd::Zero(n * n, n * n);
  return ints;
}

void IntegralSet::set_eri(int p, int q, int r, int s, double v) {
  const int n = n_spatial;
  const auto put = [&](int a, int b, int c, int d) {
    eri(a * n + b, c * n + d) = v;
  };
  put(p, q, r, s);
  put(q, p, r, s);
  put(p, q, s, r);
  put(q, p, s, r);
  put(r, s, p, q);
  put(s, r, p, q);
  put(r, s, q, p);
  put(s, r, q, p);
}

void IntegralSet::validate(double tol) const {
  const int n = n_spatial;
  if (n < 1) throw ContractError("integral set has no orbitals");
  if (h1.rows() != n || h1.cols() != n)
    throw ContractError("h1 has wrong shape");
  if (eri.rows() != n * n || eri.cols() != n * n)
    throw ContractError("eri has wrong shape");
  if (n_electrons < 0 || n_electrons > 2 * n)
    throw ContractError("electron count " + std::to_string(n_electrons) +
                        " incompatible with " + std::to_string(n) +
                        " spatial orbitals");
  if (std::abs(ms2) > n_electrons || (n_electrons + ms2) % 2 != 0)
    throw ContractError("MS2 inconsistent with electron count");
  if (n_alpha() > n || n_beta() > n)
    throw ContractError("spin occupation exceeds orbital count");
  if ((h1 - h1.transpose()).cwiseAbs().maxCoeff() > tol)
    throw ContractError("h1 is not symmetric");
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = eri_at(p, q, r, s);
          if (std::abs(v - eri_at(q, p, r, s)) > tol ||
              std::abs(v - eri_at(p, q, s, r)) > tol ||
              std::abs(v - eri_at(r, s, p, q)) > tol)
            throw ContractError("eri lacks 8-fold permutational symmetry");
        }
  if (k_labels && static_cast<int>(k_labels->size()) != n)
    throw ContractError("k_labels must have one entry per spatial orbital");
}

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

/// Splits `KEY=value,...` namelist text into KEY → raw value text.
std::map<std::string, std::string> parse_namelist(const std::string& text) {
  std::map<std::string, std::string> out;
  std::vector<std::pair<std::size_t, std::size_t>> keys;  // (start, eq pos)
  for (std::size_t eq = text.find('='); eq != std::string::npos;
       eq = text.find('=', eq + 1)) {
    std::size_t end = eq;
    while (end > 0 && std::isspace(static_cast<unsigned char>(text[end - 1])))
      --end;
    std::size_t start = end;
    while (start > 0 &&
           (std::isalnum(static_cast<unsigned char>(text[start - 1])) ||
            text[start - 1] == '_'))
      --start;
    keys.emplace_back(start, eq);
  }
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const auto [start, eq] = keys[k];
    std::size_t end = eq;
    while (end > start && std::isspace(static_cast<unsigned char>(text[end - 1])))
      --end;
    const std::string key = upper(text.substr(start, end - start));
    const std::size_t vend =
        k + 1 < keys.size() ? keys[k + 1].first : text.size();
    std::string value = text.substr(eq + 1, vend - eq - 1);
    while (!value.empty() &&
           (std::isspace(static_cast<unsigned char>(value.back())) ||
            value.back() == ','))
      value.pop_back();
    out[key] = value;
  }
  return out;
}

int header_int(const std::map<std::string, std::string>& nl,
               const std::string& key, std::optional<int> fallback) {
  const auto it = nl.find(key);
  if (it == nl.end()) {
    if (fallback) return *fallback;
    throw ParseError("FCIDUMP header is missing " + key);
  }
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    return v;
  } catch (const std::exception&) {
    throw ParseError("FCIDUMP header: non-integer value for " + key);
  }
}

double parse_fortran_double(std::string tok, int line_no) {
  std::replace(tok.begin(), tok.end(), 'D', 'E');
  std::replace(tok.begin(), tok.end(), 'd', 'e');
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("FCIDUMP line " + std::to_string(line_no) +
                     ": non-numeric value '" + tok + "'");
  }
}

int parse_index(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("FCIDUMP line " + std::to_string(line_no) +
                     ": non-integer index '" + tok + "'");
  }
}

bool looks_like_record(const std::string& line) {
  std::istringstream ls(line);
  std::string tok;
  int n = 0;
  while (ls >> tok) {
    if (n == 0 && !(std::isdigit(static_cast<unsigned char>(tok[0])) ||
                    tok[0] == '-' || tok[0] == '+' || tok[0] == '.'))
      return false;
    ++n;
  }
  return n == 5;
}

}  // namespace

IntegralSet parse_fcidump(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(std::move(l));

  std::string header;
  std::size_t first_record = lines.size();
  bool seen_fci = false;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string u = upper(lines[n]);
    if (seen_fci && looks_like_record(lines[n])) {
      first_record = n;
      break;
    }
    if (u.find("&FCI") != std::string::npos) seen_fci = true;
    const auto end_pos = std::min(u.find("&END"), u.find('/'));
    if (end_pos != std::string::npos) {
      header += lines[n].substr(0, end_pos);
      first_record = n + 1;
      break;
    }
    header += lines[n];
    header += ' ';
  }
  {
    const auto pos = upper(header).find("&FCI");
    if (pos == std::string::npos)
      throw ParseError("FCIDUMP header does not start with &FCI");
    header = header.substr(pos + 4);
  }
  const auto nl = parse_namelist(header);
  const int norb = header_int(nl, "NORB", std::nullopt);
  const int nelec = header_int(nl, "NELEC", std::nullopt);
  const int ms2 = header_int(nl, "MS2", 0);
  if (norb < 1) throw ParseError("FCIDUMP header: NORB must be positive");

  IntegralSet ints = IntegralSet::zeros(norb, nelec, ms2);
  Eigen::VectorXd orb_e = Eigen::VectorXd::Zero(norb);
  bool have_orb_e = false;

  for (std::size_t n = first_record; n < lines.size(); ++n) {
    const int line_no = static_cast<int>(n) + 1;
    std::istringstream ls(lines[n]);
    std::string tok[5];
    int n_tok = 0;
    while (n_tok < 5 && ls >> tok[n_tok]) ++n_tok;
    if (n_tok == 0) continue;
    if (n_tok != 5)
      throw ParseError("FCIDUMP line " + std::to_string(line_no) +
                       ": expected 'value i j k l'");
    const double v = parse_fortran_double(tok[0], line_no);
    int idx[4];
    for (int k = 0; k < 4; ++k) {
      idx[k] = parse_index(tok[k + 1], line_no);
      if (idx[k] < 0 || idx[k] > norb)
        throw BoundsError("FCIDUMP line " + std::to_string(line_no) +
                          ": index " + std::to_string(idx[k]) +
                          " outside [1, " + std::to_string(norb) + "]");
    }
    const auto [i, j, k, l] = std::tuple{idx[0], idx[1], idx[2], idx[3]};
    if (i > 0 && j > 0 && k > 0 && l > 0) {
      ints.set_eri(i - 1, j - 1, k - 1, l - 1, v);
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      ints.h1(i - 1, j - 1) = v;
      ints.h1(j - 1, i - 1) = v;
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      orb_e(i - 1) = v;
      have_orb_e = true;
    } else if (i == 0 && j == 0 && k == 0 && l == 0) {
      ints.core_energy = v;
    } else {
      throw BoundsError("FCIDUMP line " + std::to_string(line_no) +
                        ": index pattern " + std::to_string(i) + " " +
                        std::to_string(j) + " " + std::to_string(k) + " " +
                        std::to_string(l) + " is not recognised");
    }
  }
  if (have_orb_e) ints.orbital_energies = orb_e;
  return ints;
}

IntegralSet read_fcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open FCIDUMP file " + path.string());
  return parse_fcidump(in);
}

void write_fcidump(std::ostream& out, const IntegralSet& ints) {
  const int n = ints.n_spatial;
  char buf[128];
  std::snprintf(buf, sizeof buf, " &FCI NORB=%d,NELEC=%d,MS2=%d,\n", n,
                ints.n_electrons, ints.ms2);
  out << buf << "  ORBSYM=";
  for (int p = 0; p < n; ++p) out << "1,";
  out << "\n  ISYM=1,\n &END\n";
  const auto record = [&](double v, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof buf, " %.17e %4d %4d %4d %4d\n", v, i, j, k, l);
    out << buf;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l <= k; ++l) {
          if (i * n + j < k * n + l) continue;
          const double v = ints.eri_at(i, j, k, l);
          if (v != 0.0) record(v, i + 1, j + 1, k + 1, l + 1);
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      if (ints.h1(i, j) != 0.0) record(ints.h1(i, j), i + 1, j + 1, 0, 0);
  if (ints.orbital_energies)
    for (int i = 0; i < n; ++i)
      record((*ints.orbital_energies)(i), i + 1, 0, 0, 0);
  record(ints.core_energy, 0, 0, 0, 0);
}

void load_orbital_metadata(IntegralSet& ints,
                           const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open metadata file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("metadata " + path.string() + ": " + e.what());
  }
  try {
    if (j.contains("k_labels") && !j["k_labels"].is_null()) {
      ints.k_labels = j["k_labels"].get<std::vector<std::vector<int>>>();
      if (static_cast<int>(ints.k_labels->size()) != ints.n_spatial)
        throw ParseError("metadata " + path.string() + ": " +
                         std::to_string(ints.k_labels->size()) +
                         " k labels for " + std::to_string(ints.n_spatial) +
                         " orbitals");
    }
    if (j.contains("lattice_modulus") && !j["lattice_modulus"].is_null())
      ints.lattice_modulus = j["lattice_modulus"].get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("metadata " + path.string() + ": " + e.what());
  }
}

FermionHamiltonian build_hamiltonian(const IntegralSet& ints) {
  ints.validate();
  const int n = ints.n_spatial;
  FermionHamiltonian h;
  h.n_spin_orbitals = 2 * n;
  h.constant = ints.core_energy;
  const auto mode = [](int p, int spin) { return 2 * p + spin; };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const double v = ints.h1(p, q);
      if (std::abs(v) < kIntegralDropThreshold) continue;
      for (int sigma = 0; sigma < 2; ++sigma)
        h.terms.add_term({{mode(p, sigma), true}, {mode(q, sigma), false}}, v);
    }
  // ½ Σ (pq|rs) a†_{pσ} a†_{rτ} a_{sτ} a_{qσ}
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = 0.5 * ints.eri_at(p, q, r, s);
          if (std::abs(v) < kIntegralDropThreshold) continue;
          for (int sigma = 0; sigma < 2; ++sigma)
            for (int tau = 0; tau < 2; ++tau) {
              const int ps = mode(p, sigma), qs = mode(q, sigma);
              const int rt = mode(r, tau), st = mode(s, tau);
              if (ps == rt || qs == st) continue;
              h.terms.add_term(
                  {{ps, true}, {rt, true}, {st, false}, {qs, false}}, v);
            }
        }
  return h;
}

PauliSum build_s2_penalty(int n_spatial, double alpha, double spin) {
  if (n_spatial < 1) throw ContractError("penalty needs at least one orbital");
  if (alpha < 0.0) throw ContractError("penalty weight must be non-negative");
  const int nq = 2 * n_spatial;
  if (alpha == 0.0) return PauliSum(nq);
  PauliSum shifted = jordan_wigner(spin_squared_operator(n_spatial), nq);
  shifted -= PauliSum::identity(nq, spin * (spin + 1.0));
  return simplify(pauli_multiply(shifted, shifted) * Complex(alpha / 2.0));
}

std::vector<int> hartree_fock_occupation(int n_spatial, int n_alpha,
                                         int n_beta) {
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n_spatial || n_beta > n_spatial)
    throw ContractError("occupation exceeds orbital count");
  std::vector<int> occ;
  for (int p = 0; p < n_spatial; ++p) {
    if (p < n_alpha) occ.push_back(alpha_mode(p));
    if (p < n_beta) occ.push_back(beta_mode(p));
  }
  return occ;
}

}  // namespace pvqe
