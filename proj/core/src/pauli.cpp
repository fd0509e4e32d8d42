#include "hypomix/pauli.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hypomix {

namespace {

constexpr double kCoeffDropTol = 1e-14;

void require_same_qubits(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits()) {
    throw DimensionError("pauli strings act on different qubit counts (" +
                         std::to_string(p.n_qubits()) + " vs " +
                         std::to_string(q.n_qubits()) + ")");
  }
}

Complex phase_from_quarter_turns(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

const Matrix& single_qubit_matrix(char p) {
  static const Matrix kI = Matrix::Identity(2, 2);
  static const Matrix kX = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  static const Matrix kY =
      (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const Matrix kZ = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  switch (p) {
    case 'I': return kI;
    case 'X': return kX;
    case 'Y': return kY;
    default: return kZ;
  }
}

}  // namespace

PauliString::PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_qubits_(n_qubits), x_mask_(x_mask), z_mask_(z_mask) {
  if (n_qubits < 1 || n_qubits > 64) {
    throw DimensionError("qubit count must be in [1, 64], got " +
                         std::to_string(n_qubits));
  }
  const std::uint64_t valid =
      n_qubits == 64 ? ~0ull : ((1ull << n_qubits) - 1);
  if ((x_mask & ~valid) != 0 || (z_mask & ~valid) != 0) {
    throw DimensionError("pauli mask has bits beyond qubit " +
                         std::to_string(n_qubits - 1));
  }
}

PauliString PauliString::identity(int n_qubits) {
  return PauliString(n_qubits, 0, 0);
}

PauliString PauliString::single(int n_qubits, int site, char pauli) {
  if (site < 0 || site >= n_qubits) {
    throw DimensionError("site out of range");
  }
  const std::uint64_t bit = 1ull << site;
  switch (pauli) {
    case 'X': return PauliString(n_qubits, bit, 0);
    case 'Y': return PauliString(n_qubits, bit, bit);
    case 'Z': return PauliString(n_qubits, 0, bit);
    case 'I': return PauliString(n_qubits, 0, 0);
    default:
      throw InputError(std::string("unknown pauli letter '") + pauli + "'");
  }
}

PauliString PauliString::from_label(const std::string& label) {
  if (label.empty()) throw InputError("empty pauli label");
  std::uint64_t x = 0, z = 0;
  for (std::size_t i = 0; i < label.size(); ++i) {
    const std::uint64_t bit = 1ull << i;
    switch (label[i]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw InputError("unknown pauli letter '" + std::string(1, label[i]) +
                         "' in \"" + label + "\"");
    }
  }
  return PauliString(static_cast<int>(label.size()), x, z);
}

int PauliString::xy_weight() const { return std::popcount(x_mask_); }

char PauliString::pauli_at(int site) const {
  const bool x = (x_mask_ >> site) & 1;
  const bool z = (z_mask_ >> site) & 1;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

bool PauliString::commutes_with(const PauliString& other) const {
  require_same_qubits(*this, other);
  const int overlap = std::popcount(x_mask_ & other.z_mask_) +
                      std::popcount(z_mask_ & other.x_mask_);
  return overlap % 2 == 0;
}

std::string PauliString::label() const {
  std::string out(static_cast<std::size_t>(n_qubits_), 'I');
  for (int i = 0; i < n_qubits_; ++i) out[static_cast<std::size_t>(i)] = pauli_at(i);
  return out;
}

Matrix PauliString::to_dense() const {
  if (n_qubits_ > kMaxDenseQubits) {
    throw SizeError("dense conversion capped at " +
                    std::to_string(kMaxDenseQubits) + " qubits, got " +
                    std::to_string(n_qubits_));
  }
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < n_qubits_; ++i) {
    out = kron(out, single_qubit_matrix(pauli_at(i)));
  }
  return out;
}

PauliProduct multiply(const PauliString& p, const PauliString& q) {
  require_same_qubits(p, q);
  const std::uint64_t x = p.x_mask() ^ q.x_mask();
  const std::uint64_t z = p.z_mask() ^ q.z_mask();
  // With P(x,z) = i^{|x&z|} X^x Z^z, commuting Z^{z_p} past X^{x_q} gives
  // one -1 per overlapping site; the remaining quarter-turn count rebases
  // the Y phase onto the product string.
  const int quarter_turns = std::popcount(p.x_mask() & p.z_mask()) +
                            std::popcount(q.x_mask() & q.z_mask()) -
                            std::popcount(x & z) +
                            2 * std::popcount(p.z_mask() & q.x_mask());
  return PauliProduct{phase_from_quarter_turns(quarter_turns),
                      PauliString(p.n_qubits(), x, z)};
}

PauliSum commutator(const PauliString& p, const PauliString& q) {
  require_same_qubits(p, q);
  PauliSum out(p.n_qubits());
  if (p.commutes_with(q)) return out;
  const PauliProduct pq = multiply(p, q);
  out.add(2.0 * pq.phase, pq.string);
  return out;
}

double dephasing_eigenvalue(const PauliString& p, double gamma) {
  if (gamma < 0) throw DomainError("dephasing rate must be nonnegative");
  return -2.0 * gamma * static_cast<double>(p.xy_weight());
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 64) {
    throw DimensionError("qubit count must be in [1, 64]");
  }
}

PauliSum::PauliSum(int n_qubits, std::vector<PauliTerm> terms)
    : PauliSum(n_qubits) {
  terms_ = std::move(terms);
  for (const PauliTerm& t : terms_) {
    if (t.string.n_qubits() != n_qubits_) {
      throw DimensionError("term qubit count differs from sum");
    }
  }
  canonicalize();
}

PauliSum& PauliSum::add(Complex coeff, const PauliString& s) {
  if (s.n_qubits() != n_qubits_) {
    throw DimensionError("term qubit count differs from sum");
  }
  terms_.push_back({coeff, s});
  canonicalize();
  return *this;
}

void PauliSum::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) {
              return a.string < b.string;
            });
  std::vector<PauliTerm> merged;
  merged.reserve(terms_.size());
  for (const PauliTerm& t : terms_) {
    if (!merged.empty() && merged.back().string == t.string) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const PauliTerm& t) {
    return std::abs(t.coeff) < kCoeffDropTol;
  });
  terms_ = std::move(merged);
}

bool PauliSum::is_hermitian(double tol) const {
  for (const PauliTerm& t : terms_) {
    if (std::abs(t.coeff.imag()) > tol) return false;
  }
  return true;
}

Matrix PauliSum::to_dense() const {
  if (n_qubits_ > kMaxDenseQubits) {
    throw SizeError("dense conversion capped at " +
                    std::to_string(kMaxDenseQubits) + " qubits");
  }
  const Eigen::Index d = Eigen::Index(1) << n_qubits_;
  Matrix out = Matrix::Zero(d, d);
  for (const PauliTerm& t : terms_) {
    out += t.coeff * t.string.to_dense();
  }
  return out;
}

std::string PauliSum::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const PauliTerm& t : terms_) {
    arr.push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}},
                   {"string", t.string.label()}});
  }
  return arr.dump();
}

PauliSum PauliSum::from_json(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("pauli sum JSON parse error: ") + e.what());
  }
  if (!arr.is_array() || arr.empty()) {
    throw InputError("pauli sum JSON must be a non-empty array of terms");
  }
  try {
    std::vector<PauliTerm> terms;
    int n_qubits = 0;
    for (const auto& item : arr) {
      if (!item.contains("coeff") || !item.contains("string")) {
        throw InputError("pauli term needs \"coeff\" and \"string\"");
      }
      const auto& c = item["coeff"];
      if (!c.is_array() || c.size() != 2) {
        throw InputError("pauli coeff must be [re, im]");
      }
      PauliString s = PauliString::from_label(item["string"].get<std::string>());
      if (n_qubits == 0) n_qubits = s.n_qubits();
      terms.push_back({Complex(c[0].get<double>(), c[1].get<double>()), s});
    }
    return PauliSum(n_qubits, std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("pauli sum JSON has wrong value types: ") +
                     e.what());
  }
}

}  // namespace hypomix
