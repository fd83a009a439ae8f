#include "fqess/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace fqess {

char axis_char(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::I: return 'I';
    case PauliAxis::X: return 'X';
    case PauliAxis::Y: return 'Y';
    case PauliAxis::Z: return 'Z';
  }
  throw ValidationError("invalid PauliAxis value");
}

PauliAxis axis_from_char(char c) {
  switch (c) {
    case 'I': return PauliAxis::I;
    case 'X': return PauliAxis::X;
    case 'Y': return PauliAxis::Y;
    case 'Z': return PauliAxis::Z;
    default:
      throw ParseError(std::string("unknown Pauli axis '") + c +
                       "' (expected I, X, Y or Z)");
  }
}

PauliWord::PauliWord(std::vector<PauliAxis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw ValidationError("Pauli word must act on >= 1 qubit");
  if (axes_.size() > 20) {
    throw ValidationError("Pauli word too wide (max 20 qubits)");
  }
}

PauliWord::PauliWord(std::string_view text) {
  if (text.empty()) throw ParseError("empty Pauli word");
  if (text.size() > 20) throw ParseError("Pauli word too wide (max 20 qubits)");
  axes_.resize(text.size());
  // Leftmost character is the highest qubit.
  for (std::size_t i = 0; i < text.size(); ++i) {
    axes_[text.size() - 1 - i] = axis_from_char(text[i]);
  }
}

PauliWord PauliWord::identity(std::size_t qubits) {
  return PauliWord(std::vector<PauliAxis>(qubits, PauliAxis::I));
}

bool PauliWord::is_identity() const {
  return std::all_of(axes_.begin(), axes_.end(),
                     [](PauliAxis a) { return a == PauliAxis::I; });
}

std::string PauliWord::str() const {
  std::string out(axes_.size(), 'I');
  for (std::size_t q = 0; q < axes_.size(); ++q) {
    out[axes_.size() - 1 - q] = axis_char(axes_[q]);
  }
  return out;
}

std::uint64_t PauliWord::code() const {
  std::uint64_t c = 0;
  for (std::size_t q = axes_.size(); q-- > 0;) {
    c = c * 4 + static_cast<std::uint64_t>(axes_[q]);
  }
  return c;
}

PauliWord PauliWord::from_code(std::uint64_t code, std::size_t qubits) {
  std::vector<PauliAxis> axes(qubits);
  for (std::size_t q = 0; q < qubits; ++q) {
    axes[q] = static_cast<PauliAxis>(code & 3u);
    code >>= 2;
  }
  if (code != 0) throw ValidationError("Pauli code out of range for width");
  return PauliWord(std::move(axes));
}

PauliWord::Masks PauliWord::masks() const {
  std::uint64_t x = 0, z = 0;
  int ys = 0;
  for (std::size_t q = 0; q < axes_.size(); ++q) {
    switch (axes_[q]) {
      case PauliAxis::I: break;
      case PauliAxis::X: x |= std::uint64_t{1} << q; break;
      case PauliAxis::Z: z |= std::uint64_t{1} << q; break;
      case PauliAxis::Y:
        x |= std::uint64_t{1} << q;
        z |= std::uint64_t{1} << q;
        ++ys;
        break;
    }
  }
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx phase = kIPow[ys & 3];
  if (std::popcount(x & z) & 1u) phase = -phase;
  return {x, z, phase};
}

PauliHamiltonian::PauliHamiltonian(std::size_t qubits,
                                   std::vector<WeightedTerm> terms)
    : qubits_(qubits) {
  if (qubits == 0 || qubits > 20) {
    throw ValidationError("qubit count must be in [1, 20]");
  }
  terms_.reserve(terms.size());
  std::unordered_map<std::uint64_t, std::size_t> index_of;
  for (auto& t : terms) {
    if (t.word.size() != qubits) {
      throw ValidationError("term word width does not match qubit count");
    }
    if (!std::isfinite(t.coefficient)) {
      throw ValidationError("term coefficient must be finite");
    }
    const auto [it, inserted] = index_of.try_emplace(t.word.code(), terms_.size());
    if (inserted) {
      terms_.push_back(std::move(t));
    } else {
      terms_[it->second].coefficient += t.coefficient;
    }
  }
}

double PauliHamiltonian::coefficient_of(const PauliWord& word) const {
  const std::uint64_t c = word.code();
  for (const auto& t : terms_) {
    if (t.word.code() == c) return t.coefficient;
  }
  return 0.0;
}

PauliHamiltonian parse_hamiltonian(std::string_view text) {
  std::vector<WeightedTerm> terms;
  std::size_t qubits = 0;
  std::size_t line_no = 0;
  std::istringstream stream{std::string(text)};
  std::string line;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string coeff_text, word_text, extra;
    if (!(fields >> coeff_text)) continue;  // blank / comment-only line
    if (!(fields >> word_text) || (fields >> extra)) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'coefficient word'");
    }
    double coeff = 0.0;
    const auto* end = coeff_text.data() + coeff_text.size();
    const auto res = std::from_chars(coeff_text.data(), end, coeff);
    if (res.ec != std::errc{} || res.ptr != end) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": bad coefficient '" + coeff_text + "'");
    }
    PauliWord word{std::string_view(word_text)};
    if (qubits == 0) {
      qubits = word.size();
    } else if (word.size() != qubits) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": word width " + std::to_string(word.size()) +
                       " differs from earlier width " + std::to_string(qubits));
    }
    terms.push_back({coeff, std::move(word)});
  }
  if (terms.empty()) throw ParseError("no Hamiltonian terms found");
  return PauliHamiltonian(qubits, std::move(terms));
}

PauliHamiltonian load_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open Hamiltonian file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_hamiltonian(buf.str());
}

std::string serialize_hamiltonian(const PauliHamiltonian& h) {
  std::string out;
  char line[80];
  for (const auto& t : h.terms()) {
    std::snprintf(line, sizeof line, "%.17g %s\n", t.coefficient,
                  t.word.str().c_str());
    out += line;
  }
  return out;
}

PauliHamiltonian shift(const PauliHamiltonian& h, double lambda0) {
  if (!std::isfinite(lambda0)) throw ValidationError("bias must be finite");
  std::vector<WeightedTerm> terms = h.terms();
  const auto id = PauliWord::identity(h.qubits());
  const auto it = std::find_if(terms.begin(), terms.end(), [&](const auto& t) {
    return t.word.is_identity();
  });
  if (it != terms.end()) {
    it->coefficient -= lambda0;
  } else {
    terms.insert(terms.begin(), {-lambda0, id});
  }
  return PauliHamiltonian(h.qubits(), std::move(terms));
}

double default_bias(const PauliHamiltonian& h, double margin) {
  if (!(margin > 0.0)) throw ValidationError("bias margin must be positive");
  double bound = 0.0;
  for (const auto& t : h.terms()) {
    bound += t.word.is_identity() ? t.coefficient : std::abs(t.coefficient);
  }
  const double biased = bound + margin;
  return biased > 0.0 ? biased : margin;
}

PauliHamiltonian add_noise(const PauliHamiltonian& h, double eta, Rng& rng) {
  if (eta < 0.0 || !std::isfinite(eta)) {
    throw ValidationError("noise strength must be finite and >= 0");
  }
  if (eta == 0.0) return h;
  double max_abs = 0.0;
  for (const auto& t : h.terms()) {
    max_abs = std::max(max_abs, std::abs(t.coefficient));
  }
  std::vector<WeightedTerm> terms = h.terms();
  for (std::size_t q = 0; q < h.qubits(); ++q) {
    const double delta = eta * rng.uniform_pm1() * max_abs;
    std::vector<PauliAxis> axes(h.qubits(), PauliAxis::I);
    axes[q] = PauliAxis::Z;
    terms.push_back({delta, PauliWord(std::move(axes))});
  }
  return PauliHamiltonian(h.qubits(), std::move(terms));
}

ResourceEstimate estimate_resources(const PauliHamiltonian& h) {
  std::size_t live = 0;
  for (const auto& t : h.terms()) {
    if (t.coefficient != 0.0) ++live;
  }
  const std::size_t padded = std::bit_ceil(std::max<std::size_t>(live, 1));
  const auto ancilla = static_cast<std::size_t>(std::countr_zero(padded));
  return ResourceEstimate{
      h.qubits(),
      ancilla,
      h.qubits() + ancilla,
      live,
      padded,
      padded == 1 ? 0 : h.qubits() * padded * ancilla,
  };
}

}  // namespace fqess
