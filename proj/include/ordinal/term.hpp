#pragma once

// Terms of the structures g^(K)(X): the base structure for g = λx.ω^x at
// K = 0, and the K-fold derivative above it for K >= 1.
//
// A term is a sum of atoms in non-increasing order. An atom is either
//   Phi(k, t)  the k-th derivative φ_k applied to t (φ_0 t = ω^t), k < K, or
//   Gen(j)     the generator constant for element j of {0} ∪ X.
// For K >= 1 the generators are the values of φ_K and are fixed points of
// every φ_k with k < K. For K = 0 there are no function atoms and Gen(j)
// stands for ω^{c_j}; in particular Gen(0) = ω^0 = 1.
//
// Equality of ordinals is identity of normal forms. A normal term has
//   * atoms in non-increasing order (no absorbable atom is left behind), and
//   * no atom Phi(i, s) with s a single atom that φ_i fixes
//     (Phi(j, ·) with j > i, or any Gen).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordinal/error.hpp"
#include "ordinal/order.hpp"

namespace ordinal {

/// Fixes one structure g^(K)(X): the derivative level K and the input order X.
struct StructureDescriptor {
  std::size_t levels = 1;
  LinearOrder order = LinearOrder::omega();

  bool has_phi(std::size_t level) const noexcept { return level < levels; }
  bool has_gen(std::size_t index) const noexcept { return order.contains(index); }

  friend bool operator==(const StructureDescriptor&, const StructureDescriptor&) = default;
};

class Term;

class Atom {
 public:
  enum class Kind : unsigned char { phi, gen };

  static Atom phi(std::size_t level, Term arg);
  static Atom gen(std::size_t index) { return Atom(Kind::gen, index, nullptr); }

  Kind kind() const noexcept { return kind_; }
  bool is_phi() const noexcept { return kind_ == Kind::phi; }
  bool is_gen() const noexcept { return kind_ == Kind::gen; }

  std::size_t level() const noexcept { return value_; }
  std::size_t index() const noexcept { return value_; }
  const Term& arg() const noexcept { return *arg_; }

  friend bool operator==(const Atom& a, const Atom& b);

 private:
  Atom(Kind kind, std::size_t value, std::shared_ptr<const Term> arg)
      : kind_(kind), value_(value), arg_(std::move(arg)) {}

  Kind kind_;
  std::size_t value_;
  std::shared_ptr<const Term> arg_;
};

class Term {
 public:
  /// Zero, the empty sum.
  Term() = default;

  explicit Term(Atom atom) { atoms_.push_back(std::move(atom)); }

  /// Builds a sum without normalizing it. Use `normalize` before handing the
  /// result to any other operation.
  static Term raw(std::vector<Atom> atoms) {
    Term t;
    t.atoms_ = std::move(atoms);
    return t;
  }

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool is_zero() const noexcept { return atoms_.empty(); }
  bool is_atom() const noexcept { return atoms_.size() == 1; }
  const Atom& head() const { return atoms_.front(); }
  const Atom& last() const { return atoms_.back(); }

  friend bool operator==(const Term& a, const Term& b) { return a.atoms_ == b.atoms_; }

 private:
  std::vector<Atom> atoms_;
};

inline Atom Atom::phi(std::size_t level, Term arg) {
  return Atom(Kind::phi, level, std::make_shared<const Term>(std::move(arg)));
}

inline bool operator==(const Atom& a, const Atom& b) {
  if (a.kind_ != b.kind_ || a.value_ != b.value_) return false;
  if (a.kind_ == Atom::Kind::gen) return true;
  return a.arg_ == b.arg_ || *a.arg_ == *b.arg_;
}

// --- structure membership -------------------------------------------------

namespace detail {

inline bool members_valid(const Term& t, const StructureDescriptor& sd, std::string& why) {
  for (const Atom& a : t.atoms()) {
    if (a.is_gen()) {
      if (!sd.has_gen(a.index())) {
        why = "generator g(" + std::to_string(a.index()) + ") outside {0} u X of size " +
              to_string(sd.order);
        return false;
      }
    } else {
      if (!sd.has_phi(a.level())) {
        why = "phi(" + std::to_string(a.level()) + ",.) needs level < " + std::to_string(sd.levels);
        return false;
      }
      if (!members_valid(a.arg(), sd, why)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// True when every symbol of `t` belongs to the signature of `sd`.
inline bool belongs_to(const Term& t, const StructureDescriptor& sd) {
  std::string why;
  return detail::members_valid(t, sd, why);
}

inline void require_member(const Term& t, const StructureDescriptor& sd,
                           ErrorKind kind = ErrorKind::structure_mismatch) {
  std::string why;
  if (!detail::members_valid(t, sd, why)) throw Error(kind, why);
}

// --- comparison -----------------------------------------------------------

namespace detail {

inline std::strong_ordering compare_terms(const Term& s, const Term& t);

// s against the single atom b.
inline std::strong_ordering compare_term_atom(const Term& s, const Atom& b);

inline std::strong_ordering compare_atoms(const Atom& a, const Atom& b) {
  if (a.is_gen() && b.is_gen()) return a.index() <=> b.index();
  if (a.is_phi() && b.is_phi() && a.level() == b.level()) return compare_terms(a.arg(), b.arg());
  // Phi(i, s) against an atom that φ_i fixes (a generator or a higher Phi):
  // φ_i(s) lies below such a fixed point exactly when s does.
  if (a.is_phi() && (b.is_gen() || b.level() > a.level())) return compare_term_atom(a.arg(), b);
  return 0 <=> compare_term_atom(b.arg(), a);
}

inline std::strong_ordering compare_term_atom(const Term& s, const Atom& b) {
  if (s.is_zero()) return std::strong_ordering::less;
  auto head = compare_atoms(s.head(), b);
  if (head != 0) return head;
  return s.size() > 1 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

inline std::strong_ordering compare_terms(const Term& s, const Term& t) {
  auto lhs = s.atoms();
  auto rhs = t.atoms();
  const std::size_t common = std::min(lhs.size(), rhs.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (auto c = compare_atoms(lhs[i], rhs[i]); c != 0) return c;
  }
  return lhs.size() <=> rhs.size();
}

}  // namespace detail

/// Three-way comparison of normal terms of one structure.
inline std::strong_ordering compare(const Term& s, const Term& t, const StructureDescriptor& sd) {
  require_member(s, sd);
  require_member(t, sd);
  return detail::compare_terms(s, t);
}

inline std::string to_string(std::strong_ordering order) {
  if (order < 0) return "Less";
  if (order > 0) return "Greater";
  return "Equal";
}

// --- construction and arithmetic ------------------------------------------

namespace detail {

inline bool fixes(std::size_t level, const Term& t) {
  if (!t.is_atom()) return false;
  const Atom& a = t.head();
  return a.is_gen() || a.level() > level;
}

inline Term apply_phi(std::size_t level, Term t) {
  if (fixes(level, t)) return t;
  return Term(Atom::phi(level, std::move(t)));
}

inline Term add(const Term& s, const Term& t) {
  if (t.is_zero()) return s;
  const Atom& head = t.head();
  auto kept = s.atoms();
  while (!kept.empty() && compare_atoms(kept.back(), head) < 0) kept = kept.first(kept.size() - 1);
  std::vector<Atom> atoms;
  atoms.reserve(kept.size() + t.size());
  atoms.insert(atoms.end(), kept.begin(), kept.end());
  atoms.insert(atoms.end(), t.atoms().begin(), t.atoms().end());
  return Term::raw(std::move(atoms));
}

}  // namespace detail

/// The unit 1 = ω^0 of the structure: Phi(0, 0), or Gen(0) when K = 0.
inline Term one(const StructureDescriptor& sd) {
  return sd.levels == 0 ? Term(Atom::gen(0)) : Term(Atom::phi(0, Term()));
}

/// n = 1 + ... + 1.
inline Term numeral(std::size_t n, const StructureDescriptor& sd) {
  Term unit = one(sd);
  std::vector<Atom> atoms(n, unit.head());
  return Term::raw(std::move(atoms));
}

inline Term generator(std::size_t index, const StructureDescriptor& sd) {
  if (!sd.has_gen(index)) {
    throw Error(ErrorKind::invalid_index,
                "g(" + std::to_string(index) + ") outside {0} u X of size " + to_string(sd.order));
  }
  return Term(Atom::gen(index));
}

/// φ_k(t), collapsed to t when t is a fixed point of φ_k.
inline Term apply_phi(std::size_t level, const Term& t, const StructureDescriptor& sd) {
  if (!sd.has_phi(level)) {
    throw Error(ErrorKind::malformed_term,
                "phi(" + std::to_string(level) + ",.) needs level < " + std::to_string(sd.levels));
  }
  require_member(t, sd);
  return detail::apply_phi(level, t);
}

/// Ordinal sum: atoms of s below the head of t are absorbed.
inline Term add(const Term& s, const Term& t, const StructureDescriptor& sd) {
  require_member(s, sd);
  require_member(t, sd);
  return detail::add(s, t);
}

/// The least γ with a + γ = b.
inline Term subtract(const Term& a, const Term& b, const StructureDescriptor& sd) {
  require_member(a, sd);
  require_member(b, sd);
  auto lhs = a.atoms();
  auto rhs = b.atoms();
  std::size_t i = 0;
  while (i < lhs.size() && i < rhs.size() && lhs[i] == rhs[i]) ++i;
  if (i < lhs.size() && (i == rhs.size() || detail::compare_atoms(lhs[i], rhs[i]) > 0)) {
    throw Error(ErrorKind::underflow, "left operand exceeds right operand");
  }
  return Term::raw({rhs.begin() + static_cast<std::ptrdiff_t>(i), rhs.end()});
}

/// Rebuilds `raw` bottom-up into its normal form.
inline Term normalize(const Term& raw, const StructureDescriptor& sd) {
  require_member(raw, sd, ErrorKind::malformed_term);
  auto go = [](auto& self, const Term& t) -> Term {
    Term result;
    for (const Atom& a : t.atoms()) {
      Term piece = a.is_gen() ? Term(a) : detail::apply_phi(a.level(), self(self, a.arg()));
      result = detail::add(result, piece);
    }
    return result;
  };
  return go(go, raw);
}

/// True when `t` is already in normal form (and so equals normalize(t)).
inline bool is_normal(const Term& t) {
  auto atoms = t.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    if (i > 0 && detail::compare_atoms(atoms[i - 1], a) < 0) return false;
    if (a.is_phi() && (detail::fixes(a.level(), a.arg()) || !is_normal(a.arg()))) return false;
  }
  return true;
}

enum class TermClass { zero, successor, limit };

inline std::string to_string(TermClass c) {
  switch (c) {
    case TermClass::zero: return "Zero";
    case TermClass::successor: return "Successor";
    case TermClass::limit: return "Limit";
  }
  return "?";
}

inline TermClass classify(const Term& t, const StructureDescriptor& sd) {
  if (t.is_zero()) return TermClass::zero;
  return t.last() == one(sd).head() ? TermClass::successor : TermClass::limit;
}

// --- dilation -------------------------------------------------------------

/// An order-preserving map on generator indices. 0 is always sent to 0;
/// indices missing from the table are outside the map's domain.
class GeneratorMap {
 public:
  GeneratorMap() : table_{{0, 0}} {}

  GeneratorMap(std::initializer_list<std::pair<const std::size_t, std::size_t>> entries)
      : GeneratorMap(std::map<std::size_t, std::size_t>(entries)) {}

  explicit GeneratorMap(std::map<std::size_t, std::size_t> table) : table_(std::move(table)) {
    auto [it, inserted] = table_.emplace(0, 0);
    if (!inserted && it->second != 0) {
      throw Error(ErrorKind::invalid_dilation, "map must send 0 to 0");
    }
    std::size_t previous = 0;
    bool first = true;
    for (const auto& [from, to] : table_) {
      if (!first && to <= previous) {
        throw Error(ErrorKind::invalid_dilation,
                    "map is not order preserving at " + std::to_string(from));
      }
      previous = to;
      first = false;
    }
  }

  /// The strictly increasing map j ↦ scale·j on 0..limit.
  static GeneratorMap scaled(std::size_t limit, std::size_t scale) {
    std::map<std::size_t, std::size_t> table;
    for (std::size_t j = 0; j <= limit; ++j) table.emplace(j, j * scale);
    return GeneratorMap(std::move(table));
  }

  std::size_t operator()(std::size_t index) const {
    auto it = table_.find(index);
    if (it == table_.end()) {
      throw Error(ErrorKind::invalid_dilation,
                  "generator " + std::to_string(index) + " outside the map's domain");
    }
    return it->second;
  }

  const std::map<std::size_t, std::size_t>& table() const noexcept { return table_; }

 private:
  std::map<std::size_t, std::size_t> table_;
};

/// Extends an order-preserving map on {0} ∪ X to terms: Gen(j) ↦ Gen(f(j)).
inline Term dilate(const Term& t, const GeneratorMap& f, const StructureDescriptor& from,
                   const StructureDescriptor& to) {
  if (from.levels != to.levels) {
    throw Error(ErrorKind::invalid_dilation, "dilation must keep the derivative level");
  }
  require_member(t, from);
  for (const auto& [j, image] : f.table()) {
    if (from.has_gen(j) && !to.has_gen(image)) {
      throw Error(ErrorKind::invalid_dilation,
                  "image g(" + std::to_string(image) + ") outside target order");
    }
  }
  auto go = [&f](auto& self, const Term& s) -> Term {
    std::vector<Atom> atoms;
    atoms.reserve(s.size());
    for (const Atom& a : s.atoms()) {
      atoms.push_back(a.is_gen() ? Atom::gen(f(a.index())) : Atom::phi(a.level(), self(self, a.arg())));
    }
    return Term::raw(std::move(atoms));
  };
  return normalize(go(go, t), to);
}

/// Maps a base-structure term over X = omega (where Gen(j) = ω^j) into a
/// structure with K >= 1, replacing each Gen(j) by the atom ω^j.
inline Term lift_base(const Term& t, const StructureDescriptor& to) {
  if (to.levels == 0) throw Error(ErrorKind::structure_mismatch, "target needs K >= 1");
  std::vector<Atom> atoms;
  atoms.reserve(t.size());
  for (const Atom& a : t.atoms()) {
    if (!a.is_gen()) throw Error(ErrorKind::structure_mismatch, "source must be a K = 0 term");
    atoms.push_back(Atom::phi(0, numeral(a.index(), to)));
  }
  return normalize(Term::raw(std::move(atoms)), to);
}

/// Largest generator index occurring in t, if any.
inline std::optional<std::size_t> max_generator(const Term& t) {
  std::optional<std::size_t> best;
  for (const Atom& a : t.atoms()) {
    std::optional<std::size_t> here = a.is_gen() ? std::optional(a.index()) : max_generator(a.arg());
    if (here && (!best || *here > *best)) best = here;
  }
  return best;
}

}  // namespace ordinal
