#pragma once

// Finitely presented groups for orbifold fundamental groups: quotients by
// powers of loops, the three-lines presentation, Todd-Coxeter enumeration and
// the multiplicity bookkeeping of orbifold coverings.

#include "crystorb/quotient/quotient.hpp"

#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace crystorb {

/// Letters are signed 1-based generator indices: k is g_k, -k its inverse.
using Word = std::vector<int>;

inline Word free_reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

inline Word power_word(const Word& w, std::size_t k) {
  Word out;
  for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
  return free_reduce(out);
}

/// [a, b] = a b a^-1 b^-1
inline Word commutator_word(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  const Word ai = inverse_word(a), bi = inverse_word(b);
  out.insert(out.end(), ai.begin(), ai.end());
  out.insert(out.end(), bi.begin(), bi.end());
  return free_reduce(out);
}

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;  ///< freely reduced, nonempty

  std::size_t rank() const { return generators.size(); }

  void check_word(const Word& w) const {
    for (int x : w)
      if (x == 0 || static_cast<std::size_t>(std::abs(x)) > generators.size())
        throw InvalidArgument("word letter " + std::to_string(x) + " outside the generators");
  }

  void add_relator(const Word& w) {
    check_word(w);
    Word r = free_reduce(w);
    if (!r.empty()) relators.push_back(std::move(r));
  }

  static Presentation free_group(std::size_t n, const std::string& prefix = "g") {
    Presentation p;
    for (std::size_t i = 0; i < n; ++i) p.generators.push_back(prefix + std::to_string(i + 1));
    return p;
  }

  bool operator==(const Presentation&) const = default;
};

/// Adds loop_i^{m_i} for every m_i > 1.
inline Presentation orbifold_quotient(Presentation p, const std::vector<Word>& loops,
                                      const std::vector<std::size_t>& m) {
  if (loops.size() != m.size()) throw InvalidArgument("one multiplicity per loop is required");
  for (std::size_t i = 0; i < loops.size(); ++i) {
    if (m[i] == 0) throw InvalidArgument("multiplicities must be at least 1");
    p.check_word(loops[i]);
    if (m[i] > 1) p.add_relator(power_word(loops[i], m[i]));
  }
  for (auto& r : p.relators) r = free_reduce(r);
  return p;
}

/// Fundamental group of the complement of three lines through the origin of
/// C^2 with orbifold multiplicities: gamma_0 = gamma_1 gamma_2 gamma_3 is
/// central and gamma_i^{m_i} = 1.
inline Presentation three_lines_group(std::size_t m1, std::size_t m2, std::size_t m3) {
  if (m1 < 2 || m2 < 2 || m3 < 2) throw InvalidArgument("multiplicities must be at least 2");
  Presentation p;
  p.generators = {"gamma0", "gamma1", "gamma2", "gamma3"};
  for (int i = 2; i <= 4; ++i) p.add_relator(commutator_word({1}, {i}));
  p.add_relator({1, -4, -3, -2});
  const std::size_t m[3] = {m1, m2, m3};
  for (int i = 0; i < 3; ++i) p.add_relator(power_word({i + 2}, m[i]));
  return p;
}

/// The three-lines group with gamma_0 killed.
inline Presentation three_lines_quotient(std::size_t m1, std::size_t m2, std::size_t m3) {
  Presentation p = three_lines_group(m1, m2, m3);
  p.add_relator({1});
  return p;
}

inline bool platonic_check(std::size_t m1, std::size_t m2, std::size_t m3) {
  if (m1 < 2 || m2 < 2 || m3 < 2) throw InvalidArgument("multiplicities must be at least 2");
  // 1/m1 + 1/m2 + 1/m3 > 1
  return m2 * m3 + m1 * m3 + m1 * m2 > m1 * m2 * m3;
}

/// "dihedral", "tetrahedral", "octahedral", "icosahedral family", or for
/// non-Platonic triples "euclidean" (sum 1) and "hyperbolic".
inline std::string platonic_class(std::size_t m1, std::size_t m2, std::size_t m3) {
  std::size_t m[3] = {m1, m2, m3};
  std::sort(m, m + 3);
  if (!platonic_check(m[0], m[1], m[2]))
    return m[1] * m[2] + m[0] * m[2] + m[0] * m[1] == m[0] * m[1] * m[2] ? "euclidean"
                                                                         : "hyperbolic";
  if (m[0] == 2 && m[1] == 2) return "dihedral";
  if (m[2] == 3) return "tetrahedral";
  if (m[2] == 4) return "octahedral";
  return "icosahedral family";
}

/// Order of the finite group with that Platonic triple, 0 otherwise.
inline std::size_t platonic_order(std::size_t m1, std::size_t m2, std::size_t m3) {
  if (!platonic_check(m1, m2, m3)) return 0;
  // |G| = 2 / (1/m1 + 1/m2 + 1/m3 - 1)
  const std::size_t num = 2 * m1 * m2 * m3;
  const std::size_t den = m2 * m3 + m1 * m3 + m1 * m2 - m1 * m2 * m3;
  return num / den;
}

struct EnumerationResult {
  std::optional<std::size_t> order;  ///< empty when the coset bound was exhausted
  std::size_t cosets_defined = 0;

  bool finite() const { return order.has_value(); }
};

namespace detail {

/// HLT Todd-Coxeter over the trivial subgroup with coincidence processing.
class CosetTable {
 public:
  CosetTable(const Presentation& p, std::size_t bound)
      : ngen_(p.rank()), bound_(bound), rels_(p.relators) {
    add_row();
  }

  EnumerationResult run() {
    EnumerationResult res;
    for (std::size_t a = 0; a < table_.size(); ++a) {
      for (const auto& w : rels_) {
        if (!live(a)) break;
        if (!scan_and_fill(a, w)) return unknown();
      }
      if (!live(a)) continue;
      for (std::size_t x = 0; x < 2 * ngen_; ++x)
        if (table_[a][x] < 0 && !define(a, x)) return unknown();
    }
    std::size_t n = 0;
    for (std::size_t a = 0; a < table_.size(); ++a) n += live(a) ? 1 : 0;
    res.order = n;
    res.cosets_defined = table_.size();
    return res;
  }

 private:
  std::size_t ngen_, bound_;
  std::vector<Word> rels_;
  std::vector<std::vector<long>> table_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> queue_;

  EnumerationResult unknown() const { return {std::nullopt, table_.size()}; }

  static std::size_t col(int letter) {
    return letter > 0 ? 2 * static_cast<std::size_t>(letter - 1)
                      : 2 * static_cast<std::size_t>(-letter - 1) + 1;
  }
  static std::size_t inv(std::size_t c) { return c ^ 1u; }

  void add_row() {
    table_.emplace_back(2 * ngen_, -1);
    parent_.push_back(parent_.size());
  }
  bool live(std::size_t a) const { return parent_[a] == a; }

  std::size_t rep(std::size_t k) {
    std::size_t r = k;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[k] != r) {
      std::size_t next = parent_[k];
      parent_[k] = r;
      k = next;
    }
    return r;
  }

  bool define(std::size_t a, std::size_t x) {
    if (table_.size() >= bound_) return false;
    const std::size_t b = table_.size();
    add_row();
    table_[a][x] = static_cast<long>(b);
    table_[b][inv(x)] = static_cast<long>(a);
    return true;
  }

  void merge(std::size_t k, std::size_t l) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    const std::size_t lo = std::min(k, l), hi = std::max(k, l);
    parent_[hi] = lo;
    queue_.push_back(hi);
  }

  void coincidence(std::size_t a, std::size_t b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      const std::size_t g = queue_[i];
      for (std::size_t x = 0; x < 2 * ngen_; ++x) {
        if (table_[g][x] < 0) continue;
        const std::size_t d = static_cast<std::size_t>(table_[g][x]);
        table_[d][inv(x)] = -1;
        const std::size_t mu = rep(g), nu = rep(d);
        if (table_[mu][x] >= 0)
          merge(nu, static_cast<std::size_t>(table_[mu][x]));
        else if (table_[nu][inv(x)] >= 0)
          merge(mu, static_cast<std::size_t>(table_[nu][inv(x)]));
        else {
          table_[mu][x] = static_cast<long>(nu);
          table_[nu][inv(x)] = static_cast<long>(mu);
        }
      }
    }
  }

  bool scan_and_fill(std::size_t a, const Word& w) {
    std::size_t f = a, b = a;
    long i = 0, j = static_cast<long>(w.size()) - 1;
    while (true) {
      while (i <= j && table_[f][col(w[i])] >= 0) {
        f = static_cast<std::size_t>(table_[f][col(w[i])]);
        ++i;
      }
      if (i > j) {
        if (f != a) coincidence(f, a);
        return true;
      }
      while (j >= i && table_[b][inv(col(w[j]))] >= 0) {
        b = static_cast<std::size_t>(table_[b][inv(col(w[j]))]);
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        table_[f][col(w[i])] = static_cast<long>(b);
        table_[b][inv(col(w[i]))] = static_cast<long>(f);
        return true;
      }
      if (!define(f, col(w[i]))) return false;
    }
  }
};

}  // namespace detail

/// Order of the presented group if enumeration over the trivial subgroup
/// closes with at most `bound` cosets defined.
inline EnumerationResult coset_enumerate(const Presentation& p, std::size_t bound = 10000) {
  for (const auto& r : p.relators) p.check_word(r);
  if (bound == 0) return {std::nullopt, 0};
  return detail::CosetTable(p, bound).run();
}

struct CoveringData {
  std::vector<std::size_t> source_multiplicity;  ///< m_i of D_i
  std::vector<std::size_t> local_degree;         ///< a_i
  std::vector<std::size_t> target_of;            ///< j with D_i over B_j (0-based)
  std::vector<std::size_t> target_multiplicity;  ///< n_j of B_j
};

struct CoveringViolation {
  enum class Kind { multiplicity, unhit_target, bad_index };
  Kind kind;
  std::size_t index = 0;  ///< i for multiplicity and bad_index, j for unhit_target
  std::string message;
};

struct CoveringReport {
  bool compatible = true;
  std::vector<CoveringViolation> violations;
};

/// n_j = a_i m_i for every source divisor and every target divisor is hit.
inline CoveringReport covering_compatible(const CoveringData& c) {
  CoveringReport rep;
  const std::size_t k = c.source_multiplicity.size();
  auto fail = [&](CoveringViolation::Kind kind, std::size_t idx, std::string msg) {
    rep.compatible = false;
    rep.violations.push_back({kind, idx, std::move(msg)});
  };
  if (c.local_degree.size() != k || c.target_of.size() != k)
    throw InvalidArgument("source multiplicities, local degrees and targets differ in length");
  std::vector<bool> hit(c.target_multiplicity.size(), false);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = c.target_of[i];
    if (j >= c.target_multiplicity.size()) {
      fail(CoveringViolation::Kind::bad_index, i,
           "source divisor " + std::to_string(i + 1) + " maps to a missing target");
      continue;
    }
    hit[j] = true;
    const std::size_t expected = c.local_degree[i] * c.source_multiplicity[i];
    if (c.target_multiplicity[j] != expected)
      fail(CoveringViolation::Kind::multiplicity, i,
           "at source divisor " + std::to_string(i + 1) + ": n = " +
               std::to_string(c.target_multiplicity[j]) + " but a*m = " + std::to_string(expected));
  }
  for (std::size_t j = 0; j < hit.size(); ++j)
    if (!hit[j])
      fail(CoveringViolation::Kind::unhit_target, j,
           "target divisor " + std::to_string(j + 1) + " is not covered");
  return rep;
}

/// Loops around the branch divisors of T -> T/G, one per divisor class, with
/// their images in G (generators of the cyclic pointwise stabilizers).
struct DivisorLoops {
  Presentation presentation;           ///< free on the loops, with relators loop^m
  std::vector<std::size_t> images;     ///< group element of each loop
  std::vector<std::size_t> multiplicities;
};

inline DivisorLoops divisor_loops(const OrbifoldDescriptor& d) {
  DivisorLoops out;
  out.presentation = Presentation::free_group(d.divisors.size(), "loop");
  std::vector<Word> loops;
  for (std::size_t k = 0; k < d.divisors.size(); ++k) {
    const auto& c = d.divisors[k];
    if (!c.cyclic) throw Error("pointwise stabilizer of a divisor is not cyclic");
    loops.push_back({static_cast<int>(k + 1)});
    out.images.push_back(c.stabilizer_generator);
    out.multiplicities.push_back(c.multiplicity);
  }
  out.presentation = orbifold_quotient(out.presentation, loops, out.multiplicities);
  return out;
}

}  // namespace crystorb
