#pragma once

#include "crystorb/exactla/linear_algebra.hpp"
#include "crystorb/exactla/normal_form.hpp"

#include <deque>
#include <map>
#include <numeric>
#include <string>

namespace crystorb {

/// Closure exceeded the configured element bound.
class ExceedsBound : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kDefaultGroupBound = 512;

/// A finite group of invertible integer matrices with its multiplication table.
///
/// Element 0 is the identity. Elements are ordered breadth-first over words in
/// the generators (right multiplication by generators in input order).
class MatrixGroup {
 public:
  MatrixGroup() = default;

  /// Builds the group table for an element list that is already closed.
  /// Throws InvalidArgument when it is not.
  static MatrixGroup from_elements(std::vector<IntMatrix> elements,
                                   std::vector<std::size_t> generators = {}) {
    MatrixGroup g;
    if (elements.empty()) throw InvalidArgument("group needs an identity");
    g.rank_ = elements.front().rows();
    g.elements_ = std::move(elements);
    g.generators_ = std::move(generators);
    g.build_tables();
    return g;
  }

  std::size_t rank() const { return rank_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<IntMatrix>& elements() const { return elements_; }
  const IntMatrix& element(std::size_t i) const { return elements_[i]; }
  const std::vector<std::size_t>& generators() const { return generators_; }

  std::size_t multiply(std::size_t a, std::size_t b) const {
    return table_[a * order() + b];
  }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t power(std::size_t a, long k) const {
    std::size_t base = k < 0 ? inverse(a) : a;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-k)
                            : static_cast<unsigned long>(k);
    std::size_t acc = 0;
    while (e) {
      if (e & 1) acc = multiply(acc, base);
      base = multiply(base, base);
      e >>= 1;
    }
    return acc;
  }
  std::size_t element_order(std::size_t a) const { return orders_[a]; }
  std::size_t exponent() const {
    std::size_t e = 1;
    for (auto o : orders_) e = std::lcm(e, o);
    return e;
  }
  std::size_t conjugate(std::size_t g, std::size_t by) const {
    return multiply(multiply(by, g), inverse(by));
  }

  /// Index of an element equal to m, if present.
  std::optional<std::size_t> find(const IntMatrix& m) const {
    auto it = index_.find(m.data());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = a + 1; b < order(); ++b)
        if (multiply(a, b) != multiply(b, a)) return false;
    return true;
  }

  /// Integer trace of every element (the character of the defining representation).
  std::vector<Integer> traces() const {
    std::vector<Integer> t;
    for (const auto& m : elements_) {
      Integer s = 0;
      for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
      t.push_back(s);
    }
    return t;
  }

  /// Subgroup generated by the given element indices, as sorted indices into this group.
  std::vector<std::size_t> generated_subgroup(
      const std::vector<std::size_t>& gens) const {
    std::vector<bool> in(order(), false);
    std::vector<std::size_t> members{0};
    in[0] = true;
    for (std::size_t k = 0; k < members.size(); ++k)
      for (auto g : gens) {
        std::size_t p = multiply(members[k], g);
        if (!in[p]) {
          in[p] = true;
          members.push_back(p);
        }
      }
    std::sort(members.begin(), members.end());
    return members;
  }

  /// Normal closure of the given elements.
  std::vector<std::size_t> normal_closure(
      const std::vector<std::size_t>& gens) const {
    std::vector<std::size_t> conj;
    for (auto g : gens)
      for (std::size_t h = 0; h < order(); ++h) conj.push_back(conjugate(g, h));
    std::sort(conj.begin(), conj.end());
    conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
    return generated_subgroup(conj);
  }

  /// The subgroup on the given member indices, re-indexed with identity first.
  MatrixGroup subgroup(const std::vector<std::size_t>& members) const {
    std::vector<IntMatrix> els;
    els.push_back(elements_[0]);
    for (auto m : members)
      if (m != 0) els.push_back(elements_[m]);
    return from_elements(std::move(els));
  }

 private:
  void build_tables() {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (elements_[i].rows() != rank_ || elements_[i].cols() != rank_)
        throw InvalidArgument("group elements must share a square shape");
      if (!index_.emplace(elements_[i].data(), i).second)
        throw InvalidArgument("duplicate group element");
    }
    if (elements_[0] != IntMatrix::identity(rank_))
      throw InvalidArgument("element 0 must be the identity");
    const std::size_t n = elements_.size();
    table_.assign(n * n, 0);
    inverse_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        auto it = index_.find((elements_[a] * elements_[b]).data());
        if (it == index_.end())
          throw InvalidArgument("element list is not closed under products");
        table_[a * n + b] = it->second;
        if (it->second == 0) inverse_[a] = b;
      }
    orders_.assign(n, 1);
    for (std::size_t a = 0; a < n; ++a) {
      std::size_t x = a;
      while (x != 0) {
        x = multiply(x, a);
        ++orders_[a];
      }
    }
  }

  std::size_t rank_ = 0;
  std::vector<IntMatrix> elements_;
  std::vector<std::size_t> generators_;
  std::map<std::vector<Integer>, std::size_t> index_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> orders_;
};

/// Finite group generated by integer matrices.
///
/// Throws ExceedsBound once more than `bound` elements appear, which is how an
/// infinite (or too large) group is reported.
inline MatrixGroup closure(const std::vector<IntMatrix>& generators,
                           std::size_t bound = kDefaultGroupBound,
                           std::size_t rank_hint = 0) {
  std::size_t r = generators.empty() ? rank_hint : generators.front().rows();
  if (r == 0) throw InvalidArgument("closure: rank unknown for empty generator list");
  for (const auto& g : generators) {
    if (g.rows() != r || g.cols() != r)
      throw InvalidArgument("closure: generators must be square of equal size");
    if (determinant(g) == 0)
      throw InvalidArgument("closure: generator is not invertible");
  }
  std::vector<IntMatrix> elements{IntMatrix::identity(r)};
  std::map<std::vector<Integer>, std::size_t> seen{{elements[0].data(), 0}};
  std::vector<std::size_t> gen_index;
  for (const auto& g : generators) {
    auto [it, fresh] = seen.emplace(g.data(), elements.size());
    if (fresh) elements.push_back(g);
    gen_index.push_back(it->second);
  }
  for (std::size_t k = 0; k < elements.size(); ++k) {
    for (const auto& g : generators) {
      IntMatrix p = elements[k] * g;
      if (seen.emplace(p.data(), elements.size()).second) {
        elements.push_back(std::move(p));
        if (elements.size() > bound)
          throw ExceedsBound("group closure exceeded bound of " +
                             std::to_string(bound) + " elements");
      }
    }
  }
  if (elements.size() > bound)
    throw ExceedsBound("group closure exceeded bound of " +
                       std::to_string(bound) + " elements");
  return MatrixGroup::from_elements(std::move(elements), std::move(gen_index));
}

struct ConjugacyClass {
  std::size_t representative = 0;    ///< smallest element index in the class
  std::vector<std::size_t> members;  ///< sorted
  std::size_t size() const { return members.size(); }
};

/// Classes ordered by representative index, so the identity class comes first.
inline std::vector<ConjugacyClass> conjugacy_classes(const MatrixGroup& G) {
  std::vector<bool> done(G.order(), false);
  std::vector<ConjugacyClass> classes;
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (done[g]) continue;
    ConjugacyClass c;
    c.representative = g;
    for (std::size_t h = 0; h < G.order(); ++h) {
      std::size_t x = G.conjugate(g, h);
      if (!done[x]) {
        done[x] = true;
        c.members.push_back(x);
      }
    }
    std::sort(c.members.begin(), c.members.end());
    classes.push_back(std::move(c));
  }
  return classes;
}

}  // namespace crystorb
