#pragma once

#include "crystorb/exactla.hpp"
#include "crystorb/groupcore/matrix_group.hpp"

#include <map>
#include <optional>

namespace crystorb {

/// The affine closure produced more distinct linear parts than allowed.
class NotFinite : public ExceedsBound {
 public:
  using ExceedsBound::ExceedsBound;
};

/// An element with trivial linear part and non-integral translation was found.
class KernelTooBig : public Error {
 public:
  using Error::Error;
};

/// Translation data incompatible with the group law.
class CocycleViolation : public Error {
 public:
  using Error::Error;
};

/// The adjoined translations do not form a lattice.
class NonLattice : public Error {
 public:
  using Error::Error;
};

/// v -> linear * v + translation, with linear in GL(Z^r).
struct AffineMap {
  IntMatrix linear;
  RatVector translation;

  RatVector apply(const RatVector& v) const { return linear * v + translation; }
  AffineMap compose(const AffineMap& rhs) const {  // this after rhs
    return {linear * rhs.linear, linear * rhs.translation + translation};
  }
  bool operator==(const AffineMap&) const = default;
};

/// Raw generators of a candidate crystallographic group acting on R^rank.
struct CrystData {
  std::size_t rank = 0;
  std::vector<AffineMap> generators;
};

/// g -> u_g for every element of the point group, entries in [0,1).
using VectorSystem = std::vector<RatVector>;

/// A normalized 2-cocycle G x G -> Z^r, stored row-major as f[g * |G| + h].
struct ExtensionCocycle {
  std::size_t order = 0;
  std::vector<IntVector> values;

  const IntVector& operator()(std::size_t g, std::size_t h) const {
    return values[g * order + h];
  }
  IntVector& operator()(std::size_t g, std::size_t h) { return values[g * order + h]; }

  static ExtensionCocycle zero(std::size_t order, std::size_t rank) {
    return {order, std::vector<IntVector>(order * order, IntVector(rank, 0))};
  }
};

/// A crystallographic group Gamma with lattice Z^rank, point group G = L(Gamma)
/// and vector system u.
struct CrystGroup {
  std::size_t rank = 0;
  MatrixGroup group;
  VectorSystem translations;
  /// Columns are the lattice basis in the coordinates of the input data.
  RatMatrix basis;

  std::size_t order() const { return group.order(); }
  const IntMatrix& linear(std::size_t g) const { return group.element(g); }
  const RatVector& translation(std::size_t g) const { return translations[g]; }
  AffineMap affine(std::size_t g) const { return {linear(g), translation(g)}; }
};

namespace detail {

inline void check_affine_shape(const CrystData& data) {
  if (data.rank == 0) throw InvalidArgument("rank must be positive");
  for (const auto& g : data.generators) {
    if (g.linear.rows() != data.rank || g.linear.cols() != data.rank)
      throw InvalidArgument("linear part must be a rank x rank matrix");
    if (g.translation.size() != data.rank)
      throw InvalidArgument("translation part must have rank entries");
    if (abs(determinant(g.linear)) != 1)
      throw InvalidArgument("linear part is not invertible over the integers");
  }
}

/// All elements of Gamma / Z^r as (linear, translation mod 1) pairs, identity first.
inline std::vector<AffineMap> affine_closure(const CrystData& data, std::size_t bound) {
  using Key = std::pair<std::vector<Integer>, RatVector>;
  std::vector<AffineMap> gens;
  for (const auto& g : data.generators) gens.push_back({g.linear, frac(g.translation)});
  std::vector<AffineMap> elems{{IntMatrix::identity(data.rank), RatVector(data.rank, 0)}};
  std::map<Key, std::size_t> seen{{{elems[0].linear.data(), elems[0].translation}, 0}};
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (const auto& g : gens) {
      AffineMap p = elems[k].compose(g);
      p.translation = frac(p.translation);
      if (seen.emplace(Key{p.linear.data(), p.translation}, elems.size()).second) {
        elems.push_back(std::move(p));
        if (elems.size() > bound)
          throw NotFinite("affine closure exceeded bound of " + std::to_string(bound) +
                          " elements");
      }
    }
  }
  return elems;
}

inline bool cocycle_condition_holds(const MatrixGroup& G, const VectorSystem& u) {
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h)
      if (!congruent_mod_one(u[G.multiply(g, h)], G.element(g) * u[h] + u[g]))
        return false;
  return true;
}

}  // namespace detail

/// Checks that the generators define a crystallographic group with lattice
/// exactly Z^rank and returns it with the vector system on all of G.
inline CrystGroup verify_crystallographic(const CrystData& data,
                                          std::size_t bound = kDefaultGroupBound) {
  detail::check_affine_shape(data);
  std::vector<IntMatrix> linear{IntMatrix::identity(data.rank)};
  VectorSystem u{RatVector(data.rank, 0)};
  std::map<std::vector<Integer>, std::size_t> index{{linear[0].data(), 0}};

  // Breadth-first over affine maps; two maps with equal linear parts and
  // different translations mod Z^r differ by a pure translation outside Z^r.
  auto visit = [&](const AffineMap& m) -> std::size_t {
    RatVector t = frac(m.translation);
    auto [it, fresh] = index.emplace(m.linear.data(), linear.size());
    if (fresh) {
      linear.push_back(m.linear);
      u.push_back(std::move(t));
      if (linear.size() > bound)
        throw NotFinite("point group exceeded bound of " + std::to_string(bound) +
                        " elements");
    } else if (u[it->second] != t) {
      throw KernelTooBig("pure translation by a non-lattice vector; normalize the action first");
    }
    return it->second;
  };
  std::vector<std::size_t> gen_index;
  for (const auto& g : data.generators) gen_index.push_back(visit(g));
  for (std::size_t k = 0; k < linear.size(); ++k)
    for (const auto& g : data.generators)
      visit(AffineMap{linear[k], u[k]}.compose(g));

  CrystGroup out;
  out.rank = data.rank;
  out.group = MatrixGroup::from_elements(std::move(linear), std::move(gen_index));
  out.translations = std::move(u);
  out.basis = RatMatrix::identity(data.rank);
  if (!detail::cocycle_condition_holds(out.group, out.translations))
    throw CocycleViolation("vector system violates u_gh = L(g) u_h + u_g mod Z^r");
  return out;
}

/// Enlarges the lattice by every pure translation in the group, rebases it to
/// Z^rank and verifies the result. `basis` of the result holds the new lattice
/// basis as columns in the input coordinates.
inline CrystGroup normalize_action(const CrystData& data,
                                   std::size_t bound = kDefaultGroupBound,
                                   std::size_t translation_bound = 4096) {
  detail::check_affine_shape(data);
  const std::size_t r = data.rank;
  // the linear parts alone decide finiteness
  std::vector<IntMatrix> lin;
  for (const auto& g : data.generators) lin.push_back(g.linear);
  std::size_t point_order = 0;
  try {
    point_order = closure(lin, bound, r).order();
  } catch (const ExceedsBound& e) {
    throw NotFinite(e.what());
  }
  std::vector<AffineMap> elems;
  try {
    elems = detail::affine_closure(data, point_order * translation_bound);
  } catch (const NotFinite&) {
    throw NonLattice("adjoined translations exceed " + std::to_string(translation_bound) +
                     " classes mod Z^r");
  }

  std::vector<RatVector> pure;
  for (const auto& e : elems)
    if (e.linear == IntMatrix::identity(r) && !is_integral(e.translation))
      pure.push_back(e.translation);
  if (pure.empty()) return verify_crystallographic(data, bound);

  Integer D = 1;
  for (const auto& t : pure) D = lcm(D, common_denominator(t));
  IntMatrix stacked(r + pure.size(), r);
  for (std::size_t i = 0; i < r; ++i) stacked(i, i) = D;
  for (std::size_t k = 0; k < pure.size(); ++k)
    for (std::size_t j = 0; j < r; ++j)
      stacked(r + k, j) = numerator(pure[k][j] * Rational(D));
  const auto h = hnf(stacked);
  if (h.rank != r) throw NonLattice("adjoined translations do not span a rank-r lattice");
  RatMatrix P(r, r);  // columns: new basis vectors
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) P(j, i) = Rational(h.H(i, j)) / Rational(D);
  const RatMatrix Pinv = inverse(P);

  CrystData rebased{r, {}};
  for (const auto& g : data.generators) {
    RatMatrix L = Pinv * to_rational(g.linear) * P;
    if (!is_integral(L))
      throw NonLattice("linear part does not preserve the enlarged lattice");
    rebased.generators.push_back({to_integer(L), Pinv * g.translation});
  }
  CrystGroup out = verify_crystallographic(rebased, bound);
  out.basis = P;
  return out;
}

/// Cocycle identity L(g) f(h,k) - f(gh,k) + f(g,hk) - f(g,h) = 0 and normalization.
inline bool is_normalized_cocycle(const MatrixGroup& G, const ExtensionCocycle& f) {
  const std::size_t n = G.order();
  if (f.order != n || f.values.size() != n * n) return false;
  for (const auto& v : f.values)
    if (v.size() != G.rank()) return false;
  const IntVector zero(G.rank(), 0);
  for (std::size_t g = 0; g < n; ++g)
    if (f(g, 0) != zero || f(0, g) != zero) return false;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t k = 0; k < n; ++k) {
        IntVector lhs = G.element(g) * f(h, k) - f(G.multiply(g, h), k) +
                        f(g, G.multiply(h, k)) - f(g, h);
        if (lhs != zero) return false;
      }
  return true;
}

/// Vector system realizing the extension given by f: u_g = (1/|G|) sum_h f(g,h).
/// The exact identity u_gh = L(g) u_h + u_g - f(g,h) holds before reduction mod 1.
inline VectorSystem affine_realization(const MatrixGroup& G, const ExtensionCocycle& f) {
  if (!is_normalized_cocycle(G, f))
    throw CocycleViolation("input is not a normalized 2-cocycle");
  const std::size_t n = G.order();
  VectorSystem u(n, RatVector(G.rank(), 0));
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h) u[g] = u[g] + to_rational(f(g, h));
    for (auto& x : u[g]) x /= Rational(static_cast<long long>(n));
  }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      if (u[G.multiply(g, h)] != G.element(g) * u[h] + u[g] - to_rational(f(g, h)))
        throw CocycleViolation("averaged vector system fails the realization identity");
  for (auto& v : u) v = frac(v);
  return u;
}

/// The cocycle f(g,h) = u_g + L(g) u_h - u_gh of a vector system.
inline ExtensionCocycle cocycle_from_vector_system(const MatrixGroup& G,
                                                   const VectorSystem& u) {
  const std::size_t n = G.order();
  if (u.size() != n) throw InvalidArgument("vector system must cover every element");
  if (!is_integral(u[0])) throw CocycleViolation("u_1 must vanish mod Z^r");
  VectorSystem w(u.size());
  for (std::size_t g = 0; g < n; ++g) w[g] = g == 0 ? RatVector(G.rank(), 0) : u[g];
  ExtensionCocycle f = ExtensionCocycle::zero(n, G.rank());
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      RatVector d = w[g] + G.element(g) * w[h] - w[G.multiply(g, h)];
      if (!is_integral(d)) throw CocycleViolation("vector system violates the cocycle condition");
      for (std::size_t i = 0; i < d.size(); ++i) f(g, h)[i] = numerator(d[i]);
    }
  return f;
}

struct EquivalenceResult {
  bool equivalent = false;
  RatVector witness;  ///< w with u_g - u'_g = (L(g) - I) w mod Z^r; smallest in [0,1)^r
};

/// Translation-conjugacy of two vector systems over the same point group.
inline EquivalenceResult realizations_equivalent(const MatrixGroup& G, const VectorSystem& u,
                                                 const VectorSystem& v) {
  const std::size_t n = G.order(), r = G.rank();
  if (u.size() != n || v.size() != n)
    throw InvalidArgument("vector systems must cover every element");
  IntMatrix A(n * r, r);
  RatVector b(n * r);
  for (std::size_t g = 0; g < n; ++g) {
    const IntMatrix M = G.element(g) - IntMatrix::identity(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) A(g * r + i, j) = M(i, j);
      b[g * r + i] = u[g][i] - v[g][i];
    }
  }
  const auto sol = solve_congruence(A, b);
  if (sol.empty()) return {};
  return {true, sol.points.front()};
}

struct TorsionReport {
  bool torsion_free = true;
  std::vector<std::size_t> offending;  ///< element indices with a fixed point
};

/// Gamma is torsion free iff no g != 1 has a fixed point on R^r / Z^r.
inline TorsionReport is_torsion_free(const CrystGroup& gamma) {
  TorsionReport rep;
  const auto I = IntMatrix::identity(gamma.rank);
  for (std::size_t g = 1; g < gamma.order(); ++g) {
    if (!solve_mod_lattice(gamma.linear(g) - I, -gamma.translation(g)).empty()) {
      rep.torsion_free = false;
      rep.offending.push_back(g);
    }
  }
  return rep;
}

}  // namespace crystorb
