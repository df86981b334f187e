#pragma once

// Fixed loci of a crystallographic group acting on the torus R^r / Z^r and the
// branch data of the quotient. A complex structure commuting with L(G) makes
// every kernel of L(g) - I complex, so complex dimensions are half the real ones.

#include "crystorb/crystal/crystal.hpp"
#include "crystorb/hodge/complex_structure.hpp"

#include <map>
#include <optional>

namespace crystorb {

enum class ActionKind { free, quasi_free, divisorial };

inline std::string to_string(ActionKind k) {
  switch (k) {
    case ActionKind::free: return "free";
    case ActionKind::quasi_free: return "quasi_free";
    case ActionKind::divisorial: return "divisorial";
  }
  return "?";
}

struct FixedLocus {
  std::size_t element = 0;
  SolutionSet solutions;
  std::size_t real_dimension = 0;
  std::optional<std::size_t> complex_codimension;  ///< set for even rank, nonempty locus

  bool empty() const { return solutions.empty(); }
  std::size_t component_count() const { return solutions.component_count(); }
};

/// Fix(g) = {v : L(g) v + u_g = v mod Z^r}.
inline FixedLocus fixed_points(const CrystGroup& gamma, std::size_t g) {
  if (g >= gamma.order()) throw InvalidArgument("element index out of range");
  FixedLocus f;
  f.element = g;
  f.solutions = solve_mod_lattice(gamma.linear(g) - IntMatrix::identity(gamma.rank),
                                  -gamma.translation(g));
  f.real_dimension = f.solutions.dimension;
  if (!f.empty() && gamma.rank % 2 == 0 && f.real_dimension % 2 == 0)
    f.complex_codimension = gamma.rank / 2 - f.real_dimension / 2;
  return f;
}

/// A connected component of a fixed locus: base + span_R(directions) mod Z^r.
struct TorusComponent {
  RatVector base;
  IntMatrix directions;   ///< r x k, part of a lattice basis
  IntMatrix annihilator;  ///< (r-k) x r integer rows with annihilator * directions = 0

  std::size_t real_dimension() const { return directions.cols(); }

  static TorusComponent make(RatVector base, const std::vector<IntVector>& dirs, std::size_t r) {
    TorusComponent c;
    c.base = frac(base);
    c.directions = IntMatrix(r, dirs.size());
    for (std::size_t j = 0; j < dirs.size(); ++j)
      for (std::size_t i = 0; i < r; ++i) c.directions(i, j) = dirs[j][i];
    // rows of the HNF transform past the rank span the integer left kernel
    const auto h = hnf(c.directions);
    c.annihilator = IntMatrix(r - h.rank, r);
    for (std::size_t i = h.rank; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) c.annihilator(i - h.rank, j) = h.U(i, j);
    return c;
  }

  bool operator==(const TorusComponent& o) const {
    if (o.real_dimension() != real_dimension() || o.base.size() != base.size()) return false;
    if (!(annihilator * o.directions).is_zero()) return false;
    return is_integral(annihilator * (base - o.base));
  }

  /// Image under v -> L v + u.
  TorusComponent transformed(const IntMatrix& L, const RatVector& u) const {
    std::vector<IntVector> dirs;
    const IntMatrix LD = L * directions;
    for (std::size_t j = 0; j < LD.cols(); ++j) dirs.push_back(LD.column_vector(j));
    return make(L * base + u, dirs, base.size());
  }

  /// Whether the affine map v -> L v + u fixes this component pointwise.
  bool fixed_pointwise_by(const IntMatrix& L, const RatVector& u) const {
    if (L * directions != directions) return false;
    return is_integral(L * base + u - base);
  }
};

inline std::vector<TorusComponent> components(const FixedLocus& f) {
  std::vector<TorusComponent> out;
  for (const auto& p : f.solutions.points)
    out.push_back(TorusComponent::make(p, f.solutions.directions, f.solutions.ambient));
  return out;
}

inline void require_invariant_structure(const CrystGroup& gamma, const ComplexStructure& J) {
  if (gamma.rank % 2 != 0) throw InvalidArgument("action analysis needs even rank");
  if (!is_invariant_structure(J, gamma.group))
    throw InvalidArgument("complex structure does not commute with the group");
}

struct ActionReport {
  ActionKind kind = ActionKind::free;
  std::vector<FixedLocus> loci;           ///< for every g != 1
  std::vector<std::size_t> evidence;      ///< elements with nonempty locus of minimal codimension
  std::optional<std::size_t> min_codimension;
};

/// free: no fixed points; quasi_free: every fixed locus has complex codimension
/// at least two; divisorial otherwise.
inline ActionReport classify_action(const CrystGroup& gamma, const ComplexStructure& J) {
  require_invariant_structure(gamma, J);
  ActionReport rep;
  for (std::size_t g = 1; g < gamma.order(); ++g) {
    rep.loci.push_back(fixed_points(gamma, g));
    const auto& f = rep.loci.back();
    if (f.empty()) continue;
    if (!f.complex_codimension) throw Error("fixed locus has odd real dimension");
    const std::size_t c = *f.complex_codimension;
    if (!rep.min_codimension || c < *rep.min_codimension) {
      rep.min_codimension = c;
      rep.evidence.clear();
    }
    if (c == *rep.min_codimension) rep.evidence.push_back(g);
  }
  if (!rep.min_codimension)
    rep.kind = ActionKind::free;
  else
    rep.kind = *rep.min_codimension >= 2 ? ActionKind::quasi_free : ActionKind::divisorial;
  return rep;
}

/// Elements whose linear part has a complex fixed space of codimension one and
/// which have a fixed point on the torus.
inline std::vector<std::size_t> pseudoreflections(const CrystGroup& gamma,
                                                  const ComplexStructure& J) {
  require_invariant_structure(gamma, J);
  std::vector<std::size_t> out;
  const auto I = IntMatrix::identity(gamma.rank);
  for (std::size_t g = 1; g < gamma.order(); ++g) {
    const auto ker = kernel(to_rational(gamma.linear(g) - I)).size();
    if (ker + 2 != gamma.rank) continue;
    if (!fixed_points(gamma, g).empty()) out.push_back(g);
  }
  return out;
}

struct GprSubgroup {
  std::vector<std::size_t> members;  ///< sorted indices into the group
  MatrixGroup group;
};

/// Normal subgroup generated by the pseudoreflections.
inline GprSubgroup gpr_subgroup(const CrystGroup& gamma, const ComplexStructure& J) {
  GprSubgroup out;
  out.members = gamma.group.normal_closure(pseudoreflections(gamma, J));
  out.group = gamma.group.subgroup(out.members);
  return out;
}

struct FactorizationReport {
  struct Audit {
    std::size_t element = 0;
    std::size_t codimension = 0;
  };
  std::vector<std::size_t> gpr;  ///< members of G^pr
  std::size_t group_order = 0;
  std::size_t gpr_order = 0;
  std::size_t index = 0;
  bool first_map_identity = false;   ///< T -> T/G^pr
  bool second_map_identity = false;  ///< T/G^pr -> T/G
  std::vector<Audit> audit;          ///< g outside G^pr with fixed points
  bool quasi_etale = true;
};

/// T -> T/G^pr -> T/G, with the codimension audit certifying that the second
/// map branches only in codimension at least two.
inline FactorizationReport factorization_report(const CrystGroup& gamma,
                                                const ComplexStructure& J) {
  const auto gpr = gpr_subgroup(gamma, J);
  FactorizationReport rep;
  rep.gpr = gpr.members;
  rep.group_order = gamma.order();
  rep.gpr_order = gpr.members.size();
  rep.index = rep.group_order / rep.gpr_order;
  rep.first_map_identity = rep.gpr_order == 1;
  rep.second_map_identity = rep.index == 1;
  std::vector<bool> in(gamma.order(), false);
  for (auto m : gpr.members) in[m] = true;
  for (std::size_t g = 1; g < gamma.order(); ++g) {
    if (in[g]) continue;
    auto f = fixed_points(gamma, g);
    if (f.empty()) continue;
    rep.audit.push_back({g, *f.complex_codimension});
    if (*f.complex_codimension < 2) rep.quasi_etale = false;
  }
  return rep;
}

struct DivisorClass {
  TorusComponent representative;
  std::size_t orbit_size = 0;        ///< fixed components in the G-orbit
  std::size_t multiplicity = 0;      ///< order of the pointwise stabilizer
  std::vector<std::size_t> stabilizer;
  std::size_t stabilizer_generator = 0;
  bool cyclic = false;
};

struct StratumCount {
  std::size_t codimension = 0;
  std::size_t stabilizer_order = 0;
  std::size_t orbits = 0;
  std::size_t components = 0;
};

struct OrbifoldDescriptor {
  ActionKind kind = ActionKind::free;
  std::vector<DivisorClass> divisors;
  std::vector<StratumCount> strata;  ///< fixed components of complex codimension >= 2

  std::size_t divisor_components() const {
    std::size_t s = 0;
    for (const auto& d : divisors) s += d.orbit_size;
    return s;
  }
};

namespace detail {

struct ComponentOrbit {
  std::vector<TorusComponent> members;
  std::vector<std::size_t> stabilizer;
};

/// Distinct fixed components grouped into G-orbits.
inline std::vector<ComponentOrbit> component_orbits(const CrystGroup& gamma,
                                                    const std::vector<TorusComponent>& comps) {
  std::vector<ComponentOrbit> orbits;
  std::vector<bool> done(comps.size(), false);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (done[i]) continue;
    ComponentOrbit o;
    o.members.push_back(comps[i]);
    for (std::size_t h = 1; h < gamma.order(); ++h) {
      TorusComponent img = comps[i].transformed(gamma.linear(h), gamma.translation(h));
      if (std::find(o.members.begin(), o.members.end(), img) == o.members.end())
        o.members.push_back(img);
    }
    for (std::size_t j = i; j < comps.size(); ++j)
      if (!done[j] && std::find(o.members.begin(), o.members.end(), comps[j]) != o.members.end())
        done[j] = true;
    for (std::size_t h = 0; h < gamma.order(); ++h)
      if (comps[i].fixed_pointwise_by(gamma.linear(h), gamma.translation(h)))
        o.stabilizer.push_back(h);
    orbits.push_back(std::move(o));
  }
  return orbits;
}

}  // namespace detail

/// Branch divisors of T -> T/G grouped into classes on the quotient, each with
/// the order m of the cyclic group fixing it pointwise, plus the summary of
/// fixed components in codimension at least two.
inline OrbifoldDescriptor orbifold_descriptor(const CrystGroup& gamma, const ComplexStructure& J) {
  const ActionReport action = classify_action(gamma, J);
  OrbifoldDescriptor d;
  d.kind = action.kind;
  if (d.kind == ActionKind::free) return d;

  std::vector<TorusComponent> divisor_comps, deeper;
  auto add_unique = [](std::vector<TorusComponent>& v, TorusComponent c) {
    if (std::find(v.begin(), v.end(), c) == v.end()) v.push_back(std::move(c));
  };
  for (const auto& f : action.loci) {
    if (f.empty()) continue;
    for (auto& c : components(f))
      add_unique(*f.complex_codimension == 1 ? divisor_comps : deeper, std::move(c));
  }

  for (auto& o : detail::component_orbits(gamma, divisor_comps)) {
    DivisorClass c;
    c.representative = o.members.front();
    c.orbit_size = o.members.size();
    c.multiplicity = o.stabilizer.size();
    c.stabilizer = o.stabilizer;
    for (auto h : o.stabilizer)
      if (gamma.group.element_order(h) == c.multiplicity) {
        c.cyclic = true;
        c.stabilizer_generator = h;
        break;
      }
    if (c.multiplicity >= 2) d.divisors.push_back(std::move(c));
  }

  std::map<std::pair<std::size_t, std::size_t>, StratumCount> hist;
  for (auto& o : detail::component_orbits(gamma, deeper)) {
    const std::size_t codim = gamma.rank / 2 - o.members.front().real_dimension() / 2;
    auto& s = hist[{codim, o.stabilizer.size()}];
    s.codimension = codim;
    s.stabilizer_order = o.stabilizer.size();
    s.orbits += 1;
    s.components += o.members.size();
  }
  for (auto& [key, s] : hist) d.strata.push_back(s);
  return d;
}

}  // namespace crystorb
