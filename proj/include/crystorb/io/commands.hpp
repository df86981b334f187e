#pragma once

// The subcommands of the crystorb tool as library calls producing JSON
// reports, so the binary and the tests share one code path.

#include "crystorb/hodge.hpp"
#include "crystorb/io/json.hpp"
#include "crystorb/orbpi/orbpi.hpp"
#include "crystorb/quotient/quotient.hpp"

#include <ostream>

namespace crystorb::io {

enum class Format { text, json };

struct JobSpec {
  std::string command;
  InputDocument input;
  Format format = Format::json;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> bound;
  std::optional<unsigned> precision;

  std::uint64_t effective_seed() const { return seed.value_or(input.options.seed.value_or(0)); }
  std::size_t effective_bound(std::size_t fallback) const {
    return bound.value_or(input.options.bound.value_or(fallback));
  }
  unsigned effective_precision() const {
    return precision.value_or(input.options.precision.value_or(128));
  }
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"verify", "realize", "even",    "jstruct",
                                                 "action", "teich",   "platonic"};
  return names;
}

enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_internal = 2 };

namespace detail {

struct Prepared {
  CrystGroup gamma;
  bool normalized = false;
};

inline const CrystData& require_crystal(const JobSpec& job) {
  if (!job.input.crystal)
    throw SchemaError("", "command '" + job.command + "' needs 'rank' and 'generators'");
  return *job.input.crystal;
}

inline Prepared prepare(const JobSpec& job) {
  const CrystData& data = require_crystal(job);
  Prepared p{normalize_action(data, job.effective_bound(kDefaultGroupBound)), false};
  p.normalized = p.gamma.basis != to_rational(IntMatrix::identity(data.rank));
  return p;
}

inline json element_json(const CrystGroup& g, std::size_t e) { return encode(g.affine(e)); }

inline json group_header(const Prepared& p) {
  json out;
  out["rank"] = p.gamma.rank;
  out["order"] = p.gamma.order();
  out["normalized"] = p.normalized;
  if (p.normalized) {
    out["notice"] = "pure translations absorbed into the lattice; data rebased";
    out["basis"] = encode(p.gamma.basis);
  }
  return out;
}

inline ComplexStructureOptions structure_options(const JobSpec& job) {
  ComplexStructureOptions opt;
  opt.seed = job.effective_seed();
  opt.precision_bits = job.effective_precision();
  return opt;
}

inline json class_json(const IsotypicClass& c) {
  return json{{"dim", c.dim},
              {"parity", c.even ? "even" : "odd"},
              {"label", c.label},
              {"type", to_string(c.type)},
              {"degree", c.degree},
              {"multiplicity", c.multiplicity}};
}

inline json component_json(const TorusComponent& c) {
  json dirs = json::array();
  for (std::size_t j = 0; j < c.directions.cols(); ++j) dirs.push_back(encode(c.directions.column_vector(j)));
  return json{{"base", encode(c.base)}, {"directions", std::move(dirs)}};
}

inline std::string real_string(const Real128& x) { return decimal(x, 6); }

inline json structure_json(const ComplexStructure& J) {
  json out;
  out["mode"] = J.is_exact() ? "exact" : "approximate";
  out["method"] = J.method;
  if (J.is_exact()) {
    out["J"] = encode(J.exact);
  } else {
    json m = json::array();
    for (std::size_t i = 0; i < J.approx.rows(); ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < J.approx.cols(); ++k) row.push_back(decimal(J.approx(i, k), 30));
      m.push_back(std::move(row));
    }
    out["J"] = std::move(m);
  }
  out["square_residual"] = real_string(J.square_residual);
  out["commutator_residual"] = real_string(J.commutator_residual);
  out["tolerance"] = real_string(J.tolerance);
  out["precision_bits"] = J.precision_bits;
  return out;
}

inline ComplexStructure require_structure(const JobSpec& job, const CrystGroup& gamma) {
  auto res = invariant_complex_structure(gamma.group, structure_options(job));
  if (!res.J) throw InvalidArgument("the point group admits no invariant complex structure");
  return *res.J;
}

}  // namespace detail

inline json cmd_verify(const JobSpec& job) {
  const auto p = detail::prepare(job);
  json out = detail::group_header(p);
  out["crystallographic"] = true;
  out["torsion_free"] = is_torsion_free(p.gamma).torsion_free;
  if (p.normalized) {
    const RatMatrix Pinv = inverse(p.gamma.basis);
    json gens = json::array();
    for (const auto& g : job.input.crystal->generators) {
      const RatMatrix L = Pinv * to_rational(g.linear) * p.gamma.basis;
      IntMatrix Li(L.rows(), L.cols());
      for (std::size_t i = 0; i < L.rows(); ++i)
        for (std::size_t k = 0; k < L.cols(); ++k) Li(i, k) = numerator(L(i, k));
      gens.push_back(encode(AffineMap{Li, Pinv * g.translation}));
    }
    out["rebased_generators"] = std::move(gens);
  }
  json elems = json::array();
  for (std::size_t e = 0; e < p.gamma.order(); ++e) elems.push_back(detail::element_json(p.gamma, e));
  out["elements"] = std::move(elems);
  return out;
}

inline json cmd_realize(const JobSpec& job) {
  const auto p = detail::prepare(job);
  const MatrixGroup& G = p.gamma.group;
  const VectorSystem& u = p.gamma.translations;
  json out = detail::group_header(p);
  const ExtensionCocycle f = cocycle_from_vector_system(G, u);
  const VectorSystem avg = affine_realization(G, f);
  out["cocycle_normalized"] = is_normalized_cocycle(G, f);
  out["cocycle_condition"] = crystorb::detail::cocycle_condition_holds(G, avg);
  json elems = json::array();
  for (std::size_t e = 0; e < G.order(); ++e)
    elems.push_back({{"linear", encode(G.element(e))},
                     {"translation", encode(frac(u[e]))},
                     {"averaged", encode(avg[e])}});
  out["elements"] = std::move(elems);
  auto eq_json = [](const EquivalenceResult& r) {
    return json{{"equivalent", r.equivalent},
                {"witness", r.equivalent ? encode(r.witness) : json(nullptr)}};
  };
  out["averaged_equivalent_to_input"] = eq_json(realizations_equivalent(G, avg, u));
  const VectorSystem zero(G.order(), RatVector(G.rank(), 0));
  const auto split = realizations_equivalent(G, u, zero);
  out["split"] = eq_json(split);
  out["essential_translations"] = !split.equivalent;
  if (job.input.alt_translations) {
    const CrystData& data = *job.input.crystal;
    const RatMatrix Pinv = inverse(p.gamma.basis);
    CrystData alt{data.rank, {}};
    for (std::size_t g = 0; g < data.generators.size(); ++g) {
      const RatMatrix L = Pinv * to_rational(data.generators[g].linear) * p.gamma.basis;
      IntMatrix Li(L.rows(), L.cols());
      for (std::size_t i = 0; i < L.rows(); ++i)
        for (std::size_t k = 0; k < L.cols(); ++k) {
          if (!is_integral(L(i, k))) throw NonLattice("generator is not integral after rebasing");
          Li(i, k) = numerator(L(i, k));
        }
      alt.generators.push_back({Li, Pinv * (*job.input.alt_translations)[g]});
    }
    const CrystGroup other = verify_crystallographic(alt, job.effective_bound(kDefaultGroupBound));
    if (other.order() != G.order())
      throw InvalidArgument("alternative translations generate a different extension");
    VectorSystem v(G.order());
    for (std::size_t e = 0; e < G.order(); ++e) {
      const auto idx = other.group.find(G.element(e));
      if (!idx) throw InvalidArgument("alternative translations generate a different extension");
      v[e] = other.translation(*idx);
    }
    out["alternative"] = eq_json(realizations_equivalent(G, u, v));
  }
  return out;
}

inline json cmd_even(const JobSpec& job) {
  const auto p = detail::prepare(job);
  const EvenReport ev = is_even(p.gamma.group);
  json out;
  out["even"] = ev.even;
  json classes = json::array();
  for (const auto& c : ev.isotypic.classes) classes.push_back(detail::class_json(c));
  out["classes"] = std::move(classes);
  out["rank"] = p.gamma.rank;
  out["even_rank"] = ev.even_rank;
  out["order"] = p.gamma.order();
  out["normalized"] = p.normalized;
  return out;
}

inline json cmd_jstruct(const JobSpec& job) {
  const auto p = detail::prepare(job);
  const auto res = invariant_complex_structure(p.gamma.group, detail::structure_options(job));
  json out = detail::group_header(p);
  out["even"] = res.evenness.even;
  out["found"] = res.J.has_value();
  out["seed"] = job.effective_seed();
  if (res.J) {
    out["structure"] = detail::structure_json(*res.J);
  } else {
    json odd = json::array();
    for (const auto& c : res.evenness.odd_classes()) odd.push_back(detail::class_json(c));
    out["odd_classes"] = std::move(odd);
    out["even_rank"] = res.evenness.even_rank;
  }
  return out;
}

inline json cmd_action(const JobSpec& job) {
  const auto p = detail::prepare(job);
  const CrystGroup& gamma = p.gamma;
  const ComplexStructure J = detail::require_structure(job, gamma);
  const ActionReport act = classify_action(gamma, J);
  json out = detail::group_header(p);
  out["kind"] = to_string(act.kind);
  out["min_codimension"] = act.min_codimension ? json(*act.min_codimension) : json(nullptr);
  out["evidence"] = act.evidence;
  out["torsion_free"] = is_torsion_free(gamma).torsion_free;
  json loci = json::array();
  for (const auto& f : act.loci) {
    json l{{"element", f.element},
           {"linear", encode(gamma.linear(f.element))},
           {"translation", encode(gamma.translation(f.element))},
           {"components", f.component_count()}};
    if (!f.empty()) {
      l["real_dimension"] = f.real_dimension;
      l["complex_codimension"] = *f.complex_codimension;
    }
    loci.push_back(std::move(l));
  }
  out["fixed_loci"] = std::move(loci);
  out["pseudoreflections"] = pseudoreflections(gamma, J);
  const FactorizationReport fac = factorization_report(gamma, J);
  json audit = json::array();
  for (const auto& a : fac.audit) audit.push_back({{"element", a.element}, {"codimension", a.codimension}});
  out["factorization"] = {{"gpr_members", fac.gpr},
                          {"gpr_order", fac.gpr_order},
                          {"index", fac.index},
                          {"first_map_identity", fac.first_map_identity},
                          {"second_map_identity", fac.second_map_identity},
                          {"quasi_etale", fac.quasi_etale},
                          {"audit", std::move(audit)}};
  const OrbifoldDescriptor d = orbifold_descriptor(gamma, J);
  json divisors = json::array();
  for (const auto& c : d.divisors)
    divisors.push_back({{"multiplicity", c.multiplicity},
                        {"orbit_size", c.orbit_size},
                        {"cyclic", c.cyclic},
                        {"stabilizer", c.stabilizer},
                        {"generator", c.stabilizer_generator},
                        {"representative", detail::component_json(c.representative)}});
  json strata = json::array();
  for (const auto& s : d.strata)
    strata.push_back({{"codimension", s.codimension},
                      {"stabilizer_order", s.stabilizer_order},
                      {"orbits", s.orbits},
                      {"components", s.components}});
  out["orbifold"] = {{"divisor_components", d.divisor_components()},
                     {"divisors", std::move(divisors)},
                     {"strata", std::move(strata)}};
  return out;
}

inline json cmd_teich(const JobSpec& job) {
  const auto p = detail::prepare(job);
  const MatrixGroup& G = p.gamma.group;
  const CharacterTable T = character_table(G);
  if (!is_even(G, T).even) throw InvalidArgument("the point group admits no invariant complex structure");
  json out = detail::group_header(p);
  out["n"] = G.rank() / 2;
  json types = json::array();
  for (const auto& t : hodge_types(G, T)) {
    json splits = json::array();
    for (const auto& s : t.splits)
      splits.push_back({{"character", s.label},
                        {"type", to_string(s.type)},
                        {"degree", s.degree},
                        {"multiplicity", s.multiplicity},
                        {"d", s.d}});
    const std::size_t dim = component_dimension(t);
    const SamplePoint sp = sample_point(G, T, t, job.effective_seed());
    const std::size_t tangent = tangent_space_dimension(G, sp);
    types.push_back({{"label", t.label()},
                     {"dimension", dim},
                     {"splits", std::move(splits)},
                     {"sample",
                      {{"orientation", sp.orientation > 0 ? "positive" : "negative"},
                       {"tangent_dimension", tangent},
                       {"matches", tangent == dim}}}});
  }
  out["components"] = types.size();
  out["types"] = std::move(types);
  if (job.input.omega) {
    const GaussMatrix omega = to_gaussian(p.gamma.basis.transpose()) * *job.input.omega;
    const TorusModel torus = torus_from_omega(omega);
    out["omega"] = {{"orientation_value", encode(omega_orientation_value(omega))},
                    {"in_T", torus.in_T},
                    {"invariant", is_invariant_omega(G, omega)},
                    {"J", encode(torus.J)}};
  }
  return out;
}

inline json cmd_platonic(const JobSpec& job) {
  if (!job.input.triple) throw SchemaError("", "command 'platonic' needs 'triple'");
  const auto [a, b, c] = *job.input.triple;
  const std::size_t bound = job.effective_bound(10000);
  const bool finite = platonic_check(a, b, c);
  json out;
  out["finite"] = finite;
  out["class"] = platonic_class(a, b, c);
  out["triple"] = json::array({a, b, c});
  const std::size_t order = platonic_order(a, b, c);
  out["order"] = finite ? json(order) : json(nullptr);
  const Presentation pres = three_lines_group(a, b, c);
  json rels = json::array();
  for (const auto& r : pres.relators) rels.push_back(r);
  out["presentation"] = {{"generators", pres.generators}, {"relators", std::move(rels)}};
  const EnumerationResult e = coset_enumerate(three_lines_quotient(a, b, c), bound);
  out["enumeration"] = {{"bound", bound},
                        {"verdict", e.finite() ? "finite" : "unknown"},
                        {"order", e.finite() ? json(*e.order) : json(nullptr)},
                        {"cosets_defined", e.cosets_defined}};
  out["consistent"] = e.finite() ? (finite && *e.order == order) : !finite;
  return out;
}

inline json dispatch(const JobSpec& job) {
  json body;
  if (job.command == "verify")
    body = cmd_verify(job);
  else if (job.command == "realize")
    body = cmd_realize(job);
  else if (job.command == "even")
    body = cmd_even(job);
  else if (job.command == "jstruct")
    body = cmd_jstruct(job);
  else if (job.command == "action")
    body = cmd_action(job);
  else if (job.command == "teich")
    body = cmd_teich(job);
  else if (job.command == "platonic")
    body = cmd_platonic(job);
  else
    throw InvalidArgument("unknown command '" + job.command + "'");
  json out;
  out["command"] = job.command;
  out["input"] = job.input.name;
  for (auto& [k, v] : body.items()) out[k] = std::move(v);
  return out;
}

/// Name of the error class and its exit code.
inline std::pair<std::string, int> classify_error(const std::exception& e) {
  if (dynamic_cast<const SchemaError*>(&e)) return {"schema", exit_validation};
  if (dynamic_cast<const NotFinite*>(&e)) return {"not_finite", exit_validation};
  if (dynamic_cast<const KernelTooBig*>(&e)) return {"kernel_too_big", exit_validation};
  if (dynamic_cast<const NonLattice*>(&e)) return {"non_lattice", exit_validation};
  if (dynamic_cast<const CocycleViolation*>(&e)) return {"cocycle_violation", exit_validation};
  if (dynamic_cast<const DegenerateOmega*>(&e)) return {"degenerate_omega", exit_validation};
  if (dynamic_cast<const ExceedsBound*>(&e)) return {"exceeds_bound", exit_validation};
  if (dynamic_cast<const InvalidArgument*>(&e)) return {"invalid_argument", exit_validation};
  if (dynamic_cast<const NumericalFailure*>(&e)) return {"numerical_failure", exit_internal};
  return {"internal", exit_internal};
}

namespace detail {

inline bool is_inline(const json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& x : j)
    if (!is_inline(x)) return false;
  return true;
}

inline std::string scalar_text(const json& j) {
  return j.is_string() ? j.get<std::string>() : j.dump();
}

inline void render_text(const json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_inline(v)) {
        os << pad << k << ": " << scalar_text(v) << "\n";
      } else {
        os << pad << k << ":\n";
        render_text(v, os, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (is_inline(v)) {
        os << pad << "- " << scalar_text(v) << "\n";
      } else {
        os << pad << "-\n";
        render_text(v, os, indent + 2);
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

}  // namespace detail

inline std::string render(const json& report, Format f) {
  if (f == Format::json) return report.dump(2) + "\n";
  std::ostringstream os;
  detail::render_text(report, os, 0);
  return os.str();
}

/// Runs one job, writing the report to `out` and diagnostics to `err`.
inline int run_command(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    out << render(dispatch(job), job.format);
    return exit_ok;
  } catch (const std::exception& e) {
    const auto [kind, code] = classify_error(e);
    err << "crystorb " << job.command << ": " << kind << ": " << e.what() << "\n";
    if (job.format == Format::json) {
      json report;
      report["command"] = job.command;
      report["input"] = job.input.name;
      report["error"] = {{"kind", kind}, {"message", e.what()}, {"exit_code", code}};
      out << report.dump(2) << "\n";
    }
    return code;
  }
}

}  // namespace crystorb::io
