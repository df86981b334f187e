#pragma once

// Input documents and exact JSON encodings. Rationals travel as "p/q" strings
// (plain integers are accepted on input), complex numbers as ["re", "im"].

#include "crystorb/crystal/crystal.hpp"
#include "crystorb/hodge/gaussian.hpp"

#include <json.hpp>

#include <array>
#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>
#include <string>

namespace crystorb::io {

using json = nlohmann::ordered_json;

/// Malformed input; the message starts with the JSON pointer of the offending value.
class SchemaError : public InvalidArgument {
 public:
  SchemaError(const std::string& where, const std::string& what)
      : InvalidArgument("at " + (where.empty() ? std::string("/") : where) + ": " + what),
        location(where.empty() ? "/" : where) {}
  std::string location;
};

struct DocumentOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> bound;
  std::optional<unsigned> precision;
};

struct InputDocument {
  std::string name;
  std::string description;
  std::optional<CrystData> crystal;
  std::optional<GaussMatrix> omega;
  std::optional<std::array<std::size_t, 3>> triple;
  std::optional<std::vector<RatVector>> alt_translations;  ///< one per generator
  DocumentOptions options;
};

namespace detail {

inline std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
inline std::string at(const std::string& base, std::size_t i) {
  return base + "/" + std::to_string(i);
}

inline void expect_keys(const json& j, const std::string& where,
                        const std::set<std::string>& allowed) {
  if (!j.is_object()) throw SchemaError(where, "expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw SchemaError(at(where, k), "unknown field '" + k + "'");
}

inline const json& require(const json& j, const std::string& where, const std::string& key) {
  if (!j.contains(key)) throw SchemaError(where, "missing field '" + key + "'");
  return j.at(key);
}

inline const json& expect_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where, "expected an array");
  return j;
}

inline std::uint64_t parse_count(const json& j, const std::string& where, std::uint64_t min) {
  if (!j.is_number_integer()) throw SchemaError(where, "expected an integer");
  if (j.is_number_unsigned()) {
    const auto v = j.get<std::uint64_t>();
    if (v < min) throw SchemaError(where, "must be at least " + std::to_string(min));
    return v;
  }
  const auto v = j.get<std::int64_t>();
  if (v < 0 || static_cast<std::uint64_t>(v) < min)
    throw SchemaError(where, "must be at least " + std::to_string(min));
  return static_cast<std::uint64_t>(v);
}

inline Rational parse_rational_value(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (!j.is_string()) throw SchemaError(where, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const InvalidArgument& e) {
    throw SchemaError(where, e.what());
  }
}

inline Integer parse_integer_value(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where, "expected an integer");
  return Integer(j.dump());
}

inline RatVector parse_rational_vector(const json& j, const std::string& where, std::size_t n) {
  expect_array(j, where);
  if (j.size() != n)
    throw SchemaError(where, "expected " + std::to_string(n) + " entries, got " +
                                 std::to_string(j.size()));
  RatVector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(parse_rational_value(j[i], at(where, i)));
  return v;
}

inline IntMatrix parse_int_matrix(const json& j, const std::string& where, std::size_t n) {
  expect_array(j, where);
  if (j.size() != n) throw SchemaError(where, "expected " + std::to_string(n) + " rows");
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = at(where, i);
    expect_array(j[i], row);
    if (j[i].size() != n) throw SchemaError(row, "expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = parse_integer_value(j[i][k], at(row, k));
  }
  return m;
}

inline GaussianRational parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw SchemaError(where, "expected a complex number [\"re\", \"im\"]");
  return {parse_rational_value(j[0], at(where, 0)), parse_rational_value(j[1], at(where, 1))};
}

inline GaussMatrix parse_omega(const json& j, const std::string& where, std::size_t r) {
  expect_array(j, where);
  if (r % 2 != 0) throw SchemaError(where, "a period matrix needs even rank");
  if (j.size() != r) throw SchemaError(where, "expected " + std::to_string(r) + " rows");
  const std::size_t n = r / 2;
  GaussMatrix m(r, n);
  for (std::size_t i = 0; i < r; ++i) {
    const auto row = at(where, i);
    expect_array(j[i], row);
    if (j[i].size() != n) throw SchemaError(row, "expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = parse_complex(j[i][k], at(row, k));
  }
  return m;
}

}  // namespace detail

inline InputDocument parse_input(const json& j) {
  using namespace detail;
  expect_keys(j, "", {"name", "description", "rank", "generators", "omega", "options", "triple",
                      "alt_translations"});
  InputDocument doc;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw SchemaError("/name", "expected a string");
    doc.name = j["name"].get<std::string>();
  }
  if (j.contains("description")) {
    if (!j["description"].is_string()) throw SchemaError("/description", "expected a string");
    doc.description = j["description"].get<std::string>();
  }
  if (j.contains("rank") || j.contains("generators")) {
    const std::size_t r = parse_count(require(j, "", "rank"), "/rank", 1);
    const json& gens = expect_array(require(j, "", "generators"), "/generators");
    CrystData data{r, {}};
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const auto where = at("/generators", g);
      expect_keys(gens[g], where, {"linear", "translation"});
      AffineMap m;
      m.linear = parse_int_matrix(require(gens[g], where, "linear"), at(where, "linear"), r);
      m.translation = gens[g].contains("translation")
                          ? parse_rational_vector(gens[g]["translation"],
                                                  at(where, "translation"), r)
                          : RatVector(r, 0);
      data.generators.push_back(std::move(m));
    }
    if (data.generators.empty()) data.generators.push_back({IntMatrix::identity(r), RatVector(r, 0)});
    doc.crystal = std::move(data);
  }
  if (j.contains("omega")) {
    if (!doc.crystal) throw SchemaError("/omega", "a period matrix needs 'rank'");
    doc.omega = parse_omega(j["omega"], "/omega", doc.crystal->rank);
  }
  if (j.contains("alt_translations")) {
    if (!doc.crystal) throw SchemaError("/alt_translations", "needs 'rank' and 'generators'");
    const json& a = expect_array(j["alt_translations"], "/alt_translations");
    if (a.size() != doc.crystal->generators.size())
      throw SchemaError("/alt_translations", "expected one translation per generator");
    std::vector<RatVector> alt;
    for (std::size_t g = 0; g < a.size(); ++g)
      alt.push_back(parse_rational_vector(a[g], at("/alt_translations", g), doc.crystal->rank));
    doc.alt_translations = std::move(alt);
  }
  if (j.contains("triple")) {
    const json& t = expect_array(j["triple"], "/triple");
    if (t.size() != 3) throw SchemaError("/triple", "expected three multiplicities");
    std::array<std::size_t, 3> m{};
    for (std::size_t i = 0; i < 3; ++i) m[i] = parse_count(t[i], at("/triple", i), 2);
    doc.triple = m;
  }
  if (j.contains("options")) {
    const json& o = j["options"];
    expect_keys(o, "/options", {"seed", "bound", "precision"});
    if (o.contains("seed")) doc.options.seed = parse_count(o["seed"], "/options/seed", 0);
    if (o.contains("bound")) doc.options.bound = parse_count(o["bound"], "/options/bound", 1);
    if (o.contains("precision")) {
      const auto p = parse_count(o["precision"], "/options/precision", 1);
      if (p != 128 && p != 256) throw SchemaError("/options/precision", "must be 128 or 256");
      doc.options.precision = static_cast<unsigned>(p);
    }
  }
  if (!doc.crystal && !doc.triple)
    throw SchemaError("", "document needs 'rank' and 'generators' or a 'triple'");
  return doc;
}

inline InputDocument parse_input_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("not valid JSON: ") + e.what());
  }
  return parse_input(j);
}

inline InputDocument load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open input file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_input_text(ss.str());
}

// Encodings ------------------------------------------------------------------

inline json encode(const Rational& q) { return to_string(q); }
inline json encode(const Integer& z) {
  if (boost::multiprecision::abs(z) < Integer(1) << 53) return static_cast<long long>(z);
  return z.str();
}
inline json encode(const GaussianRational& z) { return json::array({encode(z.re), encode(z.im)}); }

template <class T>
json encode(const std::vector<T>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(encode(x));
  return out;
}

template <class T>
json encode(const Matrix<T>& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(encode(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

inline json encode(const AffineMap& m) {
  return json{{"linear", encode(m.linear)}, {"translation", encode(frac(m.translation))}};
}

/// Decimal string with a fixed number of significant digits.
template <class Real>
std::string decimal(const Real& x, int digits = 12) {
  if (x == 0) return "0";
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits) << x;
  return os.str();
}

inline std::string decimal(double x, int digits = 12) {
  if (x == 0) return "0";
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits) << x;
  return os.str();
}

/// Input document written back in canonical form.
inline json encode(const InputDocument& d) {
  json out;
  if (!d.name.empty()) out["name"] = d.name;
  if (!d.description.empty()) out["description"] = d.description;
  if (d.crystal) {
    out["rank"] = d.crystal->rank;
    json gens = json::array();
    for (const auto& g : d.crystal->generators)
      gens.push_back({{"linear", encode(g.linear)}, {"translation", encode(g.translation)}});
    out["generators"] = std::move(gens);
  }
  if (d.omega) out["omega"] = encode(*d.omega);
  if (d.alt_translations) out["alt_translations"] = encode(*d.alt_translations);
  if (d.triple) out["triple"] = json::array({(*d.triple)[0], (*d.triple)[1], (*d.triple)[2]});
  json opt = json::object();
  if (d.options.seed) opt["seed"] = *d.options.seed;
  if (d.options.bound) opt["bound"] = *d.options.bound;
  if (d.options.precision) opt["precision"] = *d.options.precision;
  if (!opt.empty()) out["options"] = std::move(opt);
  return out;
}

}  // namespace crystorb::io
