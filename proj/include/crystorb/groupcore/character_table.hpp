#pragma once

#include "crystorb/groupcore/cyclotomic.hpp"
#include "crystorb/groupcore/matrix_group.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace crystorb {

enum class IndicatorType { real = 1, complex = 0, quaternionic = -1 };

inline std::string to_string(IndicatorType t) {
  switch (t) {
    case IndicatorType::real: return "real";
    case IndicatorType::complex: return "complex";
    case IndicatorType::quaternionic: return "quaternionic";
  }
  return "?";
}

/// Complex irreducible characters of a finite group in exact cyclotomic form.
///
/// values[i][c] is chi_i on class c. Characters are sorted by degree with the
/// trivial character first.
struct CharacterTable {
  std::size_t group_order = 0;
  std::shared_ptr<const CyclotomicField> field;
  std::vector<ConjugacyClass> classes;
  std::vector<std::size_t> class_of;      ///< element index -> class index
  std::vector<std::size_t> inverse_class;  ///< class of g^{-1}
  std::vector<std::size_t> square_class;   ///< class of g^2
  std::vector<std::vector<Cyclotomic>> values;
  std::vector<std::size_t> degrees;
  std::vector<int> fs;                    ///< Frobenius-Schur indicators
  std::vector<std::size_t> conjugate_of;  ///< index of the complex conjugate character
  std::uint64_t prime = 0;                ///< modulus used for the splitting

  std::size_t size() const { return values.size(); }
  IndicatorType type(std::size_t chi) const {
    return static_cast<IndicatorType>(fs[chi]);
  }
};

namespace detail::modp {

using u64 = std::uint64_t;

inline u64 mul(u64 a, u64 b, u64 p) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
}
inline u64 pow(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}
inline u64 inv(u64 a, u64 p) { return pow(a, p - 2, p); }
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Smallest prime p > lower_bound with p = 1 (mod e).
inline u64 splitting_prime(u64 e, u64 lower_bound) {
  u64 p = (lower_bound / e + 1) * e + 1;
  while (!is_prime(p)) p += e;
  return p;
}

inline u64 primitive_root_of_unity(u64 e, u64 p) {
  std::vector<u64> factors;
  u64 m = p - 1;
  for (u64 d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) factors.push_back(m);
  for (u64 g = 2; g < p; ++g) {
    bool generator = true;
    for (u64 f : factors)
      if (pow(g, (p - 1) / f, p) == 1) {
        generator = false;
        break;
      }
    if (generator) return pow(g, (p - 1) / e, p);
  }
  throw Error("no primitive root found");
}

using Mat = std::vector<std::vector<u64>>;

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Mat& M, u64 p) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && M[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[r], M[piv]);
    u64 s = inv(M[r][c], p);
    for (auto& x : M[r]) x = mul(x, s, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == 0) continue;
      u64 f = M[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        M[i][j] = sub(M[i][j], mul(f, M[r][j], p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  M.resize(r);
  return pivots;
}

/// Column vectors spanning the null space of M (k x k).
inline std::vector<std::vector<u64>> null_space(Mat M, u64 p) {
  const std::size_t cols = M.empty() ? 0 : M[0].size();
  auto pivots = rref(M, p);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<u64>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<u64> v(cols, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k)
      v[pivots[k]] = (p - M[k][f]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Characteristic polynomial (lowest degree first) via Hessenberg reduction.
inline std::vector<u64> charpoly(Mat H, u64 p) {
  const std::size_t n = H.size();
  for (std::size_t m = 1; m < n; ++m) {
    std::size_t i = m;
    while (i < n && H[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(H[i], H[m]);
      for (std::size_t r = 0; r < n; ++r) std::swap(H[r][i], H[r][m]);
    }
    u64 t = inv(H[m][m - 1], p);
    for (i = m + 1; i < n; ++i) {
      u64 u = mul(H[i][m - 1], t, p);
      if (u == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        H[i][j] = sub(H[i][j], mul(u, H[m][j], p), p);
      for (std::size_t r = 0; r < n; ++r)
        H[r][m] = (H[r][m] + mul(u, H[r][i], p)) % p;
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_i h_im (prod_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
  std::vector<std::vector<u64>> P(n + 1);
  P[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<u64> next(m + 1, 0);
    const auto& prev = P[m - 1];
    for (std::size_t k = 0; k < prev.size(); ++k) {
      next[k + 1] = (next[k + 1] + prev[k]) % p;
      next[k] = sub(next[k], mul(H[m - 1][m - 1], prev[k], p), p);
    }
    u64 prod = 1;
    for (std::size_t i = m - 1; i >= 1; --i) {
      prod = mul(prod, H[i][i - 1], p);
      u64 coef = mul(H[i - 1][m - 1], prod, p);
      if (coef != 0)
        for (std::size_t k = 0; k < P[i - 1].size(); ++k)
          next[k] = sub(next[k], mul(coef, P[i - 1][k], p), p);
    }
    P[m] = std::move(next);
  }
  return P[n];
}

inline u64 eval(const std::vector<u64>& poly, u64 x, u64 p) {
  u64 acc = 0;
  for (std::size_t k = poly.size(); k-- > 0;) acc = (mul(acc, x, p) + poly[k]) % p;
  return acc;
}

}  // namespace detail::modp

/// Exact character table by the Dixon method: simultaneous eigenvectors of the
/// class multiplication matrices over F_p (p = 1 mod exponent, p > 2|G|), lifted
/// to cyclotomic integers through eigenvalue multiplicities.
inline CharacterTable character_table(const MatrixGroup& G,
                                      std::size_t bound = kDefaultGroupBound) {
  namespace mp = detail::modp;
  using u64 = mp::u64;
  if (G.order() > bound)
    throw ExceedsBound("group of order " + std::to_string(G.order()) +
                       " exceeds character table bound " + std::to_string(bound));
  CharacterTable T;
  const std::size_t n = G.order();
  T.group_order = n;
  T.classes = conjugacy_classes(G);
  const std::size_t h = T.classes.size();
  T.class_of.assign(n, 0);
  for (std::size_t c = 0; c < h; ++c)
    for (auto g : T.classes[c].members) T.class_of[g] = c;
  for (std::size_t c = 0; c < h; ++c) {
    const auto rep = T.classes[c].representative;
    T.inverse_class.push_back(T.class_of[G.inverse(rep)]);
    T.square_class.push_back(T.class_of[G.multiply(rep, rep)]);
  }

  const u64 e = G.exponent();
  T.field = std::make_shared<CyclotomicField>(static_cast<int>(e));
  const u64 p = mp::splitting_prime(e, 2 * n);
  T.prime = p;
  const u64 z = mp::primitive_root_of_unity(e, p);

  auto class_matrix = [&](std::size_t j) {
    mp::Mat M(h, std::vector<u64>(h, 0));
    for (std::size_t l = 0; l < h; ++l) {
      const auto zl = T.classes[l].representative;
      for (auto x : T.classes[j].members)
        ++M[T.class_of[G.multiply(G.inverse(x), zl)]][l];
    }
    return M;
  };

  // Subspaces carried as row bases in reduced echelon form.
  struct Space {
    mp::Mat basis;
    std::vector<std::size_t> pivots;
  };
  std::vector<Space> spaces;
  {
    Space all;
    for (std::size_t i = 0; i < h; ++i) {
      std::vector<u64> row(h, 0);
      row[i] = 1;
      all.basis.push_back(row);
      all.pivots.push_back(i);
    }
    spaces.push_back(std::move(all));
  }
  for (std::size_t j = 1; j < h; ++j) {
    bool all_split = true;
    for (const auto& s : spaces)
      if (s.basis.size() > 1) all_split = false;
    if (all_split) break;
    const mp::Mat M = class_matrix(j);
    std::vector<Space> next;
    for (auto& s : spaces) {
      const std::size_t k = s.basis.size();
      if (k == 1) {
        next.push_back(std::move(s));
        continue;
      }
      // restriction R: column c holds the coordinates of M * b_c
      mp::Mat R(k, std::vector<u64>(k, 0));
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < k; ++r) {
          const std::size_t row = s.pivots[r];
          u64 acc = 0;
          for (std::size_t l = 0; l < h; ++l)
            if (s.basis[c][l]) acc = (acc + mp::mul(M[row][l], s.basis[c][l], p)) % p;
          R[r][c] = acc;
        }
      const auto cp = mp::charpoly(R, p);
      for (u64 lambda = 0; lambda < p; ++lambda) {
        if (mp::eval(cp, lambda, p) != 0) continue;
        mp::Mat shifted = R;
        for (std::size_t i = 0; i < k; ++i)
          shifted[i][i] = mp::sub(shifted[i][i], lambda, p);
        Space piece;
        for (const auto& x : mp::null_space(shifted, p)) {
          std::vector<u64> v(h, 0);
          for (std::size_t c = 0; c < k; ++c)
            if (x[c])
              for (std::size_t l = 0; l < h; ++l)
                v[l] = (v[l] + mp::mul(x[c], s.basis[c][l], p)) % p;
          piece.basis.push_back(std::move(v));
        }
        piece.pivots = mp::rref(piece.basis, p);
        next.push_back(std::move(piece));
      }
    }
    spaces = std::move(next);
  }
  if (spaces.size() != h)
    throw Error("character table: class matrices did not split into " +
                std::to_string(h) + " characters");

  struct Raw {
    std::size_t degree;
    std::vector<Cyclotomic> values;
  };
  std::vector<Raw> raw;
  for (const auto& s : spaces) {
    std::vector<u64> omega = s.basis[0];
    const u64 scale = mp::inv(omega[0], p);
    for (auto& x : omega) x = mp::mul(x, scale, p);
    // chi(1)^2 = |G| / sum_j omega_j omega_{j*} / |C_j|
    u64 acc = 0;
    for (std::size_t c = 0; c < h; ++c)
      acc = (acc + mp::mul(mp::mul(omega[c], omega[T.inverse_class[c]], p),
                           mp::inv(T.classes[c].size() % p, p), p)) % p;
    const u64 deg_sq = mp::mul(n % p, mp::inv(acc, p), p);
    u64 degree = 0;
    for (u64 d = 1; d * d <= n; ++d)
      if (mp::mul(d, d, p) == deg_sq) degree = d;
    if (degree == 0) throw Error("character table: degree lift failed");
    std::vector<u64> chi(h);
    for (std::size_t c = 0; c < h; ++c)
      chi[c] = mp::mul(mp::mul(omega[c], degree, p),
                       mp::inv(T.classes[c].size() % p, p), p);
    Raw ch{degree, {}};
    for (std::size_t c = 0; c < h; ++c) {
      const auto g = T.classes[c].representative;
      const u64 o = G.element_order(g);
      const u64 zo = mp::pow(z, e / o, p);
      const u64 o_inv = mp::inv(o % p, p);
      Cyclotomic value(T.field, Rational(0));
      for (u64 k = 0; k < o; ++k) {
        u64 m = 0;
        for (u64 l = 0; l < o; ++l) {
          const u64 cl = T.class_of[G.power(g, static_cast<long>(l))];
          m = (m + mp::mul(chi[cl], mp::pow(zo, (o - (k * l) % o) % o, p), p)) % p;
        }
        m = mp::mul(m, o_inv, p);
        if (m > degree) throw Error("character table: eigenvalue multiplicity lift failed");
        if (m)
          value += Cyclotomic::root_of_unity(T.field, static_cast<int>(k * (e / o))) *
                   Rational(static_cast<long long>(m));
      }
      ch.values.push_back(std::move(value));
    }
    raw.push_back(std::move(ch));
  }

  auto is_trivial = [](const Raw& r) {
    for (const auto& v : r.values)
      if (!(v.is_rational() && v.rational_part() == 1)) return false;
    return true;
  };
  std::stable_sort(raw.begin(), raw.end(), [&](const Raw& a, const Raw& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    const bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    for (std::size_t c = 0; c < a.values.size(); ++c)
      if (a.values[c].coefficients() != b.values[c].coefficients())
        return a.values[c].coefficients() < b.values[c].coefficients();
    return false;
  });
  for (auto& r : raw) {
    T.degrees.push_back(r.degree);
    T.values.push_back(std::move(r.values));
  }

  // Frobenius-Schur indicators and conjugate pairing
  for (std::size_t i = 0; i < h; ++i) {
    Cyclotomic s(T.field, Rational(0));
    for (std::size_t c = 0; c < h; ++c)
      s += T.values[i][T.square_class[c]] *
           Rational(static_cast<long long>(T.classes[c].size()));
    s *= Rational(1, static_cast<long long>(n));
    if (!s.is_rational()) throw Error("character table: indicator not rational");
    const Rational ind = s.rational_part();
    if (ind != 1 && ind != 0 && ind != -1)
      throw Error("character table: indicator out of range");
    T.fs.push_back(static_cast<int>(numerator(ind)));
    std::vector<Cyclotomic> conj;
    for (const auto& v : T.values[i]) conj.push_back(v.conj());
    std::size_t partner = h;
    for (std::size_t j = 0; j < h; ++j)
      if (T.values[j] == conj) partner = j;
    if (partner == h) throw Error("character table: conjugate character missing");
    T.conjugate_of.push_back(partner);
  }
  return T;
}

/// Frobenius-Schur indicator (1/|G|) sum_g chi(g^2) of character `chi`.
inline int fs_indicator(const CharacterTable& table, std::size_t chi) {
  return table.fs.at(chi);
}

/// <a, b> = (1/|G|) sum_g a(g) conj(b(g)) for class functions given per class.
inline Cyclotomic inner_product(const CharacterTable& T,
                                const std::vector<Cyclotomic>& a,
                                const std::vector<Cyclotomic>& b) {
  Cyclotomic s(T.field, Rational(0));
  for (std::size_t c = 0; c < T.classes.size(); ++c)
    s += a[c] * b[c].conj() * Rational(static_cast<long long>(T.classes[c].size()));
  s *= Rational(1, static_cast<long long>(T.group_order));
  return s;
}

struct OrthogonalityReport {
  bool rows_ok = true;
  bool columns_ok = true;
  bool degrees_ok = true;  ///< sum of squared degrees equals |G|
  bool ok() const { return rows_ok && columns_ok && degrees_ok; }
};

/// Exact check of both orthogonality relations.
inline OrthogonalityReport check_orthogonality(const CharacterTable& T) {
  OrthogonalityReport rep;
  const std::size_t h = T.size();
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      Cyclotomic ip = inner_product(T, T.values[i], T.values[j]);
      if (!(ip.is_rational() && ip.rational_part() == (i == j ? 1 : 0)))
        rep.rows_ok = false;
    }
  for (std::size_t a = 0; a < h; ++a)
    for (std::size_t b = 0; b < h; ++b) {
      Cyclotomic s(T.field, Rational(0));
      for (std::size_t i = 0; i < h; ++i) s += T.values[i][a] * T.values[i][b].conj();
      const Rational expected =
          a == b ? Rational(static_cast<long long>(T.group_order),
                            static_cast<long long>(T.classes[a].size()))
                 : Rational(0);
      if (!(s.is_rational() && s.rational_part() == expected)) rep.columns_ok = false;
    }
  std::size_t sq = 0;
  for (auto d : T.degrees) sq += d * d;
  rep.degrees_ok = sq == T.group_order;
  return rep;
}

/// One real-irreducible class of the defining representation on Lambda (x) C.
struct IsotypicClass {
  std::string label;                    ///< e.g. "chi2" or "chi3+chi4"
  IndicatorType type = IndicatorType::real;
  std::vector<std::size_t> characters;  ///< one index, or a conjugate pair
  std::size_t degree = 0;               ///< degree of each complex constituent
  std::size_t multiplicity = 0;         ///< multiplicity of each complex constituent
  std::size_t dim = 0;                  ///< complex dimension of (Lambda (x) C)_chi
  /// Whether this class admits an invariant complex structure: real-type classes
  /// need even multiplicity, complex and quaternionic classes always do.
  bool even = true;
};

struct IsotypicReport {
  std::size_t rank = 0;
  std::vector<std::size_t> multiplicities;  ///< per complex irreducible
  std::vector<IsotypicClass> classes;       ///< only classes with dim > 0
  bool all_even() const {
    for (const auto& c : classes)
      if (!c.even) return false;
    return true;
  }
};

/// Multiplicities of the complex irreducibles in the defining representation of
/// G and their assembly into real-irreducible classes by indicator type.
inline IsotypicReport real_isotypic_dimensions(const MatrixGroup& G,
                                               const CharacterTable& T) {
  if (T.group_order != G.order() || T.class_of.size() != G.order())
    throw InvalidArgument("character table was not computed for this group");
  IsotypicReport rep;
  rep.rank = G.rank();
  const auto traces = G.traces();
  std::vector<Cyclotomic> rho;
  for (const auto& c : T.classes)
    rho.push_back(Cyclotomic(T.field, Rational(traces[c.representative])));
  std::size_t total = 0;
  for (std::size_t i = 0; i < T.size(); ++i) {
    Cyclotomic m = inner_product(T, rho, T.values[i]);
    if (!m.is_rational() || !is_integral(m.rational_part()) || m.rational_part() < 0)
      throw Error("isotypic multiplicity is not a nonnegative integer");
    rep.multiplicities.push_back(static_cast<std::size_t>(numerator(m.rational_part())));
    total += rep.multiplicities.back() * T.degrees[i];
  }
  if (total != G.rank()) throw Error("isotypic dimensions do not sum to the rank");

  for (std::size_t i = 0; i < T.size(); ++i) {
    const auto type = T.type(i);
    const std::size_t partner = T.conjugate_of[i];
    if (type == IndicatorType::complex && partner < i) continue;
    IsotypicClass c;
    c.type = type;
    c.degree = T.degrees[i];
    c.multiplicity = rep.multiplicities[i];
    c.characters.push_back(i);
    c.label = "chi" + std::to_string(i + 1);
    c.dim = c.multiplicity * c.degree;
    if (type == IndicatorType::complex) {
      c.characters.push_back(partner);
      c.label += "+chi" + std::to_string(partner + 1);
      c.dim += rep.multiplicities[partner] * T.degrees[partner];
    }
    c.even = type != IndicatorType::real || c.multiplicity % 2 == 0;
    if (c.dim > 0) rep.classes.push_back(std::move(c));
  }
  return rep;
}

}  // namespace crystorb
