// Quadratic forms on the integer lattice, the catalog of named lattices, and
// the per-parity-class minimal vectors (contact vectors) of a form.
//
// The lattice is always Z^d with the standard dot product; the metric lives
// entirely in the Gram matrix. Dual vectors are therefore integral as well.

#ifndef VOREXT_LATTICE_HPP
#define VOREXT_LATTICE_HPP

#include "vorext/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

namespace vorext {

using LatticeVector = IntVec;

/// A positive-definite quadratic form a(p) = <p, A p> on Z^d.
class QuadForm {
 public:
  /// Validates symmetry and positive definiteness.
  explicit QuadForm(Mat gram) : gram_(std::move(gram)) {
    if (!gram_.square() || gram_.rows() == 0) throw Error("NotSymmetric", "Gram matrix must be square and nonempty");
    if (!gram_.symmetric()) throw Error("NotSymmetric", "Gram matrix is not symmetric");
    if (!is_positive_definite(gram_)) throw Error("NotPositiveDefinite", "Gram matrix is not positive definite");
  }

  std::size_t dim() const noexcept { return gram_.rows(); }
  const Mat& gram() const noexcept { return gram_; }

  Rational operator()(const LatticeVector& p) const {
    if (p.size() != dim()) throw Error("DimensionMismatch", "vector length differs from form dimension");
    Rational s = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (p[i] == 0) continue;
      Rational row = 0;
      for (std::size_t j = 0; j < dim(); ++j)
        if (p[j] != 0) row += gram_(i, j) * p[j];
      s += row * p[i];
    }
    return s;
  }

  Vec apply(const Vec& x) const { return gram_ * x; }

  friend bool operator==(const QuadForm&, const QuadForm&) = default;

 private:
  Mat gram_;
};

inline QuadForm make_form(const Mat& gram) { return QuadForm(gram); }

inline Rational eval_form(const QuadForm& a, const LatticeVector& p) { return a(p); }

// ---------------------------------------------------------------------------
// Catalog

namespace detail {

inline Mat cartan_from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 2;
  for (auto [i, j] : edges) {
    m(i, j) = -1;
    m(j, i) = -1;
  }
  return m;
}

inline std::vector<std::pair<std::size_t, std::size_t>> chain(std::size_t len) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i + 1 < len; ++i) e.emplace_back(i, i + 1);
  return e;
}

// Chain 0..n-2 with node n-1 attached to node `branch`.
inline Mat branched(std::size_t n, std::size_t branch) {
  auto e = chain(n - 1);
  e.emplace_back(branch, n - 1);
  return cartan_from_edges(n, e);
}

inline Mat inverse_or_throw(const Mat& m) {
  auto inv = inverse(m);
  if (!inv) throw Error("NotPositiveDefinite", "singular Gram matrix");
  return *inv;
}

}  // namespace detail

struct CatalogEntry {
  std::string family;  // e.g. "An", "E6*"
  int n;
};

/// Names accepted by `catalog`, with their default dimension for the
/// parametric families.
inline std::vector<std::string> catalog_names() {
  return {"Zn", "An", "An*", "Dn", "Dn*", "E6", "E6*", "E7", "E7*", "E8"};
}

/// Splits "A3" into ("An", 3) and "E6*" into ("E6*", 6); names already in
/// family form are returned with n = 0.
inline CatalogEntry parse_lattice_name(const std::string& raw) {
  std::string name = raw;
  if (name.size() >= 2 && (name[0] == 'E' || name[0] == 'e')) {
    name[0] = 'E';
    const int n = name[1] - '0';
    return {name, n};
  }
  if (name.empty()) throw Error("UnknownLattice", "empty lattice name");
  const char head = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  const bool star = name.back() == '*';
  std::string mid = name.substr(1, name.size() - 1 - (star ? 1 : 0));
  if (mid == "n" || mid.empty()) return {std::string(1, head) + "n" + (star ? "*" : ""), 0};
  for (char c : mid)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("UnknownLattice", "cannot parse lattice name '" + raw + "'");
  return {std::string(1, head) + "n" + (star ? "*" : ""), std::stoi(mid)};
}

/// Gram matrix of a named lattice. Root lattices use their Cartan matrix;
/// duals use the inverse Cartan matrix (E6* then has minimum norm 4/3).
inline QuadForm catalog(const std::string& name, int n) {
  auto need = [&](int lo) {
    if (n < lo) throw Error("InvalidDimension", name + " needs n >= " + std::to_string(lo) + ", got " + std::to_string(n));
  };
  auto fixed = [&](int want) {
    if (n != 0 && n != want)
      throw Error("InvalidDimension", name + " has dimension " + std::to_string(want) + ", got " + std::to_string(n));
  };
  if (name == "Zn") {
    need(1);
    return QuadForm(Mat::identity(static_cast<std::size_t>(n)));
  }
  if (name == "An" || name == "An*") {
    need(1);
    Mat c = detail::cartan_from_edges(static_cast<std::size_t>(n), detail::chain(static_cast<std::size_t>(n)));
    return QuadForm(name == "An" ? c : detail::inverse_or_throw(c));
  }
  if (name == "Dn" || name == "Dn*") {
    need(3);
    const auto m = static_cast<std::size_t>(n);
    Mat c = detail::branched(m, m - 3);
    return QuadForm(name == "Dn" ? c : detail::inverse_or_throw(c));
  }
  if (name == "E6" || name == "E6*") {
    fixed(6);
    Mat c = detail::branched(6, 2);
    return QuadForm(name == "E6" ? c : detail::inverse_or_throw(c));
  }
  if (name == "E7" || name == "E7*") {
    fixed(7);
    Mat c = detail::branched(7, 2);
    return QuadForm(name == "E7" ? c : detail::inverse_or_throw(c));
  }
  if (name == "E8") {
    fixed(8);
    return QuadForm(detail::branched(8, 2));
  }
  throw Error("UnknownLattice", "unknown lattice '" + name + "'");
}

/// Catalog lookup by a short name such as "A2", "D4", "E6*" or "Zn" + n.
inline QuadForm catalog(const std::string& raw) {
  const auto entry = parse_lattice_name(raw);
  return catalog(entry.family, entry.n);
}

// ---------------------------------------------------------------------------
// Coset minima

struct ParityClass {
  std::uint32_t mask = 0;  // bit i holds coordinate i mod 2
  Rational min_norm;
  std::vector<LatticeVector> minima;  // closed under negation, sorted lexicographically
  bool relevant = false;              // minima are a single +/- pair

  LatticeVector parity(std::size_t dim) const {
    LatticeVector c(dim);
    for (std::size_t i = 0; i < dim; ++i) c[i] = (mask >> i) & 1u;
    return c;
  }
};

/// Minimal vectors of every nonzero class of Z^d / 2Z^d, in increasing mask order.
struct ContactVectorSet {
  std::size_t dim = 0;
  std::vector<ParityClass> classes;

  /// Union of all class minima, sorted lexicographically.
  std::vector<LatticeVector> contact_vectors() const {
    std::vector<LatticeVector> out;
    for (const auto& c : classes) out.insert(out.end(), c.minima.begin(), c.minima.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  bool contains(const LatticeVector& p) const {
    for (const auto& c : classes)
      if (std::binary_search(c.minima.begin(), c.minima.end(), p)) return true;
    return false;
  }
};

inline constexpr std::size_t kDefaultCosetDimCap = 8;

namespace detail {

inline std::uint32_t parity_mask(const LatticeVector& p) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] % 2 != 0) m |= 1u << i;
  return m;
}

// a(p) = sum_i diag[i] * (p_i + sum_{j>i} upper(i,j) p_j)^2
struct Decomposition {
  std::vector<Rational> diag;
  Mat upper;
};

inline Decomposition decompose(const Mat& a) {
  const std::size_t n = a.rows();
  Decomposition dec{std::vector<Rational>(n), Mat::identity(n)};
  for (std::size_t i = 0; i < n; ++i) {
    Rational d = a(i, i);
    for (std::size_t k = 0; k < i; ++k) d -= dec.diag[k] * dec.upper(k, i) * dec.upper(k, i);
    dec.diag[i] = d;
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational s = a(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= dec.diag[k] * dec.upper(k, i) * dec.upper(k, j);
      dec.upper(i, j) = s / d;
    }
  }
  return dec;
}

// Fincke-Pohst enumeration restricted to one parity class. The radius
// shrinks whenever a shorter class member turns up, so every kept vector
// has norm equal to the final minimum.
class ClassEnumerator {
 public:
  ClassEnumerator(const Decomposition& dec, std::uint32_t mask, Rational radius)
      : dec_(dec), n_(dec.diag.size()), mask_(mask), radius_(std::move(radius)), p_(n_, 0) {}

  void run() { descend(n_ - 1, Rational(0)); }

  const Rational& radius() const noexcept { return radius_; }
  std::vector<LatticeVector>& found() noexcept { return found_; }

 private:
  void descend(std::size_t i, const Rational& partial) {
    Rational center = 0;
    for (std::size_t j = i + 1; j < n_; ++j)
      if (p_[j] != 0) center -= dec_.upper(i, j) * p_[j];
    const Rational budget = radius_ - partial;
    if (budget < 0) return;
    const Integer reach = isqrt_floor(budget / dec_.diag[i]) + 1;
    Integer lo = floor(center - Rational(reach));
    const Integer hi = ceil(center + Rational(reach));
    const std::int64_t parity = (mask_ >> i) & 1u;
    if (((lo % 2) + 2) % 2 != parity) lo += 1;
    for (Integer x = lo; x <= hi; x += 2) {
      const Rational off = Rational(x) - center;
      const Rational term = partial + dec_.diag[i] * off * off;
      if (term > radius_) continue;
      p_[i] = x.convert_to<std::int64_t>();
      if (i == 0) {
        record(term);
      } else {
        descend(i - 1, term);
      }
    }
    p_[i] = 0;
  }

  void record(const Rational& norm) {
    if (norm == 0) return;
    if (norm < radius_) {
      radius_ = norm;
      found_.clear();
    }
    found_.push_back(p_);
  }

  const Decomposition& dec_;
  std::size_t n_;
  std::uint32_t mask_;
  Rational radius_;
  LatticeVector p_;
  std::vector<LatticeVector> found_;
};

}  // namespace detail

/// Exact minimal vectors of each nonzero parity class of Z^d under `a`.
inline ContactVectorSet coset_minima(const QuadForm& a, std::size_t dim_cap = kDefaultCosetDimCap) {
  const std::size_t d = a.dim();
  if (d > dim_cap || d > 30)
    throw Error("DimensionCapExceeded", "coset enumeration capped at d <= " + std::to_string(dim_cap));
  const auto dec = detail::decompose(a.gram());
  ContactVectorSet out;
  out.dim = d;
  for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
    ParityClass cls;
    cls.mask = mask;
    const LatticeVector rep = cls.parity(d);
    detail::ClassEnumerator en(dec, mask, a(rep));
    en.run();
    cls.min_norm = en.radius();
    cls.minima = std::move(en.found());
    std::sort(cls.minima.begin(), cls.minima.end());
    cls.relevant = cls.minima.size() == 2;
    out.classes.push_back(std::move(cls));
  }
  return out;
}

/// The facet normals: both members of every class whose minimum is a single +/- pair.
inline std::vector<LatticeVector> facet_normals(const ContactVectorSet& cs) {
  std::vector<LatticeVector> out;
  for (const auto& c : cs.classes)
    if (c.relevant) out.insert(out.end(), c.minima.begin(), c.minima.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of classes of facet normals under the relation "not A-orthogonal".
/// The cell is a direct sum exactly when the lattice splits into
/// A-orthogonal sublattices, i.e. when this count exceeds 1.
inline std::size_t orthogonal_components(const QuadForm& a, const std::vector<LatticeVector>& normals) {
  const std::size_t n = normals.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<Vec> images;
  for (const auto& p : normals) images.push_back(a.apply(to_vec(p)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dot(normals[j], images[i]) != 0) parent[find(i)] = find(j);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += find(i) == i;
  return count;
}

/// 2Ap for a contact vector p.
inline Vec commensurate(const QuadForm& a, const ContactVectorSet& cs, const LatticeVector& p) {
  if (p.size() != a.dim()) throw Error("DimensionMismatch", "vector length differs from form dimension");
  if (!cs.contains(p)) throw Error("NotContactVector", "vector is not minimal in its parity class");
  return Rational(2) * a.apply(to_vec(p));
}

/// The integer z with v in the layer <e, x> = z.
inline Integer layer_index(const Vec& e, const LatticeVector& v) {
  const Rational z = dot(v, e);
  if (!is_integral(z)) throw Error("NonIntegralLayer", "<e, v> = " + to_string(z) + " is not an integer");
  return numerator(z);
}

}  // namespace vorext

#endif  // VOREXT_LATTICE_HPP
