#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dctbch/galois.hpp"

namespace dctbch {

/// Precomputed roots of the canonical families y^2 + y + i and y^3 + y + i over GF(2^m),
/// indexed by the nonzero element i in [1, 2^m - 1].
///
/// - q: one root y0 of y^2 + y + i (the other is y0 + 1), absent when the quadratic is irreducible.
/// - c: the three distinct roots of y^3 + y + i, absent unless all three lie in the field.
/// - k: the indices i whose c-row is present.
///
/// Cubic rows with exactly one root keep that root in a separate single-root table so that
/// solve_cubic can return complete root sets; the embedder only ever reads q, c and k.
class RootTables {
 public:
  explicit RootTables(const GaloisField& field);

  int m() const { return m_; }
  /// Table length 2^m - 1.
  std::size_t size() const { return q_.size(); }

  std::optional<Element> quadratic_root(Element i) const { return q_.at(index(i)); }
  std::optional<std::array<Element, 3>> cubic_roots(Element i) const { return c_.at(index(i)); }
  std::optional<Element> cubic_single_root(Element i) const { return c1_.at(index(i)); }
  const std::vector<Element>& three_root_indices() const { return k_; }

  /// One line per index: "i q c1 c2 c3", with '-' for absent entries. Debug aid only.
  std::string dump() const;

 private:
  std::size_t index(Element i) const;

  int m_;
  std::vector<std::optional<Element>> q_;
  std::vector<std::optional<std::array<Element, 3>>> c_;
  std::vector<std::optional<Element>> c1_;
  std::vector<Element> k_;
};

/// Distinct roots of x^2 + s1 x + s2, ascending. s1 = 0 yields the single repeated root sqrt(s2).
std::vector<Element> solve_quadratic(const RootTables& tables, const GaloisField& field, Element s1, Element s2);

/// Distinct roots of x^3 + s1 x^2 + s2 x + s3, ascending.
///
/// Substituting x = sqrt(a) y + s1 with a = s1^2 + s2 and b = s1 s2 + s3 maps the cubic onto
/// y^3 + y + b / a^(3/2), whose roots come from the tables. a = 0 reduces to x + s1 = cbrt(b).
/// Every returned root is checked by substitution; a failed check throws std::logic_error.
std::vector<Element> solve_cubic(const RootTables& tables, const GaloisField& field, Element s1, Element s2,
                                 Element s3);

}  // namespace dctbch
