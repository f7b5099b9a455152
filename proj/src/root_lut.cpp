#include "dctbch/root_lut.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dctbch {

RootTables::RootTables(const GaloisField& field) : m_(field.m()) {
  const auto n = static_cast<std::size_t>(field.order());
  q_.assign(n, std::nullopt);
  c_.assign(n, std::nullopt);
  c1_.assign(n, std::nullopt);

  for (int iv = 1; iv <= field.order(); ++iv) {
    const auto i = static_cast<Element>(iv);
    std::vector<Element> quad;
    std::vector<Element> cubic;
    for (int yv = 0; yv < field.size(); ++yv) {
      const auto y = static_cast<Element>(yv);
      const Element y2 = field.mul(y, y);
      if ((y2 ^ y ^ i) == 0) quad.push_back(y);
      if ((field.mul(y2, y) ^ y ^ i) == 0) cubic.push_back(y);
    }
    const std::size_t slot = i - 1U;
    if (!quad.empty()) q_[slot] = quad.front();
    if (cubic.size() == 3) {
      c_[slot] = std::array<Element, 3>{cubic[0], cubic[1], cubic[2]};
      k_.push_back(i);
    } else if (cubic.size() == 1) {
      c1_[slot] = cubic.front();
    }
  }
}

std::size_t RootTables::index(Element i) const {
  if (i == 0 || i > q_.size()) throw std::out_of_range("RootTables: index must be a nonzero field element");
  return i - 1U;
}

std::string RootTables::dump() const {
  std::ostringstream out;
  for (std::size_t s = 0; s < q_.size(); ++s) {
    out << s + 1 << ' ';
    if (q_[s]) {
      out << *q_[s];
    } else {
      out << '-';
    }
    if (c_[s]) {
      out << ' ' << (*c_[s])[0] << ' ' << (*c_[s])[1] << ' ' << (*c_[s])[2];
    } else {
      out << " - - -";
    }
    out << '\n';
  }
  return out.str();
}

namespace {

void check_tables(const RootTables& tables, const GaloisField& field) {
  if (tables.m() != field.m()) throw std::invalid_argument("root tables were built for a different field");
}

std::vector<Element> sorted_unique(std::vector<Element> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<Element> solve_quadratic(const RootTables& tables, const GaloisField& field, Element s1, Element s2) {
  check_tables(tables, field);
  std::vector<Element> roots;
  if (s1 == 0) {
    roots = {field.sqrt(s2)};
  } else if (s2 == 0) {
    roots = {0, s1};
  } else {
    const Element u = field.div(s2, field.mul(s1, s1));
    if (const auto y0 = tables.quadratic_root(u)) {
      const Element x0 = field.mul(s1, *y0);
      roots = {x0, static_cast<Element>(x0 ^ s1)};
    }
  }
  for (Element x : roots) {
    if ((field.mul(x, x) ^ field.mul(s1, x) ^ s2) != 0) {
      throw std::logic_error("solve_quadratic: table root failed substitution");
    }
  }
  return sorted_unique(std::move(roots));
}

std::vector<Element> solve_cubic(const RootTables& tables, const GaloisField& field, Element s1, Element s2,
                                 Element s3) {
  check_tables(tables, field);
  const Element a = field.mul(s1, s1) ^ s2;
  const Element b = field.mul(s1, s2) ^ s3;

  std::vector<Element> roots;
  if (a == 0) {
    for (Element z : field.cbrt(b)) roots.push_back(z ^ s1);
  } else {
    const Element root_a = field.sqrt(a);
    const Element o = field.div(b, field.mul(a, root_a));
    const auto lift = [&](Element y) { return static_cast<Element>(field.mul(root_a, y) ^ s1); };
    if (o == 0) {
      // y^3 + y = y (y + 1)^2
      roots = {lift(0), lift(1)};
    } else if (const auto row = tables.cubic_roots(o)) {
      for (Element y : *row) roots.push_back(lift(y));
    } else if (const auto single = tables.cubic_single_root(o)) {
      roots.push_back(lift(*single));
    }
  }
  for (Element x : roots) {
    const Element x2 = field.mul(x, x);
    if ((field.mul(x2, x) ^ field.mul(s1, x2) ^ field.mul(s2, x) ^ s3) != 0) {
      throw std::logic_error("solve_cubic: table root failed substitution");
    }
  }
  return sorted_unique(std::move(roots));
}

}  // namespace dctbch
