// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ptsym/exact/scalar.hpp"
#include "ptsym/fock/operator_polynomial.hpp"
#include "ptsym/group/character_table.hpp"

namespace ptsym {

/// Shape parameters of the Pullen–Edmonds-type model; ignored by the others.
struct ShapeParams {
  Rational alpha{1};
  Rational beta = ratio(1, 10);

  friend bool operator==(const ShapeParams&, const ShapeParams&) = default;
};

/**
 * A catalog Hamiltonian H(a) = h0 + a·v with real sweep parameter a.
 * v is purely imaginary, so H(0) is Hermitian and H(−a) = conj(H(a)).
 */
struct ModelSpec {
  std::string name;
  int dimension = 2;
  OperatorPolynomial h0;
  OperatorPolynomial v;
  ShapeParams shape;
  std::string group;  // built-in table name
  std::vector<GroupElement> antiunitary;
  std::string formula;

  OperatorPolynomial at(const Rational& a) const { return h0 + v * ExactScalar(a); }
  CharacterTable table() const { return tables::builtin(group); }
  std::string key() const {
    return name + "|" + shape.alpha.get_str() + "|" + shape.beta.get_str();
  }
};

namespace detail {

inline OperatorPolynomial q(int dim, int axis, int power = 1) { return OperatorPolynomial::position(dim, axis, power); }
inline OperatorPolynomial p2(int dim, int axis) { return OperatorPolynomial::momentum(dim, axis, 2); }
inline ExactScalar r(long num, long den = 1) { return ExactScalar(ratio(num, den)); }

inline OperatorPolynomial kinetic(int dim, const ExactScalar& c) {
  OperatorPolynomial t(dim);
  for (int k = 0; k < dim; ++k) t += p2(dim, k) * c;
  return t;
}

inline GroupElement antiunitary_2d(const char* axis) {
  if (std::string(axis) == "x") return GroupElement::from_rows({{"1", "0"}, {"0", "-1"}}, true, "A(x)=C2(x)T");
  return GroupElement::from_rows({{"-1", "0"}, {"0", "1"}}, true, "A(y)=C2(y)T");
}

}  // namespace detail

inline std::vector<std::string> model_names() {
  return {"solvable1", "solvable2", "barbanis", "barbanis2", "henon_heiles", "h3d", "pullen_edmonds"};
}

/// Catalog entry by name; shape parameters apply to pullen_edmonds only.
inline ModelSpec model_spec(const std::string& name, const ShapeParams& shape = {}) {
  using detail::q;
  using detail::r;
  const ExactScalar i = imag_unit();
  ModelSpec m;
  m.name = name;
  if (name == "solvable1") {
    m.h0 = detail::kinetic(2, r(1)) + q(2, 0, 2) + q(2, 1, 2);
    m.v = q(2, 0) * q(2, 1) * i;
    m.group = "C2v";
    m.antiunitary = {detail::antiunitary_2d("x"), detail::antiunitary_2d("y")};
    m.formula = "px^2 + py^2 + x^2 + y^2 + i a x y";
  } else if (name == "solvable2") {
    m.h0 = detail::kinetic(2, r(1)) + q(2, 0, 2) * r(2) + q(2, 1, 2);
    m.v = q(2, 0) * q(2, 1) * i;
    m.group = "C2";
    m.antiunitary = {detail::antiunitary_2d("x"), detail::antiunitary_2d("y")};
    m.formula = "px^2 + py^2 + 2 x^2 + y^2 + i a x y";
  } else if (name == "barbanis") {
    m.h0 = detail::kinetic(2, r(1, 2)) + (q(2, 0, 2) + q(2, 1, 2)) * r(1, 2);
    m.v = q(2, 0) * q(2, 1, 2) * i;
    m.group = "C2(x)";
    m.antiunitary = {detail::antiunitary_2d("y")};
    m.formula = "(px^2 + py^2)/2 + (x^2 + y^2)/2 + i a x y^2";
  } else if (name == "barbanis2") {
    m.h0 = detail::kinetic(2, r(1, 2)) + q(2, 0, 2) * r(1, 2) + q(2, 1, 2);
    m.v = q(2, 0, 2) * q(2, 1) * i;
    m.group = "C2(y)";
    m.antiunitary = {detail::antiunitary_2d("x")};
    m.formula = "(px^2 + py^2)/2 + x^2/2 + y^2 + i a x^2 y";
  } else if (name == "henon_heiles") {
    m.h0 = detail::kinetic(2, r(1)) + q(2, 0, 2) + q(2, 1, 2);
    m.v = (q(2, 0) * q(2, 1, 2) - q(2, 0, 3) * r(1, 3)) * i;
    m.group = "C3v";
    m.antiunitary = {detail::antiunitary_2d("y")};
    m.formula = "px^2 + py^2 + x^2 + y^2 + i a (x y^2 - x^3/3)";
  } else if (name == "h3d") {
    m.dimension = 3;
    m.h0 = detail::kinetic(3, r(1)) + q(3, 0, 2) + q(3, 1, 2) + q(3, 2, 2);
    m.v = q(3, 0) * q(3, 1) * q(3, 2) * i;
    m.group = "Td";
    m.antiunitary = {GroupElement::from_rows({{"-1", "0", "0"}, {"0", "-1", "0"}, {"0", "0", "-1"}}, true, "PT")};
    m.formula = "px^2 + py^2 + pz^2 + x^2 + y^2 + z^2 + i a x y z";
  } else if (name == "pullen_edmonds") {
    m.shape = shape;
    m.h0 = detail::kinetic(2, r(1)) + (q(2, 0, 2) + q(2, 1, 2)) * ExactScalar(shape.alpha) +
           q(2, 0, 2) * q(2, 1, 2) * ExactScalar(shape.beta);
    m.v = q(2, 0) * q(2, 1) * i;
    m.group = "C2v";
    m.antiunitary = {detail::antiunitary_2d("x"), detail::antiunitary_2d("y")};
    m.formula = "px^2 + py^2 + alpha (x^2 + y^2) + beta x^2 y^2 + i a x y";
  } else {
    std::string known;
    for (const auto& n : model_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown model '" + name + "' (known: " + known + ")");
  }
  if (m.group != "Td") m.dimension = 2;
  return m;
}

/// H(a) for a catalog model.
inline OperatorPolynomial build(const std::string& name, const Rational& a, const ShapeParams& shape = {}) {
  return model_spec(name, shape).at(a);
}

/// Overload for a real a given as an exact scalar; non-real values are rejected.
inline OperatorPolynomial build(const std::string& name, const ExactScalar& a, const ShapeParams& shape = {}) {
  if (!is_rational(a)) throw std::invalid_argument("build: a must be a real rational value");
  return build(name, rational_value(a), shape);
}

struct ModelGroup {
  CharacterTable table;
  std::vector<GroupElement> antiunitary;
};

inline ModelGroup model_group(const std::string& name) {
  ModelSpec m = model_spec(name);
  return {m.table(), m.antiunitary};
}

}  // namespace ptsym
