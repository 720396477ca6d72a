#include "treetopo/metric.hpp"

#include <stdexcept>

namespace treetopo {

Rat Parametrization::height(const Point& x) const {
  return 1 + view_.skeleton->distance(view_.base, x);
}

Rat Parametrization::distance(const Point& a, const Point& b) const {
  Point m = meet(view_, a, b);
  Rat hm = height(m);
  return (Rat(1) / hm - Rat(1) / height(a)) + (Rat(1) / hm - Rat(1) / height(b));
}

Rat epsilon_witness(const Parametrization& par, const Point& p, const TangentClassAtom& atom) {
  if (p == atom.anchor()) throw std::invalid_argument("no radius exists at the anchor itself");
  if (!atom.contains(*par.view().skeleton, p))
    throw std::invalid_argument("point lies outside the class");
  return par.distance(p, atom.anchor());
}

}  // namespace treetopo
