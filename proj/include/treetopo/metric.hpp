#pragma once

#include "treetopo/order.hpp"
#include "treetopo/tangent.hpp"

namespace treetopo {

// The height function over a view: one plus the arc length from the base.
// Induces a metric that contracts toward the leaves, so every class at an
// anchor below a point contains a whole metric ball around that point.
class Parametrization {
 public:
  explicit Parametrization(OrderView view) : view_(std::move(view)) {}

  const OrderView& view() const { return view_; }

  Rat height(const Point& x) const;

  // (1/h(meet) - 1/h(a)) + (1/h(meet) - 1/h(b)); zero iff a == b.
  Rat distance(const Point& a, const Point& b) const;

 private:
  OrderView view_;
};

// The largest verified radius around p staying inside the atom: the distance
// from p to the atom's anchor. Requires p inside the atom.
Rat epsilon_witness(const Parametrization& par, const Point& p, const TangentClassAtom& atom);

}  // namespace treetopo
