#pragma once

// Potential specification shared by the eigensolvers, the propagator and the
// classical layer: the hard-wall well on [0, L], a tabulated field, or an
// arbitrary callback.

#include <functional>
#include <utility>

#include "qbohm/field.hpp"
#include "qbohm/numerics.hpp"

namespace qbohm {

class Potential {
 public:
  enum class Kind { infinite_well, tabulated, callback };

  // V = 0 on [0, L] with hard walls at both ends (walls are enforced by the
  // solvers' boundary conditions, not by a finite value here).
  static Potential infinite_well(double L) {
    if (!(L > 0.0)) throw domain_error("infinite_well: width must be positive");
    Potential p;
    p.kind_ = Kind::infinite_well;
    p.L_ = L;
    return p;
  }

  static Potential tabulated(RealField table) {
    if (table.grid.kind != CoordinateKind::physical_x)
      throw domain_error("Potential::tabulated: table must live on a physical grid");
    Potential p;
    p.kind_ = Kind::tabulated;
    p.table_ = std::move(table);
    return p;
  }

  static Potential callback(std::function<double(double)> f,
                            std::function<double(double)> derivative = {}) {
    Potential p;
    p.kind_ = Kind::callback;
    p.fn_ = std::move(f);
    p.dfn_ = std::move(derivative);
    return p;
  }

  Kind kind() const { return kind_; }
  double well_width() const { return L_; }

  double operator()(double x) const {
    switch (kind_) {
      case Kind::infinite_well:
        return 0.0;
      case Kind::tabulated:
        return cubic_interp(table_.values, table_.grid.x_min, table_.grid.spacing(), x);
      case Kind::callback:
        return fn_(x);
    }
    return 0.0;
  }

  // dV/dx, analytic when available, otherwise a central difference with a
  // step scaled to the argument.
  double derivative(double x) const {
    if (kind_ == Kind::infinite_well) return 0.0;
    if (kind_ == Kind::callback && dfn_) return dfn_(x);
    const double step = 1e-6 * (1.0 + std::abs(x));
    return ((*this)(x + step) - (*this)(x - step)) / (2.0 * step);
  }

 private:
  Kind kind_ = Kind::infinite_well;
  double L_ = 1.0;
  RealField table_;
  std::function<double(double)> fn_;
  std::function<double(double)> dfn_;
};

}  // namespace qbohm
