// SPDX-License-Identifier: MIT
#include "g2eh/g2.hpp"

namespace g2eh {

FundamentalTerms fundamental_relation_terms(const FormField& phi_field, const Point& p, double h, int order) {
  FormField psi_field = [&](const Point& q) {
    KForm<double> f = phi_field(q);
    if (!is_positive(f)) throw std::domain_error("positivity lost on stencil");
    return theta(f);
  };
  KForm<double> phi = phi_field(p);
  ModelSpace<double> X = space_of(phi);
  KForm<double> psi = hodge(X, phi);
  KForm<double> dphi = fd_exterior_derivative(phi_field, p, h, order);
  KForm<double> dpsi = fd_exterior_derivative(psi_field, p, h, order);
  FundamentalTerms out;
  out.lhs = wedge(phi, hodge(X, dphi));
  out.rhs = wedge(psi, hodge(X, dpsi));
  out.residual = norm(X, out.lhs - out.rhs);
  return out;
}

}  // namespace g2eh
