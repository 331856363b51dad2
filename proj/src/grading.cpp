#include "nilcert/grading.hpp"

namespace nilcert {

ValidationReport validate_grading(const Algebra& a, const Grading& g) {
  ValidationReport rep;
  std::size_t n = g.group.order();
  if (g.components.size() != n) {
    rep.add("grading.component_count", false,
            "expected " + std::to_string(n) + " components");
    return rep;
  }
  for (const Subspace& c : g.components)
    if (c.ambient() != a.dim()) {
      rep.add("grading.ambient", false);
      return rep;
    }
  rep.add("grading.component_count", true);

  std::size_t total = 0;
  Subspace acc = Subspace::zero(a.field(), a.dim());
  for (const Subspace& c : g.components) {
    total += c.dim();
    acc = sum(acc, c);
  }
  bool direct = (total == a.dim()) && (acc.dim() == a.dim());
  rep.add("grading.direct_sum", direct,
          direct ? "" : "component dims sum to " + std::to_string(total) +
                        ", joint span has dim " + std::to_string(acc.dim()) +
                        ", algebra dim " + std::to_string(a.dim()));

  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      Subspace prod = subspace_product(a, g.components[x], g.components[y]);
      if (!g.components[g.group.mul(x, y)].contains(prod)) {
        rep.add("grading.multiplicative", false,
                "A_" + g.group.names()[x] + " * A_" + g.group.names()[y] +
                " escapes A_" + g.group.names()[g.group.mul(x, y)]);
        return rep;
      }
    }
  rep.add("grading.multiplicative", true);
  return rep;
}

ValidationReport validate_action(const Algebra& a, const GroupAction& act) {
  ValidationReport rep;
  std::size_t n = act.group.order();
  if (act.rho.size() != n) {
    rep.add("action.matrix_count", false);
    return rep;
  }
  for (const Matrix& m : act.rho)
    if (m.rows() != a.dim() || m.cols() != a.dim()) {
      rep.add("action.matrix_shape", false);
      return rep;
    }
  rep.add("action.matrix_count", true);

  bool id_ok = act.rho[act.group.identity()] == Matrix::identity(a.field(), a.dim());
  rep.add("action.identity", id_ok);
  if (!id_ok) return rep;

  for (std::uint32_t g = 0; g < n; ++g)
    if (rref(act.rho[g]).rows() != a.dim()) {
      rep.add("action.invertible", false, "element " + act.group.names()[g]);
      return rep;
    }
  rep.add("action.invertible", true);

  for (std::uint32_t g = 0; g < n; ++g)
    for (std::uint32_t h = 0; h < n; ++h)
      if (act.rho[g].mul(act.rho[h]) != act.rho[act.group.mul(g, h)]) {
        rep.add("action.homomorphism", false,
                act.group.names()[g] + " * " + act.group.names()[h]);
        return rep;
      }
  rep.add("action.homomorphism", true);

  for (std::uint32_t g = 0; g < n; ++g) {
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) {
        Vec lhs = act.rho[g].apply(a.multiply(a.basis_element(i), a.basis_element(j)));
        Vec rhs = a.multiply(act.rho[g].apply(a.basis_element(i)),
                             act.rho[g].apply(a.basis_element(j)));
        if (lhs != rhs) {
          rep.add("action.automorphism", false,
                  act.group.names()[g] + " at basis pair (" + std::to_string(i) + "," +
                      std::to_string(j) + ")");
          return rep;
        }
      }
  }
  rep.add("action.automorphism", true);
  return rep;
}

Subspace fixed_subalgebra(const Algebra& a, const GroupAction& act) {
  FieldSpec f = a.field();
  Subspace fixed = Subspace::full(f, a.dim());
  Matrix id = Matrix::identity(f, a.dim());
  for (std::uint32_t g = 0; g < act.group.order(); ++g) {
    if (g == act.group.identity()) continue;
    Matrix diff = act.rho[g].add(id.scaled(f.neg(1 % f.p)));
    fixed = intersect(fixed, kernel(diff));
  }
  if (!fixed.contains(subspace_product(a, fixed, fixed)))
    throw error("action: fixed space is not multiplicatively closed (invalid action?)");
  return fixed;
}

Vec average(const Algebra& a, const GroupAction& act, const Vec& x) {
  FieldSpec f = a.field();
  std::uint64_t n = act.group.order();
  if (n % f.p == 0)
    throw error("action: cannot average, characteristic divides the group order");
  Vec acc(a.dim(), 0);
  for (std::uint32_t g = 0; g < act.group.order(); ++g) {
    Vec t = act.rho[g].apply(x);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = f.add(acc[i], t[i]);
  }
  std::uint64_t inv_n = f.inv(n % f.p);
  for (auto& c : acc) c = f.mul(c, inv_n);
  return acc;
}

Grading eigen_grading(const Algebra& a, const GroupAction& act, std::uint64_t omega) {
  FieldSpec f = a.field();
  std::size_t q = act.group.order();
  if (!is_prime(q)) throw error("eigen_grading: group order must be prime");
  if (f.p == q) throw error("eigen_grading: characteristic divides the group order");
  omega %= f.p;
  if (omega == 0 || f.pow(omega, q) != 1 || (q > 1 && omega == 1))
    throw error("eigen_grading: omega is not a primitive root of unity of order " +
                std::to_string(q));

  std::uint32_t gen = act.group.identity();
  for (std::uint32_t g = 0; g < q; ++g)
    if (g != act.group.identity()) { gen = g; break; }

  Matrix id = Matrix::identity(f, a.dim());
  std::vector<Subspace> components(q, Subspace::zero(f, a.dim()));
  // component at g^k is ker(rho(gen) - omega^k id)
  std::uint32_t at = act.group.identity();
  for (std::size_t k = 0; k < q; ++k) {
    Matrix diff = act.rho[gen].add(id.scaled(f.neg(f.pow(omega, k))));
    components[at] = kernel(diff);
    at = act.group.mul(at, gen);
  }
  Grading grading{act.group, std::move(components)};
  ValidationReport rep = validate_grading(a, grading);
  if (!rep.ok()) throw error("eigen_grading: " + rep.first_failure());
  return grading;
}

GradedBoundReport graded_nilpotency_bound_check(const Algebra& a, const Grading& g) {
  GradedBoundReport out;
  out.n = g.group.order();
  auto d = nilpotency_index(a, g.identity_component());
  if (!d) throw error("graded bound check: identity component is not nilpotent");
  out.d = *d;
  out.bound = static_cast<std::uint64_t>(out.n) * out.d;
  auto idx = nilpotency_index(a, Subspace::full(a.field(), a.dim()));
  out.algebra_nilpotent = idx.has_value();
  out.index = idx.value_or(0);
  out.within_bound = idx.has_value() && *idx <= out.bound;
  return out;
}

GradedHypotheses make_graded_hypotheses(const Algebra& a, Grading grading, const Subspace& i_e) {
  ValidationReport rep = validate_grading(a, grading);
  if (!rep.ok()) throw error("graded hypotheses: " + rep.first_failure());
  const Subspace& a_e = grading.identity_component();
  if (!a_e.contains(i_e)) throw error("graded hypotheses: ideal is not inside A_e");
  if (!i_e.contains(subspace_product(a, a_e, i_e)))
    throw error("graded hypotheses: ideal is not left-closed under A_e");
  if (!i_e.contains(subspace_product(a, i_e, a_e)))
    throw error("graded hypotheses: ideal is not right-closed under A_e");
  auto d = nilpotency_index(a, i_e);
  if (!d) throw error("graded hypotheses: ideal is not nilpotent");
  GradedHypotheses hyp{std::move(grading), IdealHandle{i_e, true, true}, *d, 0};
  hyp.m = a_e.dim() - i_e.dim();
  return hyp;
}

}  // namespace nilcert
