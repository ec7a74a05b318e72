// Term bases for every identity. Each term is one summed product with the
// printed index placement; scalar coefficients live in identities.cpp.
//
// Shorthand in term ids: T = torsion L⌄, S = symmetric part L̲, L = full
// coefficients, R = curvature, dT = L⌄_{..|k}, a = the field, a, = comma
// derivative, a| = kind-0 derivative, a1| = kind-1 derivative.

#include <utility>

#include "riccitype/errors.hpp"
#include "riccitype/identities.hpp"

namespace riccitype {

namespace {

using std::size_t;

void require_11(const Workspace& ws) {
  if (ws.field().valence() != Valence{1, 1}) throw ShapeError("identity requires a (1,1) field");
}

template <class F>
TensorField field13(size_t dim, F&& f) {
  return TensorField::generate(dim, {1, 3}, [&](const MultiIndex& x) { return f(x[0], x[1], x[2], x[3]); });
}

template <class F>
Poly sum1(size_t dim, F&& f) {
  Poly acc(dim);
  for (size_t al = 0; al < dim; ++al) acc += f(al);
  return acc;
}

template <class F>
Poly sum2(size_t dim, F&& f) {
  Poly acc(dim);
  for (size_t al = 0; al < dim; ++al)
    for (size_t be = 0; be < dim; ++be) acc += f(al, be);
  return acc;
}

Term make_term(std::string id, std::string formula, TensorField value) {
  return Term{std::move(id), std::move(formula), std::move(value)};
}

// The three a^α_j, a^i_α and a^α_β blocks shared by the first and second
// families. The a^i_α terms carry the leading minus sign, so their printed
// coefficients are the ones inside −a^i_α{…}.
void append_curvature_blocks(const Workspace& ws, std::vector<Term>& out, bool with_cross) {
  const size_t N = ws.dim();
  const TensorField& a = ws.field();
  const TensorField& T = ws.connection().torsion();
  const TensorField& R = ws.curvature();
  const TensorField& dT = ws.torsion_derivative();

  out.push_back(make_term("a(a,j)R(i,a,m,n)", "a^α_j R^i_{αmn}", field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum1(N, [&](size_t al) { return a(al, j) * R(i, al, m, n); });
                          })));
  out.push_back(make_term("a(a,j)dT(i,a,m,n)", "a^α_j L⌄^i_{αm|n}", field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum1(N, [&](size_t al) { return a(al, j) * dT(i, al, m, n); });
                          })));
  out.push_back(make_term("a(a,j)dT(i,a,n,m)", "a^α_j L⌄^i_{αn|m}", field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum1(N, [&](size_t al) { return a(al, j) * dT(i, al, n, m); });
                          })));
  out.push_back(make_term("a(a,j)T(b,a,m)T(i,b,n)", "a^α_j L⌄^β_{αm} L⌄^i_{βn}",
                          field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum2(N, [&](size_t al, size_t be) { return a(al, j) * (T(be, al, m) * T(i, be, n)); });
                          })));
  out.push_back(make_term("a(a,j)T(b,a,n)T(i,b,m)", "a^α_j L⌄^β_{αn} L⌄^i_{βm}",
                          field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum2(N, [&](size_t al, size_t be) { return a(al, j) * (T(be, al, n) * T(i, be, m)); });
                          })));
  out.push_back(make_term("a(a,j)T(b,m,n)T(i,b,a)", "a^α_j L⌄^β_{mn} L⌄^i_{βα}",
                          field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum2(N, [&](size_t al, size_t be) { return a(al, j) * (T(be, m, n) * T(i, be, al)); });
                          })));

  out.push_back(make_term("-a(i,a)R(a,j,m,n)", "−a^i_α R^α_{jmn}", field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return -sum1(N, [&](size_t al) { return a(i, al) * R(al, j, m, n); });
                          })));
  out.push_back(make_term("-a(i,a)dT(a,j,m,n)", "−a^i_α L⌄^α_{jm|n}", field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return -sum1(N, [&](size_t al) { return a(i, al) * dT(al, j, m, n); });
                          })));
  out.push_back(make_term("-a(i,a)dT(a,j,n,m)", "−a^i_α L⌄^α_{jn|m}", field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return -sum1(N, [&](size_t al) { return a(i, al) * dT(al, j, n, m); });
                          })));
  out.push_back(make_term("-a(i,a)T(b,j,m)T(a,b,n)", "−a^i_α L⌄^β_{jm} L⌄^α_{βn}",
                          field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return -sum2(N, [&](size_t al, size_t be) { return a(i, al) * (T(be, j, m) * T(al, be, n)); });
                          })));
  out.push_back(make_term("-a(i,a)T(b,j,n)T(a,b,m)", "−a^i_α L⌄^β_{jn} L⌄^α_{βm}",
                          field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return -sum2(N, [&](size_t al, size_t be) { return a(i, al) * (T(be, j, n) * T(al, be, m)); });
                          })));
  out.push_back(make_term("-a(i,a)T(b,m,n)T(a,b,j)", "−a^i_α L⌄^β_{mn} L⌄^α_{βj}",
                          field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return -sum2(N, [&](size_t al, size_t be) { return a(i, al) * (T(be, m, n) * T(al, be, j)); });
                          })));

  if (!with_cross) return;
  out.push_back(make_term("a(a,b)T(b,j,m)T(i,a,n)", "a^α_β L⌄^β_{jm} L⌄^i_{αn}",
                          field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum2(N, [&](size_t al, size_t be) { return a(al, be) * (T(be, j, m) * T(i, al, n)); });
                          })));
  out.push_back(make_term("a(a,b)T(b,j,n)T(i,a,m)", "a^α_β L⌄^β_{jn} L⌄^i_{αm}",
                          field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum2(N, [&](size_t al, size_t be) { return a(al, be) * (T(be, j, n) * T(i, al, m)); });
                          })));
}

// The five first-derivative terms with a chosen (1,2) derivative field per
// slot: L⌄^i_{αm} X^α_{jn}, L⌄^i_{αn} Y^α_{jm}, L⌄^α_{jm} Z^i_{αn},
// L⌄^α_{jn} U^i_{αm}, L⌄^α_{mn} V^i_{jα}.
void append_derivative_terms(const Workspace& ws, std::vector<Term>& out, const std::array<const TensorField*, 5>& d,
                             const std::array<std::string, 5>& names) {
  const size_t N = ws.dim();
  const TensorField& T = ws.connection().torsion();
  const TensorField& X = *d[0];
  const TensorField& Y = *d[1];
  const TensorField& Z = *d[2];
  const TensorField& U = *d[3];
  const TensorField& V = *d[4];
  out.push_back(make_term("T(i,a,m)" + names[0] + "(a,j,n)", "L⌄^i_{αm} " + names[0] + "^α_{jn}",
                          field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum1(N, [&](size_t al) { return T(i, al, m) * X(al, j, n); });
                          })));
  out.push_back(make_term("T(i,a,n)" + names[1] + "(a,j,m)", "L⌄^i_{αn} " + names[1] + "^α_{jm}",
                          field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum1(N, [&](size_t al) { return T(i, al, n) * Y(al, j, m); });
                          })));
  out.push_back(make_term("T(a,j,m)" + names[2] + "(i,a,n)", "L⌄^α_{jm} " + names[2] + "^i_{αn}",
                          field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum1(N, [&](size_t al) { return T(al, j, m) * Z(i, al, n); });
                          })));
  out.push_back(make_term("T(a,j,n)" + names[3] + "(i,a,m)", "L⌄^α_{jn} " + names[3] + "^i_{αm}",
                          field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum1(N, [&](size_t al) { return T(al, j, n) * U(i, al, m); });
                          })));
  out.push_back(make_term("T(a,m,n)" + names[4] + "(i,j,a)", "L⌄^α_{mn} " + names[4] + "^i_{jα}",
                          field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum1(N, [&](size_t al) { return T(al, m, n) * V(i, j, al); });
                          })));
}

TensorField weighted_derivative(const Workspace& ws, const RhoWeights& weights, int slot) {
  TensorField out(ws.dim(), {1, 2});
  for (Kind z : all_kinds()) {
    const Rational& w = weights.at(slot, z.value());
    if (sgn(w) != 0) out.add_scaled(ws.derivative(z), w);
  }
  return out;
}

// --- (p,q) helpers ---------------------------------------------------------

MultiIndex with(MultiIndex idx, size_t pos, size_t value) {
  idx[pos] = value;
  return idx;
}

MultiIndex with(MultiIndex idx, size_t pos1, size_t value1, size_t pos2, size_t value2) {
  idx[pos1] = value1;
  idx[pos2] = value2;
  return idx;
}

// idx with k trailing entries appended.
MultiIndex extend(const MultiIndex& base, std::initializer_list<size_t> tail) {
  MultiIndex out(base);
  out.insert(out.end(), tail);
  return out;
}

}  // namespace

TensorField combine(std::span<const Term> terms, std::span<const Rational> coeffs) {
  if (terms.size() != coeffs.size()) throw ShapeError("term and coefficient counts differ");
  if (terms.empty()) throw ShapeError("cannot combine an empty term list");
  TensorField out(terms[0].value.dim(), terms[0].value.valence());
  for (size_t t = 0; t < terms.size(); ++t) {
    if (sgn(coeffs[t]) != 0) out.add_scaled(terms[t].value, coeffs[t]);
  }
  return out;
}

std::vector<Term> classical_basis(const Workspace& ws) {
  const size_t N = ws.dim();
  const TensorField& A = ws.field();
  const TensorField& R = ws.curvature();
  const size_t p = A.valence().upper, q = A.valence().lower;
  const Valence out_valence{p, q + 2};
  std::vector<Term> out;
  out.push_back(make_term("sum_k a(..a..)R(i_k,a,m,n)", "Σ_k a^{…α…} R^{i_k}_{αmn}",
                          TensorField::generate(N, out_valence, [&](const MultiIndex& x) {
                            const MultiIndex base(x.begin(), x.end() - 2);
                            const size_t m = x[p + q], n = x[p + q + 1];
                            Poly acc(N);
                            for (size_t k = 0; k < p; ++k)
                              for (size_t al = 0; al < N; ++al) acc += A.at(with(base, k, al)) * R(x[k], al, m, n);
                            return acc;
                          })));
  out.push_back(make_term("-sum_l a(..a..)R(a,j_l,m,n)", "−Σ_l a_{…α…} R^α_{j_l mn}",
                          TensorField::generate(N, out_valence, [&](const MultiIndex& x) {
                            const MultiIndex base(x.begin(), x.end() - 2);
                            const size_t m = x[p + q], n = x[p + q + 1];
                            Poly acc(N);
                            for (size_t l = 0; l < q; ++l)
                              for (size_t al = 0; al < N; ++al) acc -= A.at(with(base, p + l, al)) * R(al, x[p + l], m, n);
                            return acc;
                          })));
  return out;
}

std::vector<Term> first_family_basis(const Workspace& ws) {
  require_11(ws);
  const TensorField& d0 = ws.derivative(Kind(0));
  std::vector<Term> out;
  append_derivative_terms(ws, out, {&d0, &d0, &d0, &d0, &d0}, {"a|", "a|", "a|", "a|", "a|"});
  append_curvature_blocks(ws, out, true);
  return out;
}

std::vector<Term> ricci12_basis(const Workspace& ws) {
  require_11(ws);
  const TensorField& d0 = ws.derivative(Kind(0));
  std::vector<Term> out;
  append_derivative_terms(ws, out, {&d0, &d0, &d0, &d0, &d0}, {"a|", "a|", "a|", "a|", "a|"});
  append_curvature_blocks(ws, out, false);
  return out;
}

std::vector<Term> second_family_basis(const Workspace& ws, const RhoWeights& weights) {
  require_11(ws);
  std::array<TensorField, 5> mixes;
  for (int slot = 1; slot <= 5; ++slot) mixes[static_cast<size_t>(slot - 1)] = weighted_derivative(ws, weights, slot);
  std::vector<Term> out;
  append_derivative_terms(ws, out, {&mixes[0], &mixes[1], &mixes[2], &mixes[3], &mixes[4]}, {"X", "Y", "Z", "U", "V"});
  append_curvature_blocks(ws, out, true);
  return out;
}

std::vector<Term> ricci11_basis(const Workspace& ws) {
  require_11(ws);
  const size_t N = ws.dim();
  const TensorField& a = ws.field();
  const TensorField& L = ws.connection().coefficients();
  const TensorField& S = ws.connection().symmetric();
  const TensorField& T = ws.connection().torsion();
  const TensorField& R = ws.curvature();
  const TensorField& dT = ws.torsion_derivative();
  const TensorField& ca = ws.comma();
  const TensorField& d1 = ws.derivative(Kind(1));
  std::vector<Term> out;

  // a^α_j A₁^i_{αmn}, one term per summand of A₁.
  auto up = [&](std::string id, std::string formula, auto&& inner) {
    out.push_back(make_term(std::move(id), std::move(formula), field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                              return sum1(N, [&](size_t al) { return a(al, j) * inner(i, al, m, n); });
                            })));
  };
  up("a(a,j)R(i,a,m,n)", "a^α_j R^i_{αmn}", [&](size_t i, size_t al, size_t m, size_t n) { return R(i, al, m, n); });
  up("a(a,j)dT(i,a,m,n)", "a^α_j L⌄^i_{αm|n}", [&](size_t i, size_t al, size_t m, size_t n) { return dT(i, al, m, n); });
  up("a(a,j)dT(i,a,n,m)", "a^α_j L⌄^i_{αn|m}", [&](size_t i, size_t al, size_t m, size_t n) { return dT(i, al, n, m); });
  up("a(a,j)T(b,a,m)T(i,b,n)", "a^α_j L⌄^β_{αm} L⌄^i_{βn}", [&](size_t i, size_t al, size_t m, size_t n) {
    return sum1(N, [&](size_t be) { return T(be, al, m) * T(i, be, n); });
  });
  up("a(a,j)T(b,a,n)T(i,b,m)", "a^α_j L⌄^β_{αn} L⌄^i_{βm}", [&](size_t i, size_t al, size_t m, size_t n) {
    return sum1(N, [&](size_t be) { return T(be, al, n) * T(i, be, m); });
  });
  up("a(a,j)S(b,a,m)T(i,b,n)", "a^α_j L̲^β_{αm} L⌄^i_{βn}", [&](size_t i, size_t al, size_t m, size_t n) {
    return sum1(N, [&](size_t be) { return S(be, al, m) * T(i, be, n); });
  });
  up("a(a,j)S(b,a,n)T(i,b,m)", "a^α_j L̲^β_{αn} L⌄^i_{βm}", [&](size_t i, size_t al, size_t m, size_t n) {
    return sum1(N, [&](size_t be) { return S(be, al, n) * T(i, be, m); });
  });

  // −a^i_α A₂^α_{jmn}.
  auto down = [&](std::string id, std::string formula, auto&& inner) {
    out.push_back(make_term(std::move(id), std::move(formula), field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                              return -sum1(N, [&](size_t al) { return a(i, al) * inner(al, j, m, n); });
                            })));
  };
  down("-a(i,a)R(a,j,m,n)", "−a^i_α R^α_{jmn}", [&](size_t al, size_t j, size_t m, size_t n) { return R(al, j, m, n); });
  down("-a(i,a)dT(a,j,m,n)", "−a^i_α L⌄^α_{jm|n}", [&](size_t al, size_t j, size_t m, size_t n) { return dT(al, j, m, n); });
  down("-a(i,a)dT(a,j,n,m)", "−a^i_α L⌄^α_{jn|m}", [&](size_t al, size_t j, size_t m, size_t n) { return dT(al, j, n, m); });
  down("-a(i,a)T(b,j,m)T(a,b,n)", "−a^i_α L⌄^β_{jm} L⌄^α_{βn}", [&](size_t al, size_t j, size_t m, size_t n) {
    return sum1(N, [&](size_t be) { return T(be, j, m) * T(al, be, n); });
  });
  down("-a(i,a)T(b,j,n)T(a,b,m)", "−a^i_α L⌄^β_{jn} L⌄^α_{βm}", [&](size_t al, size_t j, size_t m, size_t n) {
    return sum1(N, [&](size_t be) { return T(be, j, n) * T(al, be, m); });
  });
  down("-a(i,a)T(b,j,m)S(a,b,n)", "−a^i_α L⌄^β_{jm} L̲^α_{βn}", [&](size_t al, size_t j, size_t m, size_t n) {
    return sum1(N, [&](size_t be) { return T(be, j, m) * S(al, be, n); });
  });
  down("-a(i,a)S(b,j,n)S(a,b,m)", "−a^i_α L̲^β_{jn} L̲^α_{βm}", [&](size_t al, size_t j, size_t m, size_t n) {
    return sum1(N, [&](size_t be) { return S(be, j, n) * S(al, be, m); });
  });

  // Single bracket with comma derivatives.
  out.push_back(make_term("T(i,a,m)a,(a,j,n)", "L⌄^i_{αm} a^α_{j,n}", field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum1(N, [&](size_t al) { return T(i, al, m) * ca(al, j, n); });
                          })));
  out.push_back(make_term("T(i,a,n)a,(a,j,m)", "L⌄^i_{αn} a^α_{j,m}", field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum1(N, [&](size_t al) { return T(i, al, n) * ca(al, j, m); });
                          })));
  out.push_back(make_term("T(a,j,m)a,(i,a,n)", "L⌄^α_{jm} a^i_{α,n}", field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum1(N, [&](size_t al) { return T(al, j, m) * ca(i, al, n); });
                          })));
  out.push_back(make_term("T(a,j,n)a,(i,a,m)", "L⌄^α_{jn} a^i_{α,m}", field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum1(N, [&](size_t al) { return T(al, j, n) * ca(i, al, m); });
                          })));

  // Double bracket with the full coefficients, index placement as printed.
  auto dbl = [&](std::string id, std::string formula, auto&& inner) {
    out.push_back(make_term(std::move(id), std::move(formula), field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                              return sum2(N, [&](size_t al, size_t be) { return a(al, be) * inner(i, j, m, n, al, be); });
                            })));
  };
  dbl("a(a,b)L(i,m,b)L(a,j,n)", "a^α_β L^i_{mβ} L^α_{jn}",
      [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) { return L(i, m, be) * L(al, j, n); });
  dbl("a(a,b)L(i,n,b)L(a,j,m)", "a^α_β L^i_{nβ} L^α_{jm}",
      [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) { return L(i, n, be) * L(al, j, m); });
  dbl("a(a,b)L(i,a,m)L(b,n,j)", "a^α_β L^i_{αm} L^β_{nj}",
      [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) { return L(i, al, m) * L(be, n, j); });
  dbl("a(a,b)L(i,a,n)L(b,m,j)", "a^α_β L^i_{αn} L^β_{mj}",
      [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) { return L(i, al, n) * L(be, m, j); });

  out.push_back(make_term("T(a,m,n)a1|(i,j,a)", "L⌄^α_{mn} a^i_{j1|α}", field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                            return sum1(N, [&](size_t al) { return T(al, m, n) * d1(i, j, al); });
                          })));
  return out;
}

std::vector<Term> general_family_basis(const Workspace& ws) {
  const size_t N = ws.dim();
  const TensorField& A = ws.field();
  const TensorField& T = ws.connection().torsion();
  const TensorField& R = ws.curvature();
  const TensorField& dT = ws.torsion_derivative();
  const TensorField& D = ws.derivative(Kind(0));
  const size_t p = A.valence().upper, q = A.valence().lower;
  const Valence out_valence{p, q + 2};
  const size_t M = p + q, Nn = p + q + 1;  // positions of m and n

  std::vector<Term> out;
  auto push = [&](std::string id, std::string formula, auto&& component) {
    out.push_back(make_term(std::move(id), std::move(formula), TensorField::generate(N, out_valence, [&](const MultiIndex& x) {
                              const MultiIndex base(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(M));
                              return component(base, x[M], x[Nn]);
                            })));
  };

  // First-derivative sums.
  push("sum_k T(i_k,a,m)a|(..a..,n)", "Σ_k L⌄^{i_k}_{αm} a^{…α…}_{…|n}", [&](const MultiIndex& b, size_t m, size_t n) {
    Poly acc(N);
    for (size_t k = 0; k < p; ++k)
      for (size_t al = 0; al < N; ++al) acc += T(b[k], al, m) * D.at(extend(with(b, k, al), {n}));
    return acc;
  });
  push("sum_k T(i_k,a,n)a|(..a..,m)", "Σ_k L⌄^{i_k}_{αn} a^{…α…}_{…|m}", [&](const MultiIndex& b, size_t m, size_t n) {
    Poly acc(N);
    for (size_t k = 0; k < p; ++k)
      for (size_t al = 0; al < N; ++al) acc += T(b[k], al, n) * D.at(extend(with(b, k, al), {m}));
    return acc;
  });
  push("sum_l T(a,j_l,m)a|(..a..,n)", "Σ_l L⌄^α_{j_l m} a_{…α…|n}", [&](const MultiIndex& b, size_t m, size_t n) {
    Poly acc(N);
    for (size_t l = 0; l < q; ++l)
      for (size_t al = 0; al < N; ++al) acc += T(al, b[p + l], m) * D.at(extend(with(b, p + l, al), {n}));
    return acc;
  });
  push("sum_l T(a,j_l,n)a|(..a..,m)", "Σ_l L⌄^α_{j_l n} a_{…α…|m}", [&](const MultiIndex& b, size_t m, size_t n) {
    Poly acc(N);
    for (size_t l = 0; l < q; ++l)
      for (size_t al = 0; al < N; ++al) acc += T(al, b[p + l], n) * D.at(extend(with(b, p + l, al), {m}));
    return acc;
  });
  push("T(a,m,n)a|(..,a)", "L⌄^α_{mn} a_{…|α}", [&](const MultiIndex& b, size_t m, size_t n) {
    Poly acc(N);
    for (size_t al = 0; al < N; ++al) acc += T(al, m, n) * D.at(extend(b, {al}));
    return acc;
  });

  // Σ_k a^{…α…} times each summand of the upper block.
  auto upper = [&](std::string id, std::string formula, auto&& inner) {
    push(std::move(id), std::move(formula), [&](const MultiIndex& b, size_t m, size_t n) {
      Poly acc(N);
      for (size_t k = 0; k < p; ++k)
        for (size_t al = 0; al < N; ++al) acc += A.at(with(b, k, al)) * inner(b[k], al, m, n);
      return acc;
    });
  };
  upper("sum_k a(..a..)R(i_k,a,m,n)", "Σ_k a^{…α…} R^{i_k}_{αmn}",
        [&](size_t i, size_t al, size_t m, size_t n) { return R(i, al, m, n); });
  upper("sum_k a(..a..)dT(i_k,a,m,n)", "Σ_k a^{…α…} L⌄^{i_k}_{αm|n}",
        [&](size_t i, size_t al, size_t m, size_t n) { return dT(i, al, m, n); });
  upper("sum_k a(..a..)dT(i_k,a,n,m)", "Σ_k a^{…α…} L⌄^{i_k}_{αn|m}",
        [&](size_t i, size_t al, size_t m, size_t n) { return dT(i, al, n, m); });
  upper("sum_k a(..a..)T(b,a,m)T(i_k,b,n)", "Σ_k a^{…α…} L⌄^β_{αm} L⌄^{i_k}_{βn}", [&](size_t i, size_t al, size_t m, size_t n) {
    return sum1(N, [&](size_t be) { return T(be, al, m) * T(i, be, n); });
  });
  upper("sum_k a(..a..)T(b,a,n)T(i_k,b,m)", "Σ_k a^{…α…} L⌄^β_{αn} L⌄^{i_k}_{βm}", [&](size_t i, size_t al, size_t m, size_t n) {
    return sum1(N, [&](size_t be) { return T(be, al, n) * T(i, be, m); });
  });
  upper("sum_k a(..a..)T(b,m,n)T(i_k,b,a)", "Σ_k a^{…α…} L⌄^β_{mn} L⌄^{i_k}_{βα}", [&](size_t i, size_t al, size_t m, size_t n) {
    return sum1(N, [&](size_t be) { return T(be, m, n) * T(i, be, al); });
  });

  // −Σ_l a_{…α…} times each summand of the lower block.
  auto lower = [&](std::string id, std::string formula, auto&& inner) {
    push(std::move(id), std::move(formula), [&](const MultiIndex& b, size_t m, size_t n) {
      Poly acc(N);
      for (size_t l = 0; l < q; ++l)
        for (size_t al = 0; al < N; ++al) acc -= A.at(with(b, p + l, al)) * inner(al, b[p + l], m, n);
      return acc;
    });
  };
  lower("-sum_l a(..a..)R(a,j_l,m,n)", "−Σ_l a_{…α…} R^α_{j_l mn}",
        [&](size_t al, size_t j, size_t m, size_t n) { return R(al, j, m, n); });
  lower("-sum_l a(..a..)dT(a,j_l,m,n)", "−Σ_l a_{…α…} L⌄^α_{j_l m|n}",
        [&](size_t al, size_t j, size_t m, size_t n) { return dT(al, j, m, n); });
  lower("-sum_l a(..a..)dT(a,j_l,n,m)", "−Σ_l a_{…α…} L⌄^α_{j_l n|m}",
        [&](size_t al, size_t j, size_t m, size_t n) { return dT(al, j, n, m); });
  lower("-sum_l a(..a..)T(b,j_l,m)T(a,b,n)", "−Σ_l a_{…α…} L⌄^β_{j_l m} L⌄^α_{βn}", [&](size_t al, size_t j, size_t m, size_t n) {
    return sum1(N, [&](size_t be) { return T(be, j, m) * T(al, be, n); });
  });
  lower("-sum_l a(..a..)T(b,j_l,n)T(a,b,m)", "−Σ_l a_{…α…} L⌄^β_{j_l n} L⌄^α_{βm}", [&](size_t al, size_t j, size_t m, size_t n) {
    return sum1(N, [&](size_t be) { return T(be, j, n) * T(al, be, m); });
  });
  lower("-sum_l a(..a..)T(b,m,n)T(a,b,j_l)", "−Σ_l a_{…α…} L⌄^β_{mn} L⌄^α_{βj_l}", [&](size_t al, size_t j, size_t m, size_t n) {
    return sum1(N, [&](size_t be) { return T(be, m, n) * T(al, be, j); });
  });

  // Mixed block: a^{…α(k)…}_{…β(l)…} R³^{β i_k}_{α j_l mn}.
  auto mixed = [&](std::string id, std::string formula, bool m_first) {
    push(std::move(id), std::move(formula), [&, m_first](const MultiIndex& b, size_t m, size_t n) {
      const size_t s = m_first ? m : n, t = m_first ? n : m;
      Poly acc(N);
      for (size_t k = 0; k < p; ++k)
        for (size_t l = 0; l < q; ++l)
          for (size_t al = 0; al < N; ++al)
            for (size_t be = 0; be < N; ++be)
              acc += A.at(with(b, k, al, p + l, be)) * (T(be, b[p + l], s) * T(b[k], al, t));
      return acc;
    });
  };
  mixed("sum_kl a(..a..)(..b..)T(b,j_l,m)T(i_k,a,n)", "Σ_k Σ_l a^{…α…}_{…β…} L⌄^β_{j_l m} L⌄^{i_k}_{αn}", true);
  mixed("sum_kl a(..a..)(..b..)T(b,j_l,n)T(i_k,a,m)", "Σ_k Σ_l a^{…α…}_{…β…} L⌄^β_{j_l n} L⌄^{i_k}_{αm}", false);

  // Quadratic double sums over distinct slot pairs of the same kind.
  push("sum_k!=K T(i_k,a,m)T(i_K,b,n)a(..a..b..)", "Σ_{k≠κ} L⌄^{i_k}_{αm} L⌄^{i_κ}_{βn} a^{…α(k)…β(κ)…}",
       [&](const MultiIndex& b, size_t m, size_t n) {
         Poly acc(N);
         for (size_t k = 0; k < p; ++k)
           for (size_t kk = 0; kk < p; ++kk) {
             if (k == kk) continue;
             for (size_t al = 0; al < N; ++al)
               for (size_t be = 0; be < N; ++be) acc += (T(b[k], al, m) * T(b[kk], be, n)) * A.at(with(b, k, al, kk, be));
           }
         return acc;
       });
  push("sum_l!=L T(b,j_L,n)T(a,j_l,m)a(..a..b..)", "Σ_{l≠ℓ} L⌄^β_{j_ℓ n} L⌄^α_{j_l m} a_{…α(l)…β(ℓ)…}",
       [&](const MultiIndex& b, size_t m, size_t n) {
         Poly acc(N);
         for (size_t l = 0; l < q; ++l)
           for (size_t ll = 0; ll < q; ++ll) {
             if (l == ll) continue;
             for (size_t al = 0; al < N; ++al)
               for (size_t be = 0; be < N; ++be)
                 acc += (T(be, b[p + ll], n) * T(al, b[p + l], m)) * A.at(with(b, p + l, al, p + ll, be));
           }
         return acc;
       });
  return out;
}

TensorField proof_lhs(const Workspace& ws, IdentityId which, const RhoWeights& weights) {
  require_11(ws);
  const auto basis = second_family_basis(ws, weights);
  switch (which) {
    case IdentityId::ProofX: return basis[0].value;
    case IdentityId::ProofY: return basis[1].value;
    case IdentityId::ProofZ: return basis[2].value;
    case IdentityId::ProofU: return basis[3].value;
    case IdentityId::ProofV: return basis[4].value;
    default: throw ParameterError("not a proof-expansion identity");
  }
}

std::vector<Term> proof_basis(const Workspace& ws, IdentityId which) {
  require_11(ws);
  const size_t N = ws.dim();
  const TensorField& a = ws.field();
  const TensorField& T = ws.connection().torsion();
  const TensorField& d0 = ws.derivative(Kind(0));
  std::vector<Term> out;
  auto term = [&](std::string id, std::string formula, auto&& f) {
    out.push_back(make_term(std::move(id), std::move(formula), field13(N, [&](size_t i, size_t j, size_t m, size_t n) {
                              return sum2(N, [&](size_t al, size_t be) { return f(i, j, m, n, al, be); });
                            })));
  };
  // The first term of each expansion carries a single sum; the β loop runs
  // once through be == 0 only.
  switch (which) {
    case IdentityId::ProofX:
      term("T(i,a,m)a|(a,j,n)", "L⌄^i_{αm} a^α_{j|n}", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return be == 0 ? T(i, al, m) * d0(al, j, n) : Poly(N);
      });
      term("T(i,b,m)T(b,a,n)a(a,j)", "L⌄^i_{βm} L⌄^β_{αn} a^α_j", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return T(i, be, m) * T(be, al, n) * a(al, j);
      });
      term("T(i,a,m)T(b,j,n)a(a,b)", "L⌄^i_{αm} L⌄^β_{jn} a^α_β", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return T(i, al, m) * T(be, j, n) * a(al, be);
      });
      break;
    case IdentityId::ProofY:
      term("T(i,a,n)a|(a,j,m)", "L⌄^i_{αn} a^α_{j|m}", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return be == 0 ? T(i, al, n) * d0(al, j, m) : Poly(N);
      });
      term("T(i,b,n)T(b,a,m)a(a,j)", "L⌄^i_{βn} L⌄^β_{αm} a^α_j", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return T(i, be, n) * T(be, al, m) * a(al, j);
      });
      term("T(i,a,n)T(b,j,m)a(a,b)", "L⌄^i_{αn} L⌄^β_{jm} a^α_β", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return T(i, al, n) * T(be, j, m) * a(al, be);
      });
      break;
    case IdentityId::ProofZ:
      term("T(a,j,m)a|(i,a,n)", "L⌄^α_{jm} a^i_{α|n}", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return be == 0 ? T(al, j, m) * d0(i, al, n) : Poly(N);
      });
      term("T(b,j,m)T(i,a,n)a(a,b)", "L⌄^β_{jm} L⌄^i_{αn} a^α_β", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return T(be, j, m) * T(i, al, n) * a(al, be);
      });
      term("T(b,j,m)T(a,b,n)a(i,a)", "L⌄^β_{jm} L⌄^α_{βn} a^i_α", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return T(be, j, m) * T(al, be, n) * a(i, al);
      });
      break;
    case IdentityId::ProofU:
      term("T(a,j,n)a|(i,a,m)", "L⌄^α_{jn} a^i_{α|m}", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return be == 0 ? T(al, j, n) * d0(i, al, m) : Poly(N);
      });
      term("T(b,j,n)T(i,a,m)a(a,b)", "L⌄^β_{jn} L⌄^i_{αm} a^α_β", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return T(be, j, n) * T(i, al, m) * a(al, be);
      });
      term("T(b,j,n)T(a,b,m)a(i,a)", "L⌄^β_{jn} L⌄^α_{βm} a^i_α", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return T(be, j, n) * T(al, be, m) * a(i, al);
      });
      break;
    case IdentityId::ProofV:
      term("T(a,m,n)a|(i,j,a)", "L⌄^α_{mn} a^i_{j|α}", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return be == 0 ? T(al, m, n) * d0(i, j, al) : Poly(N);
      });
      term("T(b,m,n)T(i,a,b)a(a,j)", "L⌄^β_{mn} L⌄^i_{αβ} a^α_j", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return T(be, m, n) * T(i, al, be) * a(al, j);
      });
      term("T(b,m,n)T(a,b,j)a(i,a)", "L⌄^β_{mn} L⌄^α_{βj} a^i_α", [&](size_t i, size_t j, size_t m, size_t n, size_t al, size_t be) {
        return T(be, m, n) * T(al, be, j) * a(i, al);
      });
      break;
    default: throw ParameterError("not a proof-expansion identity");
  }
  return out;
}

}  // namespace riccitype
