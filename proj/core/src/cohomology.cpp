#include "arithbar/cohomology.hpp"

#include "arithbar/error.hpp"

namespace arithbar {

namespace {

DvrMatrix coordinate_selector(const Ring& ring, std::size_t n, std::size_t first, std::size_t last) {
  DvrMatrix e(ring, n, n);
  for (std::size_t i = first; i < last && i < n; ++i) e.set_raw(i, i, 1 % ring.modulus());
  return e;
}

}  // namespace

ProjectorTriple projectors(const SnfResult& snf) {
  const Ring& ring = snf.D.ring();
  const std::size_t n0 = snf.V.rows(), n1 = snf.U.rows();
  const DvrMatrix e0 = coordinate_selector(ring, n0, snf.rank, n0);
  const DvrMatrix e1 = coordinate_selector(ring, n1, 0, snf.rank);
  ProjectorTriple out{snf.V * e0 * snf.V_inverse, snf.U_inverse * e1 * snf.U, DvrMatrix(ring, n1, n1),
                      snf.precision_limited()};
  out.free = DvrMatrix::identity(ring, n1) - out.saturation;
  return out;
}

std::vector<Valuation> saturation_quotient(const DvrMatrix& delta, const SnfResult& snf) {
  const Ring& ring = delta.ring();
  const DvrMatrix ud = snf.U * delta;
  for (std::size_t i = snf.rank; i < ud.rows(); ++i)
    for (std::size_t j = 0; j < ud.cols(); ++j)
      if (ud.raw(i, j) != 0) throw Error(ErrorCode::ShapeMismatch, "Smith form does not belong to this matrix");
  DvrMatrix block(ring, snf.rank, ud.cols());
  for (std::size_t i = 0; i < snf.rank; ++i)
    for (std::size_t j = 0; j < ud.cols(); ++j) block.set_raw(i, j, ud.raw(i, j));
  std::vector<Valuation> out;
  for (const Valuation& a : smith_normal_form(block).exponents)
    if (!a.is_censored() && a.value() >= 1) out.push_back(a);
  return out;
}

bool reduction_commutes_check(const ProjectorTriple& p, int k) {
  for (const DvrMatrix* m : {&p.kernel, &p.saturation, &p.free}) {
    const DvrMatrix reduced = reduce_mod(*m, k);
    const Ring& small = reduced.ring();
    for (std::size_t j = 0; j < m->cols(); ++j) {
      Vector basis(m->cols(), 0);
      basis[j] = 1 % small.modulus();
      const Vector lhs = reduced.apply(basis);
      basis[j] = 1 % m->ring().modulus();
      const Vector full = m->apply(basis);
      for (std::size_t i = 0; i < full.size(); ++i)
        if (lhs[i] != full[i] % small.modulus()) return false;
    }
    if (!(reduced * reduced == reduced)) return false;
  }
  return true;
}

bool in_saturation(const SnfResult& snf, std::span<const Residue> w) {
  const Vector uw = snf.U.apply(w);
  for (std::size_t i = snf.rank; i < uw.size(); ++i)
    if (uw[i] != 0) return false;
  return true;
}

bool in_image(const SnfResult& snf, std::span<const Residue> w) {
  const Ring& ring = snf.D.ring();
  const Vector uw = snf.U.apply(w);
  for (std::size_t i = 0; i < uw.size(); ++i) {
    if (i >= snf.rank) {
      if (uw[i] != 0) return false;
    } else if (ring.valuation(uw[i]) < snf.exponents[i].value()) {
      return false;
    }
  }
  return true;
}

CohomologySummary compute_cohomology(const SnfResult& snf) {
  CohomologySummary out;
  const std::size_t n0 = snf.V.rows(), n1 = snf.U.rows();
  out.h0_rank = n0 - snf.rank;
  for (std::size_t j = snf.rank; j < n0; ++j) out.h0_basis.push_back(snf.V.col(j));
  out.h1_free_rank = n1 - snf.rank;
  for (std::size_t i = snf.rank; i < n1; ++i) out.h1_free_basis.push_back(snf.U_inverse.col(i));
  out.h1_torsion = cokernel_structure(snf, n1).torsion_exponents;
  out.precision_limited = snf.precision_limited();
  return out;
}

CohomologySummary compute_cohomology(const DvrMatrix& delta) {
  return compute_cohomology(smith_normal_form(delta));
}

}  // namespace arithbar
