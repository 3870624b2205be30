#include "invlim/abelian.hpp"

#include <sstream>

#include "invlim/error.hpp"

namespace invlim {

namespace {

/// Reduce v against a Hermite row basis; true iff v reduces to zero.
bool hnf_contains(const IntMatrix& hnf, IntVector v) {
  std::size_t col = 0;
  for (std::size_t r = 0; r < hnf.rows(); ++r) {
    while (col < hnf.cols() && hnf(r, col) == 0) {
      if (v[col] != 0) return false;
      ++col;
    }
    const BigInt& pivot = hnf(r, col);
    if (v[col] % pivot != 0) return false;
    BigInt q = v[col] / pivot;
    for (std::size_t c = col; c < hnf.cols(); ++c) v[c] -= q * hnf(r, c);
    ++col;
  }
  for (; col < v.size(); ++col) {
    if (v[col] != 0) return false;
  }
  return true;
}

}  // namespace

FgAbGroup::FgAbGroup(std::size_t ngens, IntMatrix relations)
    : ngens_(ngens), relations_(std::move(relations)) {
  if (relations_.rows() == 0 && relations_.cols() != ngens_) relations_ = IntMatrix(0, ngens_);
  if (relations_.cols() != ngens_) {
    throw Error(ErrorKind::DimensionMismatch, "relations have " + std::to_string(relations_.cols()) +
                                                  " columns for " + std::to_string(ngens_) + " generators");
  }
  basis_ = row_lattice_basis(relations_);
}

FgAbGroup FgAbGroup::free(std::size_t rank) { return FgAbGroup(rank, IntMatrix(0, rank)); }

FgAbGroup FgAbGroup::cyclic(long long order) { return diagonal({order}); }

FgAbGroup FgAbGroup::diagonal(const std::vector<long long>& orders) {
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] == 0) continue;
    IntVector r(orders.size());
    r[i] = orders[i];
    rows.push_back(std::move(r));
  }
  return FgAbGroup(orders.size(), IntMatrix::from_rows(rows, orders.size()));
}

bool FgAbGroup::is_zero(const IntVector& x) const {
  if (x.size() != ngens_) throw Error(ErrorKind::DimensionMismatch, "element has the wrong length");
  return hnf_contains(basis_, x);
}

bool FgAbGroup::equal(const IntVector& x, const IntVector& y) const {
  IntVector d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return is_zero(d);
}

FgAbGroup direct_sum(const std::vector<FgAbGroup>& parts) {
  std::size_t gens = 0, rels = 0;
  for (const auto& p : parts) {
    gens += p.ngens();
    rels += p.relations().rows();
  }
  IntMatrix r(rels, gens);
  std::size_t row = 0, col = 0;
  for (const auto& p : parts) {
    r.set_block(row, col, p.relations());
    row += p.relations().rows();
    col += p.ngens();
  }
  return FgAbGroup(gens, std::move(r));
}

std::string GroupInvariants::to_string() const {
  std::ostringstream os;
  os << "free rank " << free_rank << ", torsion [";
  for (std::size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i];
  os << ']';
  return os.str();
}

GroupInvariants group_invariants(const FgAbGroup& g) {
  GroupInvariants inv;
  auto f = smith_normal_form(g.relations());
  inv.free_rank = g.ngens() - f.rank;
  for (const auto& d : f.diagonal()) {
    if (d > 1) inv.torsion.push_back(d);
  }
  return inv;
}

bool isomorphic(const FgAbGroup& a, const FgAbGroup& b) { return group_invariants(a) == group_invariants(b); }

AbHom::AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 && matrix_.cols() == 0) matrix_ = IntMatrix(target_.ngens(), source_.ngens());
  if (matrix_.rows() != target_.ngens() || matrix_.cols() != source_.ngens()) {
    throw Error(ErrorKind::DimensionMismatch, "hom matrix must be " + std::to_string(target_.ngens()) + "x" +
                                                  std::to_string(source_.ngens()));
  }
  for (std::size_t r = 0; r < source_.relations().rows(); ++r) {
    if (!target_.is_zero(matrix_ * source_.relations().row(r))) {
      throw Error(ErrorKind::InvalidHom, "relator " + std::to_string(r) + " of the source is not sent to zero");
    }
  }
}

AbHom AbHom::zero(const FgAbGroup& source, const FgAbGroup& target) {
  return AbHom(source, target, IntMatrix(target.ngens(), source.ngens()));
}

AbHom AbHom::identity(const FgAbGroup& g) { return AbHom(g, g, IntMatrix::identity(g.ngens())); }

AbHom compose(const AbHom& g, const AbHom& f) {
  if (!(f.target() == g.source())) {
    throw Error(ErrorKind::DimensionMismatch, "composition of homs with mismatched groups");
  }
  return AbHom(f.source(), g.target(), g.matrix() * f.matrix());
}

bool same_map(const AbHom& f, const AbHom& g) {
  if (f.matrix().rows() != g.matrix().rows() || f.matrix().cols() != g.matrix().cols()) return false;
  IntMatrix diff = f.matrix() - g.matrix();
  for (std::size_t c = 0; c < diff.cols(); ++c) {
    if (!f.target().is_zero(diff.column(c))) return false;
  }
  return true;
}

bool is_zero_map(const AbHom& f) {
  for (std::size_t c = 0; c < f.matrix().cols(); ++c) {
    if (!f.target().is_zero(f.matrix().column(c))) return false;
  }
  return true;
}

IntMatrix kernel_lattice(const AbHom& f) {
  const std::size_t a = f.source().ngens();
  // (x, y) with M x - R^T y = 0, projected to x.
  IntMatrix rt = f.target().relations().transposed();
  for (std::size_t r = 0; r < rt.rows(); ++r) {
    for (std::size_t c = 0; c < rt.cols(); ++c) rt(r, c) = -rt(r, c);
  }
  IntMatrix joint = hstack(f.matrix(), rt);
  IntMatrix k = integer_kernel(joint);
  return row_lattice_basis(k.block(0, 0, k.rows(), a));
}

FgAbGroup subquotient(const IntMatrix& sub_basis, const IntMatrix& quotient) {
  IntMatrix rel(quotient.rows(), sub_basis.rows());
  for (std::size_t r = 0; r < quotient.rows(); ++r) {
    auto coords = lattice_coordinates(sub_basis, quotient.row(r));
    if (!coords) throw Error(ErrorKind::InvalidHom, "quotient lattice is not contained in the subgroup");
    for (std::size_t c = 0; c < coords->size(); ++c) rel(r, c) = (*coords)[c];
  }
  return FgAbGroup(sub_basis.rows(), std::move(rel));
}

FgAbGroup hom_kernel(const AbHom& f) { return subquotient(kernel_lattice(f), f.source().relations()); }

FgAbGroup hom_image(const AbHom& f) { return FgAbGroup(f.source().ngens(), kernel_lattice(f)); }

FgAbGroup hom_cokernel(const AbHom& f) {
  return FgAbGroup(f.target().ngens(), vstack(f.target().relations(), f.matrix().transposed()));
}

bool is_injective(const AbHom& f) { return group_invariants(hom_kernel(f)).trivial(); }

bool is_surjective(const AbHom& f) { return group_invariants(hom_cokernel(f)).trivial(); }

bool in_row_lattice(const IntMatrix& generators, const IntVector& v) {
  return hnf_contains(row_lattice_basis(generators), v);
}

ExactnessReport is_exact_at(const AbHom& f, const AbHom& g) {
  if (!(f.target() == g.source())) {
    throw Error(ErrorKind::DimensionMismatch, "target of f is not the source of g");
  }
  ExactnessReport report;
  report.composition_zero = is_zero_map(compose(g, f));
  IntMatrix image_lattice = row_lattice_basis(vstack(f.matrix().transposed(), f.target().relations()));
  IntMatrix ker = kernel_lattice(g);
  report.kernel_in_image = true;
  for (std::size_t r = 0; r < ker.rows() && report.kernel_in_image; ++r) {
    report.kernel_in_image = hnf_contains(image_lattice, ker.row(r));
  }
  return report;
}

}  // namespace invlim
