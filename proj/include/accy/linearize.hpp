#pragma once

// Linearization of finite cyclic automorphism groups fixing a hyperplane
// section: averaging map on jets, block diagonalization via the linear system
// (lambda_i - d) r_i = c_i, the finite-order growth obstruction, and the
// adapted-atlas cocycle identity.

#include "accy/poly.hpp"

#include <complex>
#include <optional>

namespace accy {

using GMat = std::vector<std::vector<GRat>>;

GMat gmat_identity(int n);
GMat gmat_mul(const GMat& a, const GMat& b);
GMat gmat_pow(const GMat& a, long k);
bool gmat_equal(const GMat& a, const GMat& b);
GMat gmat_inverse(const GMat& a);

struct CyclicRep {
  GMat a;        // generator
  long order;    // claimed order m

  int dim() const { return int(a.size()); }
  void validate() const;  // A^m = Id and last row (0..0,d); throws
  GRat d() const { return a.back().back(); }
};

// rows of comma-separated Gaussian rationals a+b*i (or a, a+i, -i, 3/2-1/2*i)
CyclicRep parse_matrix(const std::string& text);
CyclicRep load_matrix_file(const std::string& path);

struct BlockDiagResult {
  GMat r;             // conjugator, hyperplane-preserving
  GMat normal_form;   // r * a * r^{-1}, block diagonal
  bool used_gram_schmidt = false;  // non-diagonal block handled via the averaged form
  long block_order = 0;            // smallest k with B^k = Id
};

BlockDiagResult block_diagonalize(const CyclicRep& rep);

// group-averaged Hermitian form H = (1/m) sum (B^k)^* B^k
GMat averaged_hermitian_form(const GMat& b, long order);
// square-root-free LDL^* split of a positive Hermitian H: returns T with
// T^* H T diagonal (unit upper-triangular T)
GMat ldl_gram_schmidt(const GMat& h);

struct GrowthReport {
  struct Entry {
    int index;                    // offending i with lambda_i = d, c_i != 0
    std::vector<double> magnitudes;  // |(A^k)_{i,n}| for k = 1..kmax
    double slope;                 // |c_i| (growth per step)
    bool slope_exact;             // slope^2 was an exact rational square
  };
  std::vector<Entry> entries;     // empty iff A has finite order
};

// requires the normal form (diagonal block + last column)
GrowthReport finite_order_obstruction(const CyclicRep& rep, int kmax);

// --- jets -------------------------------------------------------------------

// polynomial self-map of C^n fixing 0, truncated at total degree <= jet_order
struct PolyGerm {
  int n = 0;
  int jet_order = 4;
  std::vector<Poly> components;  // n polynomials in n variables

  void validate() const;  // linear part invertible, fixes 0, preserves z_n = 0
  GMat linear_part() const;
  PolyGerm truncated(int order) const;
};

PolyGerm germ_from_matrix(const GMat& m, int jet_order);
// composition f(g(z)) truncated to the jet order
PolyGerm compose(const PolyGerm& f, const PolyGerm& g);
bool germ_equal(const PolyGerm& a, const PolyGerm& b);

// sigma = (1/|G|) sum (d gamma)^{-1} o gamma ; verifies d sigma = Id and the
// equivariance sigma o gamma = d gamma o sigma to the jet order
struct AverageJetResult {
  PolyGerm sigma;
  bool equivariant = false;
};
AverageJetResult average_jet(const std::vector<PolyGerm>& group, int jet_order);

struct CocycleResult {
  double residual = 0;        // max coefficient magnitude of the defect polynomials
  bool identity_holds = false;  // residual exactly zero
};

// Verifies, on the hyperplane z_n = 0:
//   sum_{i<n} (gA)_{ji} dF^i/dz_n = (gB)_{nn} (dF^j/dz_n) o gB   (j < n)
//   sum_{i<n} (gA)_{ni} dF^i/dz_n = 0                            (j = n)
// after first checking the equivariance F o gB = gA o F (NotEquivariant).
CocycleResult abt_cocycle_check(const PolyGerm& f, const CyclicRep& ga, const CyclicRep& gb);

}  // namespace accy
