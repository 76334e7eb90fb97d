#pragma once

#include "ahres/boundary_op.hpp"
#include "ahres/xseries.hpp"

#include <vector>

namespace ahres {

// Boundary jet of a warped product: the conformal representative is
// h(x) = w(x) h0 with w a truncated power series, w(0) = 1.  n is the
// boundary dimension.
struct WarpedMetricJet {
    int n = 2;
    RatSeries w = RatSeries::constant(BigRat(1), 0);
};

struct invalid_jet : ring_error {
    using ring_error::ring_error;
};
struct not_even_enough : ring_error {
    using ring_error::ring_error;
};

// Largest k such that the jet is even modulo O(x^{2k+1}), i.e. all odd
// coefficients strictly below order 2k+1 vanish.  infinite means no odd
// coefficient survives up to the truncation order.
struct EvennessOrder {
    bool infinite = false;
    int k = 0;
};

EvennessOrder evenness_order(const WarpedMetricJet& m);

// n * w'/w truncated at order M-1, the trace of h^{-1} dh/dx for h = w h0.
RatSeries trace_term(const WarpedMetricJet& m);

using OpSeries = XSeries<BoundaryOp>;

// Indicial family of the conjugated Laplacian acting on series in x whose
// coefficients are polynomials in the boundary Laplacian slot L:
//   -x^2 d^2/dx^2 + (2 lambda - n - 1) x d/dx
//   - (x/2) tau(x) (x d/dx + (n - lambda)) + (x^2 / w) L
// with tau = n w'/w.  The spectral parameter stays symbolic; monomials x^j
// pick up the diagonal factor j (2 lambda - n - j).
OpSeries apply_D_lambda(const WarpedMetricJet& m, const OpSeries& F);

// Order-by-order solution of apply_D_lambda(F) = O(x^{M+1}) with F_0 = Id:
//   p[j] = -coeff_j(D(F_{j-1})) / (j (2 lambda - n - j)).
struct GZSolution {
    int n = 0;
    int M = 0;
    std::vector<BoundaryOp> p; // p[0] = Id, p[j] the x^j coefficient
    OpSeries F;                // the assembled series
};

GZSolution gz_solve(const WarpedMetricJet& m, int M);

// Residues of the formal solution coefficients at the half-integer points
// lambda_l = (n+1)/2 + l, plus the exact identities they must satisfy.
struct ResidueEntry {
    int l = 0;
    BigRat lambda_l;
    BoundaryOp op; // residue of p_{2l+1,lambda} at lambda_l; constant coefficients
};

struct ResidueReport {
    int n = 0;
    int k = 0;
    BigRat c;                         // leading odd coefficient w_{2k+1}
    BigRat K;                         // n * c, trace of the first odd jet
    std::vector<ResidueEntry> entries; // l = 0 .. k+1
    bool odd_below_k_vanish = false;  // p_{2l+1} = 0 for l < k
    BigRat expected_scalar;           // (n - lambda_k) K / 4
    bool scalar_matches = false;      // entry l=k is that scalar times Id
    BigRat L_coeff;                   // degree-1 coefficient of entry l=k+1
    BigRat expected_L_coeff;          // -c (n(n-lambda_k) - 2) / (4(2k+3))
    bool L_matches = false;
    bool principal_part_vanishes = false; // n(n-lambda_k) == 2
};

// Requires the jet even modulo O(x^{2k+1}) and truncation order >= 2k+3.
ResidueReport scattering_residues(const WarpedMetricJet& m, int k);

} // namespace ahres
