#include "ahres/gz.hpp"

namespace ahres {

namespace {

void check_jet(const WarpedMetricJet& m) {
    if (m.n < 1) throw invalid_jet("boundary dimension must be >= 1");
    if (m.w.coeff(0) != 1) throw invalid_jet("warped jet must have w(0) = 1");
}

// Lift a scalar series to operator coefficients.
OpSeries lift(const RatSeries& s) {
    OpSeries r(s.order());
    for (int j = 0; j <= s.order(); ++j) r.coeff(j) = BoundaryOp(RatFunc(s.coeff(j)));
    return r;
}

RatFunc lambda_poly() { return RatFunc::lambda(); }

} // namespace

EvennessOrder evenness_order(const WarpedMetricJet& m) {
    check_jet(m);
    for (int j = 1; j <= m.w.order(); j += 2) {
        if (m.w.coeff(j) != 0) return {false, (j - 1) / 2};
    }
    return {true, m.w.order()};
}

RatSeries trace_term(const WarpedMetricJet& m) {
    check_jet(m);
    if (m.w.order() < 1) throw invalid_jet("trace term needs order >= 1");
    return BigRat(m.n) * (m.w.derivative() * m.w.reciprocal());
}

OpSeries apply_D_lambda(const WarpedMetricJet& m, const OpSeries& F) {
    check_jet(m);
    const RatFunc lam = lambda_poly();
    const int n = m.n;

    OpSeries tau_x = lift(trace_term(m)).shifted_up(1); // x * tau, order M
    OpSeries winv = lift(m.w.reciprocal());

    OpSeries E1 = F.x_derivative();
    // -x^2 d^2/dx^2 + (2 lambda - n - 1) x d/dx collapses to
    // -(x d/dx)^2 + (2 lambda - n) x d/dx on monomials.
    BoundaryOp diag(RatFunc(2) * lam - RatFunc(n));
    OpSeries out = -(E1.x_derivative());
    OpSeries lin(E1.order());
    for (int j = 0; j <= E1.order(); ++j) lin.coeff(j) = diag * E1.coeff(j);
    out += lin;

    BoundaryOp half_op(RatFunc(BigRat(1, 2)));
    BoundaryOp nm_half((RatFunc(n) - lam) * RatFunc(BigRat(1, 2)));
    OpSeries t3 = tau_x * E1;
    for (int j = 0; j <= t3.order(); ++j) t3.coeff(j) = half_op * t3.coeff(j);
    OpSeries t4 = tau_x * F;
    for (int j = 0; j <= t4.order(); ++j) t4.coeff(j) = nm_half * t4.coeff(j);
    out -= t3;
    out -= t4;

    OpSeries LF(F.order());
    const BoundaryOp Lop = BoundaryOp::L();
    for (int j = 0; j <= F.order(); ++j) LF.coeff(j) = Lop * F.coeff(j);
    out += (winv * LF).shifted_up(2);
    return out;
}

GZSolution gz_solve(const WarpedMetricJet& m, int M) {
    check_jet(m);
    if (M < 1) throw invalid_jet("solve order must be >= 1");
    if (m.w.order() < M) throw invalid_jet("jet truncation order below solve order");

    WarpedMetricJet mt{m.n, m.w.truncated(M)};
    const RatFunc lam = lambda_poly();

    OpSeries F(M);
    F.coeff(0) = BoundaryOp::identity();
    for (int j = 1; j <= M; ++j) {
        OpSeries D = apply_D_lambda(mt, F);
        BoundaryOp rhs = D.coeff(j);
        // j (2 lambda - n - j)
        RatFunc denom = RatFunc(j) * (RatFunc(2) * lam - RatFunc(m.n + j));
        F.coeff(j) = (-rhs) / denom;
    }

    // Self-consistency: the equation holds through order M identically in
    // lambda and L.
    OpSeries D = apply_D_lambda(mt, F);
    for (int j = 0; j <= M; ++j) {
        if (!D.coeff(j).is_zero()) throw ring_error("formal solution failed self-check");
    }

    GZSolution sol;
    sol.n = m.n;
    sol.M = M;
    sol.F = F;
    sol.p.assign(F.coeffs().begin(), F.coeffs().end());
    return sol;
}

ResidueReport scattering_residues(const WarpedMetricJet& m, int k) {
    check_jet(m);
    if (k < 0) throw invalid_jet("k must be >= 0");
    EvennessOrder ev = evenness_order(m);
    if (!ev.infinite && ev.k < k)
        throw not_even_enough("jet has a nonzero odd coefficient below order 2k+1");
    const int M = 2 * k + 3;
    if (m.w.order() < M) throw invalid_jet("need jet order >= 2k+3 for residues");

    GZSolution sol = gz_solve(m, M);
    const int n = m.n;
    ResidueReport rep;
    rep.n = n;
    rep.k = k;
    rep.c = m.w.coeff(2 * k + 1);
    rep.K = BigRat(n) * rep.c;

    for (int l = 0; l <= k + 1; ++l) {
        BigRat lambda_l = BigRat(n + 1 + 2 * l, 2);
        ResidueEntry e;
        e.l = l;
        e.lambda_l = lambda_l;
        e.op = sol.p[2 * l + 1].residue_at(lambda_l);
        rep.entries.push_back(std::move(e));
    }

    rep.odd_below_k_vanish = true;
    for (int l = 0; l < k; ++l) {
        if (!rep.entries[l].op.is_zero()) rep.odd_below_k_vanish = false;
    }

    BigRat lambda_k = BigRat(n + 1 + 2 * k, 2);
    rep.expected_scalar = (BigRat(n) - lambda_k) * rep.K / 4;
    {
        const BoundaryOp& got = rep.entries[k].op;
        rep.scalar_matches =
            got == BoundaryOp(RatFunc(rep.expected_scalar));
    }

    {
        const BoundaryOp& got = rep.entries[k + 1].op;
        RatFunc lc = got.coefficient(1);
        rep.L_coeff = lc.is_zero() ? BigRat(0) : lc.eval(BigRat(0));
        if (!lc.is_polynomial() || lc.num().degree() > 0)
            throw ring_error("residue L coefficient is not constant");
        rep.expected_L_coeff =
            -rep.c * (BigRat(n) * (BigRat(n) - lambda_k) - 2) / BigRat(4 * (2 * k + 3));
        rep.L_matches = rep.L_coeff == rep.expected_L_coeff;
    }
    rep.principal_part_vanishes = (BigRat(n) * (BigRat(n) - lambda_k) == 2);
    return rep;
}

} // namespace ahres
