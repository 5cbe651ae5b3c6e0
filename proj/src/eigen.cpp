#include "spinlab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

double off_diagonal_norm(const DenseMat& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            if (i != j) s += std::norm(m.at(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a_pq. The pivot a_pq = |a_pq| e^{i phi}
// is first de-phased by diag(1, e^{-i phi}), then rotated by the standard
// real Jacobi angle. A <- J^dag A J, Q <- Q J, with
//   J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
// in the (p, q) plane.
void jacobi_rotate(DenseMat& a, DenseMat& q, std::size_t p, std::size_t r) {
    const cxd apq = a.at(p, r);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const cxd eiphi = apq / mag;
    const double tau = (a.at(r, r).real() - a.at(p, p).real()) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                     (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = a.n;
    // rows p, r: A <- J^dag A
    for (std::size_t j = 0; j < n; ++j) {
        const cxd ap = a.at(p, j);
        const cxd ar = a.at(r, j);
        a.at(p, j) = c * ap - s * eiphi * ar;
        a.at(r, j) = s * ap + c * eiphi * ar;
    }
    // columns p, r: A <- A J
    for (std::size_t i = 0; i < n; ++i) {
        const cxd ap = a.at(i, p);
        const cxd ar = a.at(i, r);
        a.at(i, p) = c * ap - s * std::conj(eiphi) * ar;
        a.at(i, r) = s * ap + c * std::conj(eiphi) * ar;
    }
    for (std::size_t i = 0; i < q.n; ++i) {
        const cxd qp = q.at(i, p);
        const cxd qr = q.at(i, r);
        q.at(i, p) = c * qp - s * std::conj(eiphi) * qr;
        q.at(i, r) = s * qp + c * std::conj(eiphi) * qr;
    }
}

// Core sweep loop; `q` accumulates rotations on top of its incoming value.
void jacobi_core(DenseMat& a, DenseMat& q) {
    const std::size_t n = a.n;
    if (n < 2) return;
    const double target = 1e-13 * a.frobenius();
    const double elem_tol = target / static_cast<double>(n);
    const int sweep_cap = 100;
    for (int sweep = 0; sweep < sweep_cap; ++sweep) {
        if (off_diagonal_norm(a) <= target) return;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t r = p + 1; r < n; ++r)
                if (std::abs(a.at(p, r)) > elem_tol) jacobi_rotate(a, q, p, r);
    }
    if (off_diagonal_norm(a) > target)
        throw NumericFailure("jacobi_hermitian: no convergence in 100 sweeps");
}

void sort_pairs(EigenPairSet& es) {
    const std::size_t n = es.values.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        return es.values[i] < es.values[j];
    });
    std::vector<double> v(n);
    DenseMat q(n);
    for (std::size_t j = 0; j < n; ++j) {
        v[j] = es.values[idx[j]];
        for (std::size_t i = 0; i < n; ++i)
            q.at(i, j) = es.vectors.at(i, idx[j]);
    }
    es.values = std::move(v);
    es.vectors = std::move(q);
}

} // namespace

EigenPairSet jacobi_hermitian(const DenseMat& m) {
    if (m.n == 0) throw std::invalid_argument("jacobi_hermitian: empty matrix");
    if (!m.is_finite_mat())
        throw std::invalid_argument("jacobi_hermitian: non-finite entries");
    if (!m.is_hermitian(1e-10))
        throw std::invalid_argument("jacobi_hermitian: input not Hermitian");

    DenseMat a = m;
    // fold roundoff asymmetry away so the iteration sees an exact Hermitian
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = i; j < a.n; ++j) {
            cxd h = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
            a.at(i, j) = h;
            a.at(j, i) = std::conj(h);
        }

    DenseMat q = DenseMat::identity(a.n);
    jacobi_core(a, q);

    EigenPairSet es;
    es.values.resize(a.n);
    for (std::size_t i = 0; i < a.n; ++i) es.values[i] = a.at(i, i).real();
    es.vectors = std::move(q);
    sort_pairs(es);
    return es;
}

EigenPairSet unitary_eigensystem(const DenseMat& u) {
    if (u.n == 0) throw std::invalid_argument("unitary_eigensystem: empty matrix");
    if (!u.is_finite_mat())
        throw std::invalid_argument("unitary_eigensystem: non-finite entries");
    if (!u.is_unitary(1e-10))
        throw std::invalid_argument("unitary_eigensystem: input not unitary");

    const std::size_t n = u.n;
    const DenseMat ud = u.adjoint();
    DenseMat c(n), s(n);
    for (std::size_t i = 0; i < n * n; ++i) {
        c.a[i] = 0.5 * (u.a[i] + ud.a[i]);
        s.a[i] = cxd{0.0, -0.5} * (u.a[i] - ud.a[i]);
    }

    EigenPairSet cs = jacobi_hermitian(c);
    DenseMat q = std::move(cs.vectors);

    // Degenerate cos-blocks (e.g. phases +-E share cos E): rediagonalize S
    // inside each block so the joint eigenvectors are well defined.
    std::size_t b0 = 0;
    while (b0 < n) {
        std::size_t b1 = b0 + 1;
        while (b1 < n && cs.values[b1] - cs.values[b1 - 1] < 1e-8) ++b1;
        const std::size_t bs = b1 - b0;
        if (bs > 1) {
            // sq = S * Q_block, then sb = Q_block^dag * sq
            std::vector<cxd> sq(n * bs, cxd{0.0, 0.0});
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    const cxd skl = s.at(k, l);
                    if (skl == cxd{0.0, 0.0}) continue;
                    for (std::size_t j = 0; j < bs; ++j)
                        sq[k * bs + j] += skl * q.at(l, b0 + j);
                }
            DenseMat sb(bs);
            for (std::size_t i = 0; i < bs; ++i)
                for (std::size_t j = 0; j < bs; ++j) {
                    cxd acc{0.0, 0.0};
                    for (std::size_t k = 0; k < n; ++k)
                        acc += std::conj(q.at(k, b0 + i)) * sq[k * bs + j];
                    sb.at(i, j) = acc;
                }
            DenseMat v = DenseMat::identity(bs);
            jacobi_core(sb, v);
            DenseMat qb(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < bs; ++j) {
                    cxd acc{0.0, 0.0};
                    for (std::size_t k = 0; k < bs; ++k)
                        acc += q.at(i, b0 + k) * v.at(k, j);
                    qb.at(i, j) = acc;
                }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < bs; ++j)
                    q.at(i, b0 + j) = qb.at(i, j);
        }
        b0 = b1;
    }

    EigenPairSet es;
    es.values.resize(n);
    es.vectors = DenseMat(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<cxd> v = q.column(j);
        cxd cm{0.0, 0.0}, sm{0.0, 0.0};
        std::vector<cxd> cv = c.apply(v), sv = s.apply(v);
        for (std::size_t i = 0; i < n; ++i) {
            cm += std::conj(v[i]) * cv[i];
            sm += std::conj(v[i]) * sv[i];
        }
        es.values[j] = wrap_angle(std::atan2(-sm.real(), cm.real()));
        for (std::size_t i = 0; i < n; ++i) es.vectors.at(i, j) = v[i];
    }
    sort_pairs(es);

    for (std::size_t j = 0; j < n; ++j) {
        std::vector<cxd> v = es.vectors.column(j);
        std::vector<cxd> uv = u.apply(v);
        cxd ph = std::exp(cxd(0.0, -es.values[j]));
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res += std::norm(uv[i] - ph * v[i]);
        if (std::sqrt(res) > 1e-8)
            throw NumericFailure("unitary_eigensystem: eigenpair residual above 1e-8");
    }
    return es;
}

} // namespace spinlab
