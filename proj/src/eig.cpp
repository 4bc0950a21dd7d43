#include "pipestab/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "lapack.hpp"

namespace pipestab {

namespace {

struct Equilibrated {
    CExtMatrix P, Q;
};

// Row scaling by the larger of the two row maxima.
Equilibrated equilibrate(const Pencil& pen) {
    Equilibrated e{pen.P, pen.Q};
    for (Eigen::Index i = 0; i < e.P.rows(); ++i) {
        ext s = 0;
        for (Eigen::Index j = 0; j < e.P.cols(); ++j) s = std::max({s, std::abs(e.P(i, j)), std::abs(e.Q(i, j))});
        if (s > 0) {
            e.P.row(i) /= s;
            e.Q.row(i) /= s;
        }
    }
    return e;
}

template <class Vec>
void normalize_phase(Vec& v) {
    Eigen::Index imax = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
    if (std::abs(v(imax)) > 0) v /= v(imax);
}

std::string describe(const Pencil& pen) {
    std::ostringstream os;
    os << "alpha=" << pen.params.alpha << " n=" << pen.params.n << " Re=" << pen.params.re
       << " N=" << pen.params.N << " size=" << pen.size() << " case=" << to_string(pen.mode_case);
    return os.str();
}

ext norm2(const CExtVector& v) {
    ext s = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) s += std::norm(v(i));
    return std::sqrt(s);
}

ext frob(const CExtMatrix& M) {
    ext s = 0;
    for (Eigen::Index j = 0; j < M.cols(); ++j)
        for (Eigen::Index i = 0; i < M.rows(); ++i) s += std::norm(M(i, j));
    return std::sqrt(s);
}

}  // namespace

double eigen_residual(const Pencil& pen, cplx omega, const CVector& v) {
    const CMatrix P = pen.P_double(), Q = pen.Q_double();
    const double denom = P.norm() * v.norm();
    return denom > 0 ? (P * v - omega * (Q * v)).norm() / denom : 0.0;
}

Spectrum solve_qz(const Pencil& pen, const SolveOptions& opts) {
    const Equilibrated e = equilibrate(pen);
    const int n = pen.size();
    CMatrix A = e.P.cast<cplx>(), B = e.Q.cast<cplx>();
    const double qnorm = B.norm();
    std::vector<cplx> al(n), be(n);
    CMatrix vr(n, n);
    cplx dummy;
    const lapack_int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'V', n, A.data(), n, B.data(), n, al.data(),
                                          be.data(), &dummy, 1, vr.data(), n);
    if (info != 0) {
        std::ostringstream os;
        os << "QZ failed (info=" << info << ") for " << describe(pen);
        throw NumericalError(os.str());
    }

    std::vector<int> keep;
    std::vector<cplx> w(n);
    for (int i = 0; i < n; ++i) {
        if (std::abs(be[i]) < 1e-12 * qnorm) continue;
        w[i] = al[i] / be[i];
        if (!std::isfinite(w[i].real()) || !std::isfinite(w[i].imag())) continue;
        keep.push_back(i);
    }
    std::stable_sort(keep.begin(), keep.end(), [&](int a, int b) {
        if (w[a].imag() != w[b].imag()) return w[a].imag() > w[b].imag();
        return w[a].real() > w[b].real();
    });

    Spectrum s;
    s.params = pen.params;
    s.mode_case = pen.mode_case;
    s.nodes = pen.grid ? pen.grid->nodes() : static_cast<int>(pen.recovery.rows() / 2);
    const int m = static_cast<int>(keep.size());
    s.vectors.resize(n, m);
    for (int k = 0; k < m; ++k) {
        CVector v = vr.col(keep[k]);
        normalize_phase(v);
        s.vectors.col(k) = v;
        s.omega.push_back(w[keep[k]]);
    }
    s.refined.assign(m, false);

    const int nref = std::min(opts.refine, m);
    for (int k = 0; k < nref; ++k) {
        try {
            RefinedMode r = refine_mode(pen, s.omega[k], opts.refine_opts);
            const double gap = std::abs(r.omega - s.omega[k]);
            if (gap <= 1e-6 * std::max(1.0, std::abs(s.omega[k]))) {
                s.omega[k] = r.omega;
                s.vectors.col(k) = r.vector;
                s.refined[k] = true;
            }
        } catch (const NumericalError&) {
            // keep the QZ pair
        }
    }

    s.full = pen.recovery.cast<cplx>() * s.vectors;
    for (int k = 0; k < m; ++k) s.residual.push_back(eigen_residual(pen, s.omega[k], s.vectors.col(k)));
    return s;
}

Spectrum least_decaying(const Spectrum& s, int k) {
    if (k < 0 || k > s.size()) {
        std::ostringstream os;
        os << "least_decaying: k=" << k << " outside [0, " << s.size() << "]";
        throw InputError(os.str());
    }
    Spectrum out = s;
    out.omega.resize(k);
    out.residual.resize(k);
    out.refined.resize(k);
    out.vectors = s.vectors.leftCols(k);
    out.full = s.full.leftCols(k);
    return out;
}

RefinedMode refine_mode(const Pencil& pen, cplx shift, const RefineOptions& opts) {
    const Equilibrated e = equilibrate(pen);
    const int n = pen.size();
    const cext sigma(shift.real(), shift.imag());
    const CExtMatrix A = e.P - sigma * e.Q;
    const Eigen::PartialPivLU<CExtMatrix> lu(A);
    const CExtMatrix Ah = A.adjoint();
    const Eigen::PartialPivLU<CExtMatrix> luh(Ah);
    const CExtMatrix Qh = e.Q.adjoint();

    auto solve = [&](const CExtVector& b) {
        CExtVector x = lu.solve(b);
        const CExtVector r = b - A * x;
        x += lu.solve(r);
        return x;
    };
    auto solve_adj = [&](const CExtVector& b) {
        CExtVector x = luh.solve(b);
        const CExtVector r = b - Ah * x;
        x += luh.solve(r);
        return x;
    };

    // Arnoldi on (P - sigma Q)^{-1} Q for a starting vector.
    const int m = std::max(1, std::min(opts.arnoldi_dim, n));
    CExtMatrix V = CExtMatrix::Zero(n, m + 1);
    CExtMatrix H = CExtMatrix::Zero(m + 1, m);
    CExtVector v0(n);
    for (int i = 0; i < n; ++i) v0(i) = cext(1 + static_cast<ext>(i) / n, static_cast<ext>(i % 7) / 7);
    V.col(0) = v0 / norm2(v0);
    int built = m;
    for (int k = 0; k < m; ++k) {
        CExtVector w = solve(e.Q * V.col(k));
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j <= k; ++j) {
                const cext h = V.col(j).dot(w);
                H(j, k) += h;
                w -= h * V.col(j);
            }
        const ext hn = norm2(w);
        H(k + 1, k) = hn;
        if (hn < 1e-30L) {
            built = k + 1;
            break;
        }
        V.col(k + 1) = w / hn;
    }
    Eigen::ComplexEigenSolver<CExtMatrix> ces(H.topLeftCorner(built, built));
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < ces.eigenvalues().size(); ++i)
        if (std::abs(ces.eigenvalues()(i)) > std::abs(ces.eigenvalues()(best))) best = i;
    CExtVector x = V.leftCols(built) * ces.eigenvectors().col(best);
    x /= norm2(x);
    CExtVector y = x;

    const ext pnorm = frob(e.P);
    cext omega = sigma + cext(1) / ces.eigenvalues()(best);
    cext prev = omega;
    double res = 0.0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        x = solve(e.Q * x);
        x /= norm2(x);
        y = solve_adj(Qh * y);
        y /= norm2(y);
        const cext num = y.dot(e.P * x);
        const cext den = y.dot(e.Q * x);
        omega = num / den;
        res = static_cast<double>(norm2(e.P * x - omega * (e.Q * x)) / pnorm);
        const ext change = std::abs(omega - prev);
        prev = omega;
        if (it >= 2 && change <= static_cast<ext>(opts.tol) * std::max<ext>(1, std::abs(omega))) {
            RefinedMode out;
            out.omega_ext = omega;
            out.omega = cplx(static_cast<double>(omega.real()), static_cast<double>(omega.imag()));
            CExtVector xn = x;
            normalize_phase(xn);
            out.vector = xn.cast<cplx>();
            out.full = pen.recover(out.vector);
            out.iterations = it;
            out.residual = res;
            return out;
        }
    }
    std::ostringstream os;
    os << "shift-invert did not converge in " << opts.max_iter << " iterations (residual " << res << ") for "
       << describe(pen);
    throw NumericalError(os.str());
}

double condition_diagnostic(const Pencil& pen, cplx omega) {
    const int n = pen.size();
    const Eigen::PartialPivLU<CExtMatrix> lu(pen.Q);
    const auto& U = lu.matrixLU();
    ext umax = 0, umin = std::numeric_limits<ext>::max();
    for (int i = 0; i < n; ++i) {
        umax = std::max(umax, std::abs(U(i, i)));
        umin = std::min(umin, std::abs(U(i, i)));
    }
    if (!(umin > 1e-300L * umax) || umax == 0) throw NumericalError("condition_diagnostic: Q is singular");
    CMatrix L = lu.solve(pen.P).cast<cplx>();
    for (int i = 0; i < n; ++i) L(i, i) -= omega;
    Eigen::VectorXd sv(n);
    std::vector<double> superb(std::max(1, n - 1));
    cplx du;
    const lapack_int info =
        LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'N', 'N', n, n, L.data(), n, sv.data(), &du, 1, &du, 1, superb.data());
    if (info != 0) throw NumericalError("condition_diagnostic: SVD failed");
    return sv(0) / sv(n - 1);
}

Spectrum compute_spectrum(const FlowParams& params, int refine) {
    SolveOptions o;
    o.refine = refine;
    return solve_qz(build_pencil(params), o);
}

}  // namespace pipestab
