#include "pipestab/fields.hpp"

#include <cmath>

namespace pipestab {

namespace {

void check_sizes(const CVector& phi, const CVector& omega, const CollocationGrid& grid) {
    if (phi.size() != grid.nodes() || omega.size() != grid.nodes())
        throw InputError("field vectors must hold one value per grid node");
}

}  // namespace

VelocityProfile reconstruct(ModeCase mc, const CVector& phi, const CVector& omega, const CollocationGrid& grid,
                            const WaveNumbers& wn) {
    check_sizes(phi, omega, grid);
    const int m = grid.nodes();
    VelocityProfile out;
    out.mode_case = mc;
    out.alpha = wn.alpha;
    out.n = wn.n;
    out.r = grid.y_double().cwiseSqrt();
    out.u.resize(m);
    out.v.resize(m);
    out.w.resize(m);
    const cplx I(0, 1);
    const Eigen::VectorXd y = grid.y_double();

    if (mc == ModeCase::AxisymmetricZero) {
        for (int j = 0; j < m; ++j) {
            out.u(j) = phi(j);
            out.v(j) = 0;
            out.w(j) = out.r(j) * omega(j);
        }
        return out;
    }
    const CVector dphi = grid.d(1).cast<double>() * phi;
    const double a = wn.alpha;
    if (mc == ModeCase::AxisymmetricFinite) {
        if (a == 0) throw InputError("axisymmetric reconstruction needs alpha != 0");
        for (int j = 0; j < m; ++j) {
            out.u(j) = (I / a) * (2.0 * phi(j) + 2.0 * y(j) * dphi(j));
            out.v(j) = out.r(j) * phi(j);
            out.w(j) = (I / a) * out.r(j) * omega(j);
        }
        return out;
    }
    const int l = wn.ell();
    const double n = wn.n;
    for (int j = 0; j < m; ++j) {
        const double d = n * n + a * a * y(j);
        const double rl = std::pow(out.r(j), l);
        const cplx ydphi = 2.0 * y(j) * dphi(j);  // r dphi/dr
        out.v(j) = rl * phi(j);
        out.u(j) = I * rl * out.r(j) / d * (a * (l + 1) * phi(j) + a * ydphi - n * omega(j));
        out.w(j) = I * rl / d * (n * (l + 1) * phi(j) + n * ydphi + a * y(j) * omega(j));
    }
    return out;
}

double energy(ModeCase mc, const CVector& phi, const CVector& omega, const CollocationGrid& grid,
              const WaveNumbers& wn) {
    check_sizes(phi, omega, grid);
    if (mc != ModeCase::General || wn.n == 0) throw InputError("energy form requires n != 0");
    const CVector dphi = grid.d(1).cast<double>() * phi;
    const int l = wn.ell();
    const double n2 = static_cast<double>(wn.n) * wn.n;
    double s = 0;
    for (int j = 0; j < grid.nodes(); ++j) {
        const double y = static_cast<double>(grid.y(j));
        const double yl = std::pow(y, l);
        const double cross = 2.0 * std::real(std::conj(phi(j)) * dphi(j));
        const double f = y * yl * std::norm(omega(j)) + 2 * n2 * yl * std::norm(phi(j)) +
                         4 * y * y * yl * std::norm(dphi(j)) + 2.0 * (l + 1) * y * yl * cross;
        s += static_cast<double>(grid.w(j)) * f;
    }
    return s / (2 * n2);
}

double velocity_energy(const VelocityProfile& p, const CollocationGrid& grid) {
    double s = 0;
    for (int j = 0; j < grid.nodes(); ++j)
        s += static_cast<double>(grid.w(j)) * (std::norm(p.u(j)) + std::norm(p.v(j)) + std::norm(p.w(j)));
    return 0.5 * s;
}

}  // namespace pipestab
