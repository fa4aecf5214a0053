#include "qotto/fock.hpp"

#include <cmath>
#include <sstream>

#include "qotto/ode.hpp"

namespace qotto::fock {

using Complex = std::complex<double>;

FockSpace::FockSpace(int dim, double omega_ref) : n_(dim), omega_ref_(omega_ref) {
    if (dim < 2) throw ConfigError("FockSpace: dimension must be >= 2");
    if (!(omega_ref > 0.0)) throw ConfigError("FockSpace: omega_ref must be positive");
    Matrix a = Matrix::Zero(n_, n_);
    for (int k = 1; k < n_; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    const Matrix ad = a.adjoint();
    // Q = (a + a+)/sqrt(2 w_ref), P = i sqrt(w_ref/2) (a+ - a); hbar = m = 1.
    q_ = (a + ad) / std::sqrt(2.0 * omega_ref_);
    p_ = Complex(0.0, 1.0) * std::sqrt(0.5 * omega_ref_) * (ad - a);
    q2_ = q_ * q_;
    p2_ = p_ * p_;
    d_ = q_ * p_ + p_ * q_;
}

Matrix FockSpace::lowering(double omega) const {
    if (!(omega > 0.0)) throw ConfigError("FockSpace::lowering: omega must be positive");
    return std::sqrt(0.5 * omega) * q_ + Complex(0.0, 1.0) / std::sqrt(2.0 * omega) * p_;
}

Matrix FockSpace::hamiltonian(double omega) const { return 0.5 * p2_ + 0.5 * omega * omega * q2_; }

Matrix FockSpace::lagrangian(double omega) const { return 0.5 * p2_ - 0.5 * omega * omega * q2_; }

Matrix FockSpace::number(double omega) const {
    const Matrix a = lowering(omega);
    return a.adjoint() * a;
}

Matrix FockSpace::thermal_state(double omega, double temperature) const {
    if (!(temperature > 0.0)) throw ConfigError("FockSpace::thermal_state: need T > 0");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian(omega));
    const Eigen::VectorXd lambda = es.eigenvalues();
    Eigen::VectorXd weights = (-(lambda.array() - lambda.minCoeff()) / temperature).exp();
    weights /= weights.sum();
    return es.eigenvectors() * weights.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix FockSpace::product_state(const GaussianParams& params, double omega) const {
    if (std::abs(omega - omega_ref_) > 1e-12 * omega_ref_) {
        throw ConfigError("FockSpace::product_state: omega must equal omega_ref");
    }
    if (!(params.beta > 0.0)) throw UnphysicalStateError("product_state: beta must be > 0");
    // e^{gamma a^2} is a finite series: a^2 is nilpotent in the truncated basis.
    Matrix a = Matrix::Zero(n_, n_);
    for (int k = 1; k < n_; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    const Matrix a2 = a * a;
    Matrix left = Matrix::Identity(n_, n_);
    Matrix term = Matrix::Identity(n_, n_);
    for (int k = 1; 2 * k < n_; ++k) {
        term = (params.gamma / static_cast<double>(k)) * (term * a2).eval();
        left += term;
    }
    Eigen::VectorXd boltzmann(n_);
    for (int k = 0; k < n_; ++k) boltzmann[k] = std::exp(-params.beta * omega * (k + 0.5));
    Matrix rho = left * boltzmann.asDiagonal() * left.adjoint();
    rho /= rho.trace().real();
    return rho;
}

Matrix FockSpace::exp_sum_state(const ExpSumParams& params, double omega) const {
    // chi1 a^2 + chi2 H + chi1* a+^2 = chi2 H - (2 Re chi1 / w) L - Im(chi1) D
    const Matrix g = params.chi2 * hamiltonian(omega) -
                     (2.0 * params.chi1.real() / omega) * lagrangian(omega) -
                     params.chi1.imag() * d_;
    Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    const Eigen::VectorXd lambda = es.eigenvalues();
    Eigen::VectorXd weights = (lambda.array() - lambda.maxCoeff()).exp();
    weights /= weights.sum();
    return es.eigenvectors() * weights.asDiagonal() * es.eigenvectors().adjoint();
}

StateVector expectations(const FockSpace& space, const Matrix& rho, double omega) {
    StateVector s;
    s.omega = omega;
    s.energy = (rho * space.hamiltonian(omega)).trace().real();
    s.lagrangian = (rho * space.lagrangian(omega)).trace().real();
    s.correlation = (rho * space.correlation()).trace().real();
    return s;
}

double trace_distance(const Matrix& rho1, const Matrix& rho2) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho1 - rho2);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double entropy_eigenvalues(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    double s = 0.0;
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
        const double lam = es.eigenvalues()[k];
        if (lam > 1e-300) s -= lam * std::log(lam);
    }
    return s;
}

StateChecks check_state(const Matrix& rho, const FockConfig& cfg, bool full) {
    StateChecks out;
    const int n = static_cast<int>(rho.rows());
    out.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
    out.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    out.top_population = rho(n - 1, n - 1).real() + rho(n - 2, n - 2).real();
    if (full) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
        out.min_eigenvalue = es.eigenvalues().minCoeff();
    }
    if (out.top_population > cfg.leak_tol) {
        std::ostringstream msg;
        msg << "truncation leak: top-two-level population " << out.top_population << " exceeds "
            << cfg.leak_tol << " at dimension " << n;
        throw TruncationLeakError(msg.str());
    }
    return out;
}

void evolve_isochore(const FockSpace& space, Matrix& rho, const BathSpec& bath, double omega,
                     double tau, const FockConfig& cfg) {
    if (tau == 0.0) return;
    const Matrix h = space.hamiltonian(omega);
    const Matrix a = space.lowering(omega);
    const Matrix ad = a.adjoint();
    const double kd = bath.k_down(omega);
    const double ku = bath.k_up(omega);
    // Fold the commutator and both anticommutators into one drift matrix:
    // drho = G rho + rho G+ + kd a rho a+ + ku a+ rho a,
    // G = -iH - (kd a+a + ku a a+)/2.
    const Matrix g =
        Complex(0.0, -1.0) * h - 0.5 * kd * (ad * a).eval() - 0.5 * ku * (a * ad).eval();
    const Matrix gd = g.adjoint();

    Matrix work(space.dim(), space.dim());
    OdeOptions opt;
    opt.rtol = cfg.rtol;
    opt.atol = cfg.atol;
    integrate_ode(
        [&](double, const Matrix& y, Matrix& dydt) {
            dydt.noalias() = g * y;
            dydt.noalias() += y * gd;
            work.noalias() = a * y;
            dydt.noalias() += kd * (work * ad);
            if (ku != 0.0) {
                work.noalias() = ad * y;
                dydt.noalias() += ku * (work * a);
            }
        },
        rho, 0.0, tau, opt);
    check_state(rho, cfg);
}

void evolve_adiabat(const FockSpace& space, Matrix& rho, const AdiabatSchedule& sched,
                    const FockConfig& cfg) {
    const double alpha = sched.alpha();
    const double w0 = sched.omega_start;
    const Matrix p2half = 0.5 * space.p() * space.p();
    const Matrix q2half = 0.5 * space.q() * space.q();
    const Complex mi(0.0, -1.0);

    Matrix h(space.dim(), space.dim());
    OdeOptions opt;
    opt.rtol = cfg.rtol;
    opt.atol = cfg.atol;
    integrate_ode(
        [&](double t, const Matrix& y, Matrix& dydt) {
            const double wt = w0 * std::exp(alpha * t);
            h = p2half + (wt * wt) * q2half;
            dydt.noalias() = mi * (h * y - y * h);
        },
        rho, 0.0, sched.duration, opt);
    check_state(rho, cfg);
}

namespace {

int initial_dimension(const EngineSpec& engine, const FockConfig& cfg) {
    if (cfg.n_max > 0) return std::min(cfg.n_max, cfg.n_cap);
    const auto n_eq = [](double omega, double t) { return 1.0 / std::expm1(omega / t); };
    const double n_scale = std::max(n_eq(engine.omega_h, engine.hot.temperature),
                                    n_eq(engine.omega_c, engine.cold.temperature)) +
                           1.0;
    const double c = engine.compression_ratio();
    const int n0 = static_cast<int>(std::ceil(n_scale * c * c)) + 20;
    return std::min(std::max(n0, 16), cfg.n_cap);
}

}  // namespace

OracleCorners oracle_limit_cycle(const EngineSpec& engine, const TimeAllocation& alloc,
                                 const FockConfig& cfg, int max_cycles) {
    engine.validate();
    alloc.validate();
    const double omega_ref =
        cfg.omega_ref > 0.0 ? cfg.omega_ref : std::sqrt(engine.omega_h * engine.omega_c);

    int dim = initial_dimension(engine, cfg);
    while (true) {
        try {
            const FockSpace space(dim, omega_ref);
            Matrix rho = space.thermal_state(engine.omega_c, engine.cold.temperature);

            OracleCorners out;
            out.dim = dim;
            StateVector prev = expectations(space, rho, engine.omega_h);
            for (int cycle = 1; cycle <= max_cycles; ++cycle) {
                out.a = expectations(space, rho, engine.omega_h);
                evolve_isochore(space, rho, engine.hot, engine.omega_h, alloc.tau_h, cfg);
                out.b = expectations(space, rho, engine.omega_h);
                evolve_adiabat(space, rho, {engine.omega_h, engine.omega_c, alloc.tau_hc}, cfg);
                out.c = expectations(space, rho, engine.omega_c);
                evolve_isochore(space, rho, engine.cold, engine.omega_c, alloc.tau_c, cfg);
                out.d = expectations(space, rho, engine.omega_c);
                evolve_adiabat(space, rho, {engine.omega_c, engine.omega_h, alloc.tau_ch}, cfg);

                const StateVector next = expectations(space, rho, engine.omega_h);
                const StateVector diff{next.energy - prev.energy,
                                       next.lagrangian - prev.lagrangian,
                                       next.correlation - prev.correlation, engine.omega_h};
                out.cycles = cycle;
                if (energy_norm(diff) < 1e-8 * (1.0 + energy_norm(next))) {
                    out.a = next;  // corner A of the settled cycle
                    evolve_isochore(space, rho, engine.hot, engine.omega_h, alloc.tau_h, cfg);
                    out.b = expectations(space, rho, engine.omega_h);
                    evolve_adiabat(space, rho, {engine.omega_h, engine.omega_c, alloc.tau_hc},
                                   cfg);
                    out.c = expectations(space, rho, engine.omega_c);
                    evolve_isochore(space, rho, engine.cold, engine.omega_c, alloc.tau_c, cfg);
                    out.d = expectations(space, rho, engine.omega_c);
                    check_state(rho, cfg, /*full=*/true);
                    return out;
                }
                prev = next;
            }
            throw SolverError("oracle_limit_cycle: corner did not settle within the cycle budget");
        } catch (const TruncationLeakError&) {
            if (dim >= cfg.n_cap) throw;
            dim = std::min(2 * dim, cfg.n_cap);
        }
    }
}

}  // namespace qotto::fock
