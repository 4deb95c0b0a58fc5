#include "lvglasso/solver.hpp"

#include <chrono>
#include <cmath>

#include "lvglasso/kernels.hpp"

namespace lvglasso {

namespace {

const kernels::Dispatch& K() { return kernels::active(); }

// a*X + b*Y, trusted symmetric.
SymmetricMatrix comb2(double a, const SymmetricMatrix& x, double b, const SymmetricMatrix& y) {
    Eigen::MatrixXd out(x.dim(), x.dim());
    K().combine2(a, x.data(), b, y.data(), x.size(), out.data());
    return SymmetricMatrix::from_symmetric(std::move(out));
}

// a*X + b*Y + c*Z, trusted symmetric.
SymmetricMatrix comb3(double a, const SymmetricMatrix& x, double b, const SymmetricMatrix& y,
                      double c, const SymmetricMatrix& z) {
    Eigen::MatrixXd out(x.dim(), x.dim());
    K().combine3(a, x.data(), b, y.data(), c, z.data(), x.size(), out.data());
    return SymmetricMatrix::from_symmetric(std::move(out));
}

double frob(const SymmetricMatrix& a) { return std::sqrt(K().sum_sq(a.data(), a.size())); }

double penalized_l1(const SymmetricMatrix& s, ShrinkMode mode) {
    double v = K().sum_abs(s.data(), s.size());
    if (mode == ShrinkMode::OffDiagonal) {
        for (int i = 0; i < s.dim(); ++i) v -= std::fabs(s(i, i));
    }
    return v;
}

}  // namespace

void Problem::validate() const {
    if (alpha <= 0.0) throw InvalidInput("Problem: alpha must be positive");
    if (beta < 0.0) throw InvalidInput("Problem: beta must be nonnegative");
}

void SolverOptions::validate() const {
    if (mu0 < 0.0) throw InvalidInput("SolverOptions: mu0 must be nonnegative");
    if (tau <= 0.0 || tau >= 1.0) throw InvalidInput("SolverOptions: tau must be in (0,1)");
    if (strict_tau && tau > 0.499) {
        throw InvalidInput("SolverOptions: strict mode requires tau <= 0.499");
    }
    if (tol_infeas <= 0.0) throw InvalidInput("SolverOptions: tol_infeas must be positive");
    if (max_iter < 1) throw InvalidInput("SolverOptions: max_iter must be positive");
    if (continuation.enabled) {
        if (continuation.shrink_factor <= 0.0 || continuation.shrink_factor >= 1.0) {
            throw InvalidInput("SolverOptions: continuation shrink_factor must be in (0,1)");
        }
        if (continuation.period < 1) throw InvalidInput("SolverOptions: period must be positive");
        if (continuation.mu_min <= 0.0) throw InvalidInput("SolverOptions: mu_min must be positive");
    }
}

double SolverOptions::initial_mu(int p) const {
    if (mu0 > 0.0) return mu0;
    return continuation.enabled ? static_cast<double>(p) : 10.0;
}

Iterate Iterate::initial(int p, double mu) {
    return {SymmetricMatrix::identity(p), SymmetricMatrix::identity(p), SymmetricMatrix::zero(p),
            SymmetricMatrix::zero(p), mu};
}

ConsensusIterate ConsensusIterate::initial(int p, double mu) {
    return {SymmetricMatrix::identity(p), SymmetricMatrix::identity(p), SymmetricMatrix::zero(p),
            SymmetricMatrix::identity(p), SymmetricMatrix::identity(p), SymmetricMatrix::zero(p),
            SymmetricMatrix::zero(p),     SymmetricMatrix::zero(p),     SymmetricMatrix::zero(p),
            mu};
}

double objective(const Problem& problem, const SymmetricMatrix& r, const SymmetricMatrix& s,
                 const SymmetricMatrix& l) {
    const double smooth = K().dot(r.data(), problem.sigma_hat.data(), r.size()) - log_det_pd(r);
    return smooth + problem.alpha * penalized_l1(s, problem.shrink_mode) +
           problem.beta * l.mat().trace();
}

double infeasibility(const SymmetricMatrix& r, const SymmetricMatrix& s,
                     const SymmetricMatrix& l) {
    const SymmetricMatrix viol = comb3(1.0, r, -1.0, s, 1.0, l);
    const double denom = std::max({1.0, frob(r), frob(s), frob(l)});
    return frob(viol) / denom;
}

Iterate pgadm_step(const Iterate& state, const Problem& problem, const SolverOptions& opts) {
    const double mu = state.mu;
    const double tau = opts.tau;

    const SymmetricMatrix arg = comb3(1.0, state.S, -1.0, state.L, mu, state.Lambda);
    SymmetricMatrix r = prox_logdet(arg, problem.sigma_hat, mu);

    const SymmetricMatrix g = comb2(1.0, r, -1.0, arg);
    SymmetricMatrix s =
        shrink(comb2(1.0, state.S, tau, g), problem.alpha * mu * tau, problem.shrink_mode);
    SymmetricMatrix l = prox_psd_trace(comb2(1.0, state.L, -tau, g), problem.beta * mu * tau);

    const SymmetricMatrix viol = comb3(1.0, r, -1.0, s, 1.0, l);
    SymmetricMatrix lambda = comb2(1.0, state.Lambda, -1.0 / mu, viol);

    return {std::move(r), std::move(s), std::move(l), std::move(lambda), mu};
}

Iterate admm3_step(const Iterate& state, const Problem& problem, const SolverOptions& opts) {
    (void)opts;
    const double mu = state.mu;

    SymmetricMatrix r = prox_logdet(comb3(1.0, state.S, -1.0, state.L, mu, state.Lambda),
                                    problem.sigma_hat, mu);
    SymmetricMatrix s = shrink(comb3(1.0, r, 1.0, state.L, -mu, state.Lambda),
                               problem.alpha * mu, problem.shrink_mode);
    SymmetricMatrix l =
        prox_psd_trace(comb3(1.0, s, -1.0, r, mu, state.Lambda), problem.beta * mu);

    const SymmetricMatrix viol = comb3(1.0, r, -1.0, s, 1.0, l);
    SymmetricMatrix lambda = comb2(1.0, state.Lambda, -1.0 / mu, viol);

    return {std::move(r), std::move(s), std::move(l), std::move(lambda), mu};
}

std::tuple<SymmetricMatrix, SymmetricMatrix, SymmetricMatrix> consensus_project(
    const SymmetricMatrix& t_r, const SymmetricMatrix& t_s, const SymmetricMatrix& t_l) {
    if (t_r.dim() != t_s.dim() || t_r.dim() != t_l.dim()) {
        throw InvalidInput("consensus_project: dimension mismatch");
    }
    const SymmetricMatrix gamma =
        comb3(-1.0 / 3.0, t_r, 1.0 / 3.0, t_s, -1.0 / 3.0, t_l);
    return {comb2(1.0, t_r, 1.0, gamma), comb2(1.0, t_s, -1.0, gamma),
            comb2(1.0, t_l, 1.0, gamma)};
}

ConsensusIterate consensus_admm_step(const ConsensusIterate& state, const Problem& problem,
                                     const SolverOptions& opts) {
    (void)opts;
    const double mu = state.mu;

    SymmetricMatrix r =
        prox_logdet(comb2(1.0, state.Rt, mu, state.LamR), problem.sigma_hat, mu);
    SymmetricMatrix s = shrink(comb2(1.0, state.St, mu, state.LamS), problem.alpha * mu,
                               problem.shrink_mode);
    SymmetricMatrix l = prox_psd_trace(comb2(1.0, state.Lt, mu, state.LamL), problem.beta * mu);

    auto [rt, st, lt] = consensus_project(comb2(1.0, r, -mu, state.LamR),
                                          comb2(1.0, s, -mu, state.LamS),
                                          comb2(1.0, l, -mu, state.LamL));

    SymmetricMatrix lam_r = comb3(1.0, state.LamR, -1.0 / mu, r, 1.0 / mu, rt);
    SymmetricMatrix lam_s = comb3(1.0, state.LamS, -1.0 / mu, s, 1.0 / mu, st);
    SymmetricMatrix lam_l = comb3(1.0, state.LamL, -1.0 / mu, l, 1.0 / mu, lt);

    return {std::move(r),     std::move(s),     std::move(l),
            std::move(rt),    std::move(st),    std::move(lt),
            std::move(lam_r), std::move(lam_s), std::move(lam_l),
            mu};
}

double continuation_update(double mu, int k, const SolverOptions& opts) {
    if (!opts.continuation.enabled || k <= 0 || k % opts.continuation.period != 0) return mu;
    return std::max(mu * opts.continuation.shrink_factor, opts.continuation.mu_min);
}

namespace {

SolveReport finish_report(const Problem& problem, Iterate final, int iterations, double infeas,
                          double wall_seconds, bool converged,
                          std::vector<HistoryRecord> history) {
    SolveReport rep{0.0,   0.0,       0.0,   0.0,
                    iterations, infeas, wall_seconds, 0.0,
                    0.0,   converged, 0.0,   std::move(history),
                    std::move(final)};
    const Iterate& it = rep.final;
    rep.objective_smooth_part =
        K().dot(it.R.data(), problem.sigma_hat.data(), it.R.size()) - log_det_pd(it.R);
    rep.l1_part = problem.alpha * penalized_l1(it.S, problem.shrink_mode);
    rep.trace_part = problem.beta * it.L.mat().trace();
    rep.objective = rep.objective_smooth_part + rep.l1_part + rep.trace_part;
    const double p2 = static_cast<double>(it.S.size());
    rep.sp = static_cast<double>(K().count_nonzero(it.S.data(), it.S.size())) / p2;
    rep.sp1 = static_cast<double>(K().count_abs_above(it.S.data(), it.S.size(), 1e-4)) / p2;
    rep.r_vs_s_minus_l = frob(comb3(1.0, it.R, -1.0, it.S, 1.0, it.L));
    return rep;
}

}  // namespace

SolveReport solve(const Problem& problem, const SolverOptions& opts,
                  const std::optional<Iterate>& initial) {
    problem.validate();
    opts.validate();
    const int p = problem.sigma_hat.dim();
    const double mu_start = opts.initial_mu(p);

    std::vector<HistoryRecord> history;
    const auto t0 = std::chrono::steady_clock::now();

    if (opts.variant == Variant::ConsensusAdmm) {
        ConsensusIterate state = ConsensusIterate::initial(p, mu_start);
        if (initial) {
            auto [rt, st, lt] = consensus_project(initial->R, initial->S, initial->L);
            state = {initial->R, initial->S, initial->L,
                     std::move(rt), std::move(st), std::move(lt),
                     initial->Lambda,
                     comb2(-1.0, initial->Lambda, 0.0, initial->Lambda),
                     initial->Lambda,
                     mu_start};
        }
        // Termination needs more than small infeasibility: the plain
        // three-block recursion can emit exactly feasible iterates far from
        // the optimum, so the objective must have settled as well.
        int k = 0;
        double infeas = infeasibility(state.R, state.S, state.L);
        double obj = objective(problem, state.R, state.S, state.L);
        bool converged = false;
        while (!converged && k < opts.max_iter) {
            state.mu = continuation_update(state.mu, k, opts);
            state = consensus_admm_step(state, problem, opts);
            ++k;
            infeas = infeasibility(state.R, state.S, state.L);
            const double obj_next = objective(problem, state.R, state.S, state.L);
            const double settled =
                std::fabs(obj_next - obj) / std::max(1.0, std::fabs(obj_next));
            obj = obj_next;
            converged = infeas < opts.tol_infeas && settled < opts.tol_infeas;
            if (opts.record_history) {
                history.push_back({obj, infeas, state.mu});
            }
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        Iterate final{state.R, state.S, state.L, state.LamR, state.mu};
        return finish_report(problem, std::move(final), k, infeas, secs, converged,
                             std::move(history));
    }

    Iterate state = initial ? *initial : Iterate::initial(p, mu_start);
    state.mu = initial && initial->mu > 0.0 ? initial->mu : mu_start;
    int k = 0;
    double infeas = infeasibility(state.R, state.S, state.L);
    double obj = objective(problem, state.R, state.S, state.L);
    bool converged = false;
    while (!converged && k < opts.max_iter) {
        state.mu = continuation_update(state.mu, k, opts);
        state = opts.variant == Variant::Pgadm ? pgadm_step(state, problem, opts)
                                               : admm3_step(state, problem, opts);
        ++k;
        infeas = infeasibility(state.R, state.S, state.L);
        const double obj_next = objective(problem, state.R, state.S, state.L);
        const double settled = std::fabs(obj_next - obj) / std::max(1.0, std::fabs(obj_next));
        obj = obj_next;
        converged = infeas < opts.tol_infeas && settled < opts.tol_infeas;
        if (opts.record_history) {
            history.push_back({obj, infeas, state.mu});
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finish_report(problem, std::move(state), k, infeas, secs, converged,
                         std::move(history));
}

KktResiduals kkt_residuals(const Problem& problem, const Iterate& iterate) {
    const int p = iterate.R.dim();
    const EigenDecomposition ed = sym_eig(iterate.R);
    const double floor = 1e-12 * std::max(1.0, ed.values(p - 1));
    for (int i = 0; i < p; ++i) {
        if (ed.values(i) <= floor) {
            throw NotPositiveDefinite("kkt_residuals: R is not positive definite");
        }
    }
    Eigen::MatrixXd r_inv =
        ed.vectors * ed.values.cwiseInverse().asDiagonal() * ed.vectors.transpose();

    KktResiduals res;
    const Eigen::MatrixXd stat =
        problem.sigma_hat.mat() - r_inv - iterate.Lambda.mat();
    res.stationarity_R = stat.norm() / std::max(1.0, problem.sigma_hat.mat().norm());

    const bool offdiag = problem.shrink_mode == ShrinkMode::OffDiagonal;
    double bound_viol = 0.0;
    double sign_mismatch = 0.0;
    for (int j = 0; j < p; ++j) {
        for (int i = 0; i < p; ++i) {
            if (offdiag && i == j) continue;
            const double lam = iterate.Lambda(i, j);
            bound_viol = std::max(bound_viol, std::fabs(lam) - problem.alpha);
            const double s = iterate.S(i, j);
            if (s != 0.0) {
                const double sgn = s > 0.0 ? 1.0 : -1.0;
                sign_mismatch = std::max(sign_mismatch, std::fabs(lam + problem.alpha * sgn));
            }
        }
    }
    res.dual_feas_S = std::max(bound_viol, 0.0) + sign_mismatch;

    // M = beta*I - Lambda is the multiplier of the PSD constraint: with
    // Lambda = Sigma - R^-1 at an optimum, M is PSD and <M, L> = 0.
    Eigen::MatrixXd m = problem.beta * Eigen::MatrixXd::Identity(p, p) - iterate.Lambda.mat();
    const double inner = std::fabs((m.array() * iterate.L.mat().array()).sum());
    const EigenDecomposition med = sym_eig(SymmetricMatrix(m));
    res.comp_slack_L = inner / std::max(1.0, iterate.L.mat().norm()) +
                       std::max(-med.values(0), 0.0);

    res.primal = infeasibility(iterate.R, iterate.S, iterate.L);
    return res;
}

std::vector<double> hnorm_diagnostic(const std::vector<Iterate>& history,
                                     const Iterate& reference, double mu, double tau) {
    if (history.empty()) throw InvalidInput("hnorm_diagnostic: empty history");
    std::vector<double> out;
    out.reserve(history.size());
    for (const Iterate& it : history) {
        const double ds = (it.S.mat() - reference.S.mat()).squaredNorm();
        const double dl = (it.L.mat() - reference.L.mat()).squaredNorm();
        const double dlam = (it.Lambda.mat() - reference.Lambda.mat()).squaredNorm();
        out.push_back((ds + dl) / (mu * tau) + mu * dlam);
    }
    return out;
}

}  // namespace lvglasso
