#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "lvglasso/matrix.hpp"
#include "lvglasso/prox.hpp"

namespace lvglasso {

/// Problem data: sample covariance plus the two penalty weights of the
/// sparse-minus-low-rank objective
///   <R, Sigma> - log det R + alpha*||S||_1 + beta*Tr(L),  R - S + L = 0.
struct Problem {
    SymmetricMatrix sigma_hat;
    double alpha;
    double beta;
    ShrinkMode shrink_mode = ShrinkMode::Full;

    void validate() const;
};

enum class Variant { Pgadm, ConsensusAdmm, Admm3 };

struct Continuation {
    bool enabled = true;
    double shrink_factor = 0.25;
    int period = 10;
    double mu_min = 1e-4;
};

struct SolverOptions {
    Variant variant = Variant::Pgadm;
    /// Penalty parameter; 0 means auto (p with continuation, 10 without).
    double mu0 = 0.0;
    Continuation continuation;
    /// Proximal gradient step size.  The convergence guarantee needs
    /// tau < 1/2; the default 0.6 is the empirically fast choice.
    double tau = 0.6;
    /// When set, reject tau >= 0.5 up front.
    bool strict_tau = false;
    double tol_infeas = 1e-5;
    int max_iter = 1000;
    bool record_history = false;

    void validate() const;
    double initial_mu(int p) const;
};

/// State of the three-block and PGADM recursions.  Lambda multiplies the
/// constraint R - S + L = 0.
struct Iterate {
    SymmetricMatrix R, S, L, Lambda;
    double mu;

    static Iterate initial(int p, double mu);
};

/// State of the consensus splitting: X = (R, S, L), its consensus copy
/// Z = (Rt, St, Lt), and one multiplier per block.
struct ConsensusIterate {
    SymmetricMatrix R, S, L;
    SymmetricMatrix Rt, St, Lt;
    SymmetricMatrix LamR, LamS, LamL;
    double mu;

    static ConsensusIterate initial(int p, double mu);
};

struct HistoryRecord {
    double objective;
    double infeas;
    double mu;
};

struct SolveReport {
    double objective;
    double objective_smooth_part;  // <R, Sigma> - log det R
    double l1_part;                // alpha * penalized l1 of S
    double trace_part;             // beta * Tr(L)
    int iterations;
    double infeas;
    double wall_seconds;
    double sp;   // fraction of bit-exact nonzeros in S
    double sp1;  // fraction of entries with |S_ij| > 1e-4
    bool converged;
    double r_vs_s_minus_l;  // ||R - (S - L)||_F at termination
    std::vector<HistoryRecord> history;
    Iterate final;
};

struct KktResiduals {
    double stationarity_R;  // ||Sigma - R^-1 - Lambda||_F relative
    double dual_feas_S;     // (||Lambda||_inf - alpha)_+ plus support sign mismatch
    double comp_slack_L;    // PSD complementarity of beta*I - Lambda against L
    double primal;          // the relative infeasibility
};

double objective(const Problem& problem, const SymmetricMatrix& r, const SymmetricMatrix& s,
                 const SymmetricMatrix& l);

/// ||R - S + L||_F / max{1, ||R||_F, ||S||_F, ||L||_F}.
double infeasibility(const SymmetricMatrix& r, const SymmetricMatrix& s,
                     const SymmetricMatrix& l);

Iterate pgadm_step(const Iterate& state, const Problem& problem, const SolverOptions& opts);

Iterate admm3_step(const Iterate& state, const Problem& problem, const SolverOptions& opts);

/// Euclidean projection of (T_R, T_S, T_L) onto {Rt - St + Lt = 0}.
std::tuple<SymmetricMatrix, SymmetricMatrix, SymmetricMatrix> consensus_project(
    const SymmetricMatrix& t_r, const SymmetricMatrix& t_s, const SymmetricMatrix& t_l);

ConsensusIterate consensus_admm_step(const ConsensusIterate& state, const Problem& problem,
                                     const SolverOptions& opts);

/// mu * shrink_factor (floored at mu_min) at each period boundary.
double continuation_update(double mu, int k, const SolverOptions& opts);

SolveReport solve(const Problem& problem, const SolverOptions& opts,
                  const std::optional<Iterate>& initial = std::nullopt);

KktResiduals kkt_residuals(const Problem& problem, const Iterate& iterate);

/// d_k = (1/(mu*tau)) (||S^k - S*||_F^2 + ||L^k - L*||_F^2)
///       + mu ||Lambda^k - Lambda*||_F^2 for each recorded iterate,
/// with the reference playing U*.
std::vector<double> hnorm_diagnostic(const std::vector<Iterate>& history,
                                     const Iterate& reference, double mu, double tau);

}  // namespace lvglasso
