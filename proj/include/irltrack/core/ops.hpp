#pragma once

// Stateless actor-critic operations. All functions are pure.

#include <span>

#include "irltrack/core/types.hpp"

namespace irltrack {

/// eta = w . X
double correction(const ActorWeights& a, const ErrorWindow& x);

/// S = 1/2 V' M V
double value(const CriticWeights& c, const AugmentedState& v);

/// U = 1/2 (X'QX + R eta^2)
double utility(const CostWeights& cw, const ErrorWindow& x, double eta);

/// Trapezoidal integral of the utility over uniformly spaced samples spanning
/// one interval of length `interval`. Needs at least two samples.
double integral_utility(const CostWeights& cw, std::span<const AugmentedState> samples,
                        double interval);

/// S~ = integral of U over [now, next] + S(next)
double critic_target(const CostWeights& cw, const AugmentedState& now, const AugmentedState& next,
                     const CriticWeights& c, double interval);

/// sym(M - alpha_c * f * V V'), f = S^ - S~ (signed) or 1/2 (S^ - S~)^2 (literal).
/// Throws DivergenceError on non-finite output and SingularBlockError when the
/// eta-eta block collapses.
CriticWeights critic_update(const CriticWeights& c, const AugmentedState& v, double s_hat,
                            double s_tilde, double alpha_c,
                            ResidualMode mode = ResidualMode::kSigned);

/// -m_etax / m_etaeta
ActorWeights greedy_gains(const CriticWeights& c);

/// u~ = greedy_gains(c) . X
double actor_target(const CriticWeights& c, const ErrorWindow& x);

/// w - alpha_a * f * X', f = eta^ - u~ (signed) or 1/2 (eta^ - u~)^2 (literal).
ActorWeights actor_update(const ActorWeights& a, const ErrorWindow& x, double eta_hat,
                          double u_tilde, double alpha_a, ResidualMode mode = ResidualMode::kSigned);

/// True iff the last `window` consecutive Frobenius differences in `history`
/// are all <= sigma. False when fewer than window + 1 matrices are present.
bool converged(std::span<const CriticWeights> history, double sigma, std::size_t window);

}  // namespace irltrack
