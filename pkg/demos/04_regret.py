"""The two regret regimes of the online mirror-descent update.

Convex losses under the constant c/sqrt(T) step accumulate O(sqrt(T)) regret;
adding a lam-strongly-convex regularizer and stepping 1/(lam*t) brings it
down to O(log T).
"""

import math

import numpy as np

from mirrorkit import RegretTrace, StepSchedule, mirror_step, regret_of, step_size


def absolute_loss_run(seed, horizon):
    rng = np.random.default_rng(seed)
    targets = rng.choice([-1.0, 1.0], size=horizon)
    schedule = StepSchedule.constant_over_sqrt_T(1.0, horizon)
    w = np.zeros(1)
    costs = np.empty(horizon)
    for t in range(1, horizon + 1):
        costs[t - 1] = abs(w[0] - targets[t - 1])
        grad = np.array([np.sign(w[0] - targets[t - 1])])
        w = mirror_step(w, grad, step_size(schedule, t), 0.0)
    comparator = min([-1.0, 1.0], key=lambda u: float(np.abs(u - targets).sum()))
    return regret_of(RegretTrace(costs), np.abs(comparator - targets))


def strongly_convex_run(seed, horizon, lam=0.5, dim=3):
    rng = np.random.default_rng(seed)
    grads = rng.uniform(-1.0, 1.0, size=(horizon, dim))
    schedule = StepSchedule.inverse_lambda_t(lam)
    w = np.zeros(dim)
    costs = np.empty(horizon)
    for t in range(1, horizon + 1):
        costs[t - 1] = grads[t - 1] @ w + 0.5 * lam * (w @ w)
        w = mirror_step(w, grads[t - 1], step_size(schedule, t), lam)
    best = -grads.sum(axis=0) / (lam * horizon)
    comparator = grads @ best + 0.5 * lam * (best @ best)
    return regret_of(RegretTrace(costs), comparator)


SEEDS = range(10)
print("convex |w - b_t| losses, step 1/sqrt(T):   (bound: R/sqrt(T) <= 1)")
print(f"{'T':>7} {'max R':>10} {'max R/sqrt(T)':>14}")
for horizon in (100, 1000, 10000):
    regrets = [absolute_loss_run(seed, horizon) for seed in SEEDS]
    print(f"{horizon:7d} {max(regrets):10.3f} {max(r / math.sqrt(horizon) for r in regrets):14.4f}")

print("\nstrongly-convex losses, step 1/(lam*t):   (bound: R/(1+log T) <= G^2/(2*lam) = 3)")
print(f"{'T':>7} {'max R':>10} {'max R/(1+logT)':>15}")
for horizon in (100, 1000, 10000):
    regrets = [strongly_convex_run(seed, horizon) for seed in SEEDS]
    print(f"{horizon:7d} {max(regrets):10.3f} {max(r / (1 + math.log(horizon)) for r in regrets):15.4f}")
