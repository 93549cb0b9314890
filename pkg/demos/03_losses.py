"""Hinge and sigmoid losses, their activation gradients, and the 0-1 metric."""

import numpy as np

from mirrorkit import LossSpec, loss_grad, loss_value, zero_one_error

hinge = LossSpec.hinge()
sig = LossSpec.sigmoid01(1.0)

print("loss and gradient along the activation axis (label +1):")
print(f"{'a':>6} | {'hinge':>8} {'d/da':>6} | {'sigmoid01':>9} {'d/da':>8} | {'0-1':>3}")
for a in (-2.0, -0.5, 0.0, 0.25, 1.0, 2.0):
    print(f"{a:6.2f} | {loss_value(hinge, a, 1):8.4f} {loss_grad(hinge, a, 1):6.2f} "
          f"| {loss_value(sig, a, 1):9.6f} {loss_grad(sig, a, 1):8.5f} "
          f"| {zero_one_error(a, 1):3d}")

# The sigmoid gradient magnitude never exceeds the Lipschitz constant L.
grid = np.linspace(-20, 20, 2001)
for L in (0.5, 1.0, 4.0):
    grads = loss_grad(LossSpec.sigmoid01(L), grid, np.ones_like(grid))
    print(f"\nL={L}: max |gradient| over [-20, 20] = {np.max(np.abs(grads)):.6f}")

# Central finite differences agree with the analytic gradient.
rng = np.random.default_rng(0)
step = 1e-6
worst = 0.0
for _ in range(200):
    a = float(rng.uniform(-2, 2))
    y = 1 if rng.random() < 0.5 else -1
    if abs(y * a - 1) < 1e-3:
        continue
    for spec in (hinge, sig):
        numeric = (loss_value(spec, a + step, y) - loss_value(spec, a - step, y)) / (2 * step)
        analytic = loss_grad(spec, a, y)
        if analytic:
            worst = max(worst, abs(numeric - analytic) / abs(analytic))
print(f"\nworst relative finite-difference error over 200 points: {worst:.2e}")
