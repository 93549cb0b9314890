"""Kernel evaluation, the composed 1/(1 - nu*K) kernel, and PSD validation."""

import numpy as np

from mirrorkit import KernelSpec, SparseVector, gram_matrix, kernel_eval, psd_check
from common import teacher_split

x = SparseVector.from_dict({1: 1.0})
y = SparseVector.from_dict({2: 1.0})

print("pointwise evaluations on orthonormal x, y:")
for text in ("linear", "gaussian:0.5", "improper:0.5:linear"):
    spec = KernelSpec.parse(text)
    print(f"  {text:22s} K(x,y)={kernel_eval(spec, x, y):.7f}  K(x,x)={kernel_eval(spec, x, x):.7f}")

# The composed kernel equals the geometric series sum_n (nu*K_base)^n.
train, _ = teacher_split(12, 1, 20, seed=4)
vectors = [s.features for s in train.samples]
base = gram_matrix(KernelSpec.gaussian(1.0), vectors)
closed = gram_matrix(KernelSpec.improper(0.5, KernelSpec.gaussian(1.0)), vectors)
series = sum((0.5 * base) ** n for n in range(61))
print(f"\ncomposed kernel vs 60-term series: max |diff| = {np.max(np.abs(closed - series)):.3e}")

print("\nPSD checks (smallest eigenvalue, tol 1e-8):")
for text in ("linear", "gaussian:0.5", "improper:0.5:gaussian:0.5", "improper:0.5:linear"):
    spec = KernelSpec.parse(text)
    report = psd_check(gram_matrix(spec, vectors))
    print(f"  {text:28s} min_eig={report.min_eigenvalue:+.3e}  {'PASS' if report.passed else 'FAIL'}")

indefinite = np.array([[1.0, 2.0], [2.0, 1.0]])
report = psd_check(indefinite)
print(f"\n[[1,2],[2,1]] is not a Gram matrix: min_eig={report.min_eigenvalue:+.1f} "
      f"{'PASS' if report.passed else 'FAIL'}")
