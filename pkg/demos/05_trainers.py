"""The three kernel SGD trainers head to head, plus the loss-gap diagnostic."""

import numpy as np

from mirrorkit import (
    KernelSpec,
    LossSpec,
    TrainerConfig,
    evaluate_accuracy,
    oracle_gap_report,
    train,
)
from common import teacher_split

train_set, test_set = teacher_split(300, 600, 20, seed=12, margin=0.02, noise=0.05)
kernel = KernelSpec.gaussian(0.5)

CONFIGS = {
    "pegasos": TrainerConfig("pegasos", kernel, LossSpec.hinge(),
                             lam=0.001, iterations=20000, seed=1),
    "zeroone": TrainerConfig("zeroone", kernel, LossSpec.sigmoid01(1.0),
                             lam=2.0, iterations=20000, seed=1),
    "zeroone_reg": TrainerConfig("zeroone_reg", kernel, LossSpec.sigmoid01(1.0),
                                 lam=0.001, iterations=20000, seed=1),
}

models = {}
print(f"{'trainer':12s} {'train acc':>9} {'test acc':>9} {'support':>8} {'||w||':>8}")
for name, config in CONFIGS.items():
    model = train(config, train_set)
    models[name] = model
    print(f"{name:12s} {evaluate_accuracy(model, train_set):9.4f} "
          f"{evaluate_accuracy(model, test_set):9.4f} {model.support_size:8d} "
          f"{np.sqrt(max(model.norm_sq, 0)):8.4f}")

# Loss-gap diagnostic: how far is one model's mean test loss from another's,
# and is the gap covered by the objective gap plus the reference regularizer?
report = oracle_gap_report(models["pegasos"], models["zeroone_reg"], test_set,
                           LossSpec.sigmoid01(1.0), lam=0.001)
print("\nloss-gap report (pegasos vs zeroone_reg reference, sigmoid01 loss):")
print(f"  mean test loss:  model={report.loss_model:.5f}  reference={report.loss_reference:.5f}")
print(f"  regularizers:    model={report.reg_model:.6f}  reference={report.reg_reference:.6f}")
print(f"  loss gap {report.loss_gap:+.5f} <= objective gap {report.objective_gap:+.5f} "
      f"+ r_ref {report.reg_reference:.6f}  ->  holds={report.holds}")
