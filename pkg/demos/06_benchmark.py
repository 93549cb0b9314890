"""The experiment harness end to end: config file, repeated runs, curve, CSV.

Writes everything under a temporary directory; when the real benchmark
datasets are present under data/ (see README), also runs one shipped
benchmark cell.
"""

import sys
import tempfile
from pathlib import Path

from mirrorkit import dump_libsvm, emit_csv, load_experiment_config, run_experiment
from common import teacher_split

workdir = Path(tempfile.mkdtemp(prefix="mirrorkit-demo-"))
train_set, test_set = teacher_split(150, 300, 15, seed=9, margin=0.02, noise=0.05)
(workdir / "train.svm").write_text(dump_libsvm(train_set))
(workdir / "test.svm").write_text(dump_libsvm(test_set))

config_path = workdir / "experiment.cfg"
config_path.write_text(f"""\
# synthetic benchmark: 5 seeded repetitions, learning curve on repetition 1
train_path = {workdir / 'train.svm'}
test_path = {workdir / 'test.svm'}
trainer = zeroone_reg
kernel = gaussian:0.5
loss = sigmoid01:1
lambda = 0.001
iterations = 5000
seed = 1
repetitions = 5
curve_every = 500
""")

config = load_experiment_config(config_path)
result = run_experiment(config, jobs=2)
print(f"per-run accuracies: {[f'{a:.4f}' for a in result.accuracies]}")
print(f"mean accuracy:      {result.mean_accuracy:.4f}")
print(f"wall time:          {result.wall_ms:.0f} ms")
print("curve (iteration, accuracy):")
for iteration, accuracy in result.curve:
    print(f"  {iteration:6d}  {accuracy:.4f}")

csv_path = workdir / "result.csv"
emit_csv(result, csv_path)
print(f"\nCSV written to {csv_path}:")
print(csv_path.read_text())

repo_root = Path(__file__).resolve().parent.parent
splice_config = repo_root / "configs" / "splice_pegasos_gaussian.cfg"
if (repo_root / "data" / "splice").is_file():
    print("real splice data found; running the shipped pegasos/gaussian cell...")
    cell = load_experiment_config(splice_config)
    cell_result = run_experiment(cell, jobs=5)
    print(f"splice pegasos gaussian mean accuracy: {cell_result.mean_accuracy:.6f}")
else:
    print("real datasets not present; to run the published benchmark cells, see README.")
    sys.exit(0)
