"""Parsing libsvm text, dataset statistics, and unit normalization."""

from mirrorkit import dataset_stats, dump_libsvm, normalize_unit, parse_libsvm

TEXT = """\
# a tiny hand-written dataset
+1 1:0.5 3:-2.0
-1 2:1.0 4:0.25   # inline comment
-1
+1 1:3 2:4
"""

ds = parse_libsvm(TEXT, name="tiny")
print(f"parsed {len(ds)} samples, feature_dim={ds.feature_dim}")
for sample in ds.samples:
    print(f"  label={sample.label:+d}  features={sample.features.to_dict()}")

stats = dataset_stats(ds)
print(f"\nstats: m={stats.sample_count} positives={stats.positives} "
      f"negatives={stats.negatives} negative_fraction={stats.negative_fraction:.2f}")

normalized = normalize_unit(ds)
print("\nafter normalize_unit (per-sample Euclidean norm 1):")
for sample in normalized.samples:
    norm = sample.features.norm()
    print(f"  label={sample.label:+d}  norm={norm:.6f}  {sample.features.to_dict()}")

round_trip = parse_libsvm(dump_libsvm(ds), name="tiny")
print(f"\nround-trip through dump_libsvm is loss-free: {round_trip == ds}")
