import csv
import dataclasses
import io

import numpy as np
import pytest

from mirrorkit import (
    CSV_HEADER,
    DualModel,
    ExperimentConfig,
    KernelSpec,
    LossSpec,
    RunResult,
    TrainerConfig,
    dump_libsvm,
    emit_csv,
    evaluate_accuracy,
    load_experiment_config,
    oracle_gap_report,
    parse_libsvm,
    run_experiment,
    train,
)

from .conftest import dataset_paths, requires_dataset, synthetic_split, synthetic_text


def write_split(tmp_path, seed=3, n_train=60, n_test=120, noise=0.05):
    text = synthetic_text(n_train + n_test, 10, seed, margin=0.05, noise=noise)
    lines = text.strip().split("\n")
    train_path = tmp_path / "train.svm"
    test_path = tmp_path / "test.svm"
    train_path.write_text("\n".join(lines[:n_train]) + "\n")
    test_path.write_text("\n".join(lines[n_train:]) + "\n")
    return train_path, test_path


def experiment(tmp_path, trainer="pegasos", loss="hinge", lam=0.01, iterations=800,
               seed=9, repetitions=3, curve_every=0, **kwargs):
    train_path, test_path = write_split(tmp_path, **kwargs)
    config = TrainerConfig(trainer, KernelSpec.gaussian(0.5), LossSpec.parse(loss),
                           lam=lam, iterations=iterations, seed=seed)
    return ExperimentConfig(str(train_path), str(test_path), config,
                            repetitions=repetitions, curve_every=curve_every)


class TestEvaluate:
    def test_perfect_model(self, toy_split):
        train_set, test_set = toy_split
        config = TrainerConfig("pegasos", KernelSpec.linear(), LossSpec.hinge(),
                               lam=0.005, iterations=4000, seed=1)
        model = train(config, train_set)
        assert evaluate_accuracy(model, train_set) == 1.0

    def test_empty_model_predicts_positive_class(self):
        dataset = parse_libsvm("+1 1:1\n-1 2:1\n-1 3:1\n-1 1:0.5\n")
        model = DualModel(np.zeros(len(dataset)), KernelSpec.linear(), dataset)
        assert evaluate_accuracy(model, dataset) == pytest.approx(0.25)

    def test_accuracy_in_unit_interval(self, toy_split):
        train_set, test_set = toy_split
        config = TrainerConfig("zeroone", KernelSpec.linear(), LossSpec.sigmoid01(1.0),
                               lam=0.5, iterations=200, seed=5)
        accuracy = evaluate_accuracy(train(config, train_set), test_set)
        assert 0.0 <= accuracy <= 1.0

    def test_kernel_domain_error_names_test_index(self):
        from mirrorkit import KernelDomainError, normalize_unit

        train_set = normalize_unit(parse_libsvm("+1 1:1\n-1 2:1\n"))
        model = DualModel(np.ones(2), KernelSpec.improper(0.5), train_set)
        oversized = parse_libsvm("+1 1:0.5\n-1 1:3 2:4\n")  # sample 1 has norm 5
        with pytest.raises(KernelDomainError, match="test sample 1"):
            evaluate_accuracy(model, oversized)


@requires_dataset("web")
def test_empty_model_on_web_matches_positive_fraction():
    from mirrorkit import load_libsvm

    train_path, test_path = dataset_paths("web")
    train_set = load_libsvm(train_path)
    test_set = load_libsvm(test_path)
    model = DualModel(np.zeros(len(train_set)), KernelSpec.linear(), train_set)
    # an all-zero model predicts +1 everywhere; ~97% of web samples are negative
    assert evaluate_accuracy(model, test_set) == pytest.approx(0.03, abs=0.01)


class TestRunExperiment:
    def test_single_sample_single_run(self, tmp_path):
        (tmp_path / "one.svm").write_text("+1 1:1\n")
        config = ExperimentConfig(
            str(tmp_path / "one.svm"), str(tmp_path / "one.svm"),
            TrainerConfig("pegasos", KernelSpec.linear(), LossSpec.hinge(),
                          lam=0.5, iterations=1, seed=0),
            repetitions=1,
        )
        result = run_experiment(config)
        assert result.accuracies[0] in (0.0, 1.0)

    def test_mean_and_seed_sequence(self, tmp_path):
        config = experiment(tmp_path, repetitions=3)
        result = run_experiment(config)
        assert len(result.accuracies) == 3
        assert result.mean_accuracy == pytest.approx(np.mean(result.accuracies), abs=1e-12)
        # repetition k must equal a solo run with seed seed+k
        solo = run_experiment(dataclasses.replace(
            config,
            trainer=dataclasses.replace(config.trainer, seed=config.trainer.seed + 2),
            repetitions=1,
        ))
        assert solo.accuracies[0] == result.accuracies[2]

    def test_deterministic_rerun(self, tmp_path):
        config = experiment(tmp_path)
        first = run_experiment(config)
        second = run_experiment(config)
        assert first.accuracies == second.accuracies
        assert first.curve == second.curve

    def test_jobs_do_not_change_results(self, tmp_path):
        config = experiment(tmp_path, repetitions=4)
        assert run_experiment(config, jobs=1).accuracies == run_experiment(config, jobs=4).accuracies

    def test_seed_isolation(self, tmp_path):
        config = experiment(tmp_path)
        moved = dataclasses.replace(
            config, trainer=dataclasses.replace(config.trainer, seed=100))
        first = run_experiment(config)
        second = run_experiment(moved)
        assert first.accuracies != second.accuracies

    def test_curve_collection(self, tmp_path):
        config = experiment(tmp_path, iterations=1000, curve_every=300)
        result = run_experiment(config)
        iterations = [t for t, _ in result.curve]
        assert iterations == [300, 600, 900, 1000]
        assert all(x < y for x, y in zip(iterations, iterations[1:]))
        assert result.curve[-1][1] == result.accuracies[0]

    def test_curve_endpoint_exact_when_multiple(self, tmp_path):
        config = experiment(tmp_path, iterations=900, curve_every=300)
        result = run_experiment(config)
        assert [t for t, _ in result.curve] == [300, 600, 900]
        assert result.curve[-1][1] == result.accuracies[0]

    def test_normalize_flag(self, tmp_path):
        train_path = tmp_path / "raw.svm"
        train_path.write_text("+1 1:3 2:4\n-1 1:-5\n")
        config = ExperimentConfig(
            str(train_path), str(train_path),
            TrainerConfig("pegasos", KernelSpec.improper(0.5), LossSpec.hinge(),
                          lam=0.1, iterations=50, seed=1),
            repetitions=1, normalize=True,
        )
        result = run_experiment(config)  # would raise without normalization
        assert 0.0 <= result.accuracies[0] <= 1.0

    def test_wall_time_grows_with_iterations(self, tmp_path):
        walls = []
        for iterations in (1000, 10000, 100000):
            config = experiment(tmp_path, iterations=iterations, repetitions=1,
                                n_train=30, n_test=30)
            walls.append(run_experiment(config).wall_ms)
        assert walls[0] < walls[1] < walls[2]


class TestOracleGap:
    def models(self):
        train_set, test_set = synthetic_split(40, 80, 8, seed=6, noise=0.1)
        pegasos = train(TrainerConfig("pegasos", KernelSpec.linear(), LossSpec.hinge(),
                                      lam=0.05, iterations=1500, seed=2), train_set)
        reg = train(TrainerConfig("zeroone_reg", KernelSpec.linear(), LossSpec.sigmoid01(1.0),
                                  lam=0.05, iterations=1500, seed=2), train_set)
        return pegasos, reg, test_set

    def test_model_equals_reference(self):
        model, _, test_set = self.models()
        report = oracle_gap_report(model, model, test_set, LossSpec.hinge(), lam=0.05)
        assert report.loss_gap == 0.0
        assert report.objective_gap == 0.0
        assert report.holds
        assert report.bound == pytest.approx(report.reg_reference)
        assert report.reg_reference >= 0.0

    def test_lambda_zero_degenerates(self):
        model, reference, test_set = self.models()
        report = oracle_gap_report(model, reference, test_set, LossSpec.sigmoid01(1.0), lam=0.0)
        assert report.reg_model == report.reg_reference == 0.0
        assert report.bound == pytest.approx(report.loss_gap)

    def test_cross_trainer_report(self):
        model, reference, test_set = self.models()
        report = oracle_gap_report(model, reference, test_set, LossSpec.sigmoid01(1.0), lam=0.05)
        assert np.isfinite(report.loss_gap)
        assert np.isfinite(report.bound)
        assert report.holds == (report.loss_gap <= report.bound + 1e-12)
        assert report.holds  # reg_model >= 0 makes the empirical analogue hold

    def test_kernel_mismatch_rejected(self):
        model, _, test_set = self.models()
        other = DualModel(model.alphas.copy(), KernelSpec.gaussian(1.0), model.train_set)
        with pytest.raises(ValueError, match="kernel"):
            oracle_gap_report(model, other, test_set, LossSpec.hinge())


class TestCsv:
    def result(self, accuracies=(0.75,), curve=(), iterations=100):
        return RunResult(
            accuracies=tuple(accuracies),
            mean_accuracy=float(np.mean(accuracies)),
            curve=tuple(curve),
            iterations=iterations,
            wall_ms=12.0,
            rep_wall_ms=tuple(1.0 for _ in accuracies),
        )

    def test_single_run_two_lines(self):
        buffer = io.StringIO()
        emit_csv(self.result(), buffer)
        lines = buffer.getvalue().strip().split("\n")
        assert len(lines) == 2
        assert lines[0] == CSV_HEADER
        assert lines[1] == "1,100,test,0.75,0"

    def test_five_runs_plus_hundred_checkpoints(self):
        curve = tuple((10 * (k + 1), 0.5) for k in range(100))
        buffer = io.StringIO()
        emit_csv(self.result(accuracies=(0.1, 0.2, 0.3, 0.4, 0.5), curve=curve, iterations=1000), buffer)
        assert len(buffer.getvalue().strip().split("\n")) == 106

    def test_round_trip_mean(self, tmp_path):
        config = experiment(tmp_path, repetitions=3)
        result = run_experiment(config)
        out = tmp_path / "result.csv"
        emit_csv(result, out)
        with out.open() as handle:
            rows = list(csv.DictReader(handle))
        finals = [float(r["accuracy"]) for r in rows[: config.repetitions]]
        assert np.mean(finals) == pytest.approx(result.mean_accuracy, abs=1e-6)

    def test_six_significant_digits(self):
        buffer = io.StringIO()
        emit_csv(self.result(accuracies=(0.123456789,)), buffer)
        assert "0.123457" in buffer.getvalue()


class TestConfigFile:
    def write(self, tmp_path, text):
        path = tmp_path / "exp.cfg"
        path.write_text(text)
        return path

    def base_text(self, tmp_path):
        return (
            f"# comment line\n"
            f"train_path = {tmp_path}/train.svm\n"
            f"test_path = {tmp_path}/test.svm\n"
            "trainer = zeroone_reg\n"
            "kernel = gaussian:0.01\n"
            "loss = sigmoid01:1\n"
            "lambda = 0.0006\n"
            "iterations = 100000\n"
            "seed = 1\n"
            "repetitions = 5\n"
            "curve_every = 0\n"
            "normalize = false\n"
        )

    def test_parse_full_config(self, tmp_path):
        config = load_experiment_config(self.write(tmp_path, self.base_text(tmp_path)))
        assert config.trainer.trainer == "zeroone_reg"
        assert config.trainer.kernel == KernelSpec.gaussian(0.01)
        assert config.trainer.loss == LossSpec.sigmoid01(1.0)
        assert config.trainer.lam == 0.0006
        assert config.trainer.iterations == 100000
        assert config.repetitions == 5
        assert config.curve_every == 0
        assert config.normalize is False

    def test_unknown_key_rejected(self, tmp_path):
        path = self.write(tmp_path, self.base_text(tmp_path) + "mystery = 1\n")
        with pytest.raises(ValueError, match="unknown key"):
            load_experiment_config(path)

    def test_missing_key_rejected(self, tmp_path):
        text = "\n".join(line for line in self.base_text(tmp_path).split("\n")
                         if not line.startswith("lambda"))
        with pytest.raises(ValueError, match="missing"):
            load_experiment_config(self.write(tmp_path, text))

    def test_duplicate_key_rejected(self, tmp_path):
        path = self.write(tmp_path, self.base_text(tmp_path) + "seed = 2\n")
        with pytest.raises(ValueError, match="duplicate"):
            load_experiment_config(path)

    def test_invariants_enforced(self, tmp_path):
        text = self.base_text(tmp_path).replace("repetitions = 5", "repetitions = 0")
        with pytest.raises(ValueError):
            load_experiment_config(self.write(tmp_path, text))
