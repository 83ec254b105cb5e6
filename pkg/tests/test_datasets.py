import random

import pytest

from entropy_outliers import MISSING_TOKEN
from entropy_outliers.datasets import (
    MALIGNANT_SAMPLE_SIZE,
    load_breast_cancer,
    load_lymphography,
    resample_breast_cancer,
)


def fake_lymphography(tmp_path, n=12):
    rng = random.Random(5)
    path = tmp_path / "lymphography.data"
    lines = []
    for i in range(n):
        klass = rng.choice(["1", "2", "2", "3", "3", "4"])
        lines.append(",".join([klass] + [str(rng.randrange(1, 4)) for _ in range(18)]))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def fake_breast_cancer(tmp_path, benign=20, malignant=50, missing=3):
    rng = random.Random(7)
    path = tmp_path / "breast-cancer-wisconsin.data"
    lines = []
    sample_id = 1000000
    for count, klass in ((benign, "2"), (malignant, "4")):
        for _ in range(count):
            attrs = [str(rng.randrange(1, 11)) for _ in range(9)]
            lines.append(",".join([str(sample_id)] + attrs + [klass]))
            sample_id += 1
    for i in range(missing):
        attrs = [str(rng.randrange(1, 11)) for _ in range(9)]
        attrs[5] = "?"
        lines.append(",".join([str(sample_id)] + attrs + ["2" if i % 2 else "4"]))
        sample_id += 1
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


class TestLymphographyLoader:
    def test_shape_and_labels(self, tmp_path):
        ds = load_lymphography(fake_lymphography(tmp_path))
        assert ds.m == 18
        assert set(ds.labels) <= {"1", "2", "3", "4"}

    def test_env_default_location(self, tmp_path, monkeypatch):
        fake_lymphography(tmp_path)
        monkeypatch.setenv("ENTROPY_OUTLIERS_DATA", str(tmp_path))
        assert load_lymphography().m == 18


class TestBreastCancerLoader:
    def test_id_column_dropped(self, tmp_path):
        ds = load_breast_cancer(fake_breast_cancer(tmp_path))
        assert ds.m == 9
        assert set(ds.labels) == {"2", "4"}
        # sample ids are unique per record; had the column survived, some
        # domain would be as large as the dataset
        assert max(len(a.domain) for a in ds.schema) < ds.n

    def test_missing_marker_parsed(self, tmp_path):
        ds = load_breast_cancer(fake_breast_cancer(tmp_path))
        assert any(MISSING_TOKEN in ds.record(i) for i in range(ds.n))


class TestResample:
    def test_composition(self, tmp_path):
        ds = load_breast_cancer(fake_breast_cancer(tmp_path))
        resampled = resample_breast_cancer(ds, seed=1)
        assert resampled.labels.count("4") == MALIGNANT_SAMPLE_SIZE
        assert resampled.labels.count("2") == 20  # every usable benign record
        assert all(MISSING_TOKEN not in resampled.record(i) for i in range(resampled.n))

    def test_seeded_determinism(self, tmp_path):
        ds = load_breast_cancer(fake_breast_cancer(tmp_path))
        one = resample_breast_cancer(ds, seed=3)
        two = resample_breast_cancer(ds, seed=3)
        other = resample_breast_cancer(ds, seed=4)
        assert one.labels == two.labels
        assert [one.record(i) for i in range(one.n)] == [
            two.record(i) for i in range(two.n)
        ]
        assert [one.record(i) for i in range(one.n)] != [
            other.record(i) for i in range(other.n)
        ]

    def test_not_enough_malignant(self, tmp_path):
        ds = load_breast_cancer(fake_breast_cancer(tmp_path, malignant=10))
        with pytest.raises(ValueError, match="malignant"):
            resample_breast_cancer(ds)

    def test_needs_labels(self, tmp_path):
        from entropy_outliers import load

        ds = load(fake_breast_cancer(tmp_path))
        with pytest.raises(ValueError, match="labels"):
            resample_breast_cancer(ds)
