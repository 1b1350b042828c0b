"""Tests for result persistence."""

import csv
import hashlib
import json
import shutil
import tempfile
from pathlib import Path

import pytest

from src.harness import ExperimentConfig, Relation, run_experiment
from src.persistence import (
    CSV_HEADER,
    RESULT_FORMAT_VERSION,
    ResultSerializer,
    ResultStore,
    canonical_json,
    csv_rows,
)
from src.utils.exceptions import ResultCorruptionError, ResultNotFoundError, ResultParseError


@pytest.fixture(scope="module")
def result():
    cfg = ExperimentConfig("mean_distance", "so-(5)", replicas=4, master_seed=3,
                           discretization=40)
    return run_experiment(cfg, max_workers=1)


@pytest.fixture
def temp_dir():
    """Create a temporary results directory."""
    temp = tempfile.mkdtemp()
    yield Path(temp)
    shutil.rmtree(temp)


@pytest.fixture
def store(temp_dir):
    return ResultStore(temp_dir)


def rewrite(path: Path, mutate) -> None:
    """Apply ``mutate`` to the stored result and refresh its checksum."""
    envelope = json.loads(path.read_text())
    mutate(envelope)
    envelope["checksum"] = hashlib.sha256(
        canonical_json(envelope["result"]).encode("utf-8")).hexdigest()
    path.write_text(json.dumps(envelope, indent=2, sort_keys=True))


class TestPersist:
    def test_default_filename(self, store, result):
        assert store.default_filename(result) == "mean_distance_soneg5_m1_seed3.json"

    def test_writes_json_and_csv(self, store, temp_dir, result):
        path = store.persist(result)
        assert path == temp_dir / "mean_distance_soneg5_m1_seed3.json"
        assert path.exists()
        assert path.with_suffix(".csv").exists()

    def test_explicit_json_path(self, store, temp_dir, result):
        path = store.persist(result, temp_dir / "nested" / "run.json")
        assert path == temp_dir / "nested" / "run.json"
        assert (temp_dir / "nested" / "run.csv").exists()

    def test_directory_path(self, store, temp_dir, result):
        path = store.persist(result, temp_dir / "out")
        assert path.parent == temp_dir / "out"

    def test_envelope(self, store, result):
        envelope = json.loads(store.persist(result).read_text())
        assert envelope["version"] == RESULT_FORMAT_VERSION
        assert set(envelope) == {"version", "timestamp", "checksum", "result"}

    def test_csv_summary(self, store, result):
        path = store.persist(result).with_suffix(".csv")
        with open(path, newline="") as f:
            rows = list(csv.reader(f))
        assert rows[0] == CSV_HEADER
        assert rows[0] == ["experiment", "group", "N", "m", "p", "theta", "replicas", "seed",
                           "value", "bound", "pass"]
        assert len(rows) == 1 + len(result.comparisons)
        assert rows[1][:4] == ["mean_distance", "so-(5)", "5", "1"]

    def test_csv_rows(self, result):
        rows = csv_rows(result)
        assert len(rows) == len(result.comparisons)
        assert rows[0][-1] == result.comparisons[0].passed


class TestLoad:
    def test_round_trip(self, store, result):
        loaded = store.load(store.persist(result))
        assert loaded.config == result.config
        assert loaded.records == result.records
        assert loaded.summary == result.summary
        assert loaded.comparisons == result.comparisons
        assert loaded.provenance == result.provenance
        assert ResultSerializer.fingerprint(loaded) == ResultSerializer.fingerprint(result)
        assert loaded.recheck()

    def test_not_found(self, store, temp_dir):
        with pytest.raises(ResultNotFoundError, match="not found"):
            store.load(temp_dir / "missing.json")

    def test_checksum_mismatch(self, store, result):
        path = store.persist(result)
        envelope = json.loads(path.read_text())
        envelope["result"]["summary"]["mean"] = -1.0
        path.write_text(json.dumps(envelope, indent=2, sort_keys=True))
        with pytest.raises(ResultCorruptionError, match="corrupted"):
            store.load(path)

    def test_invalid_json(self, store, temp_dir):
        path = temp_dir / "broken.json"
        path.write_text('{\n  "version": ,\n}\n')
        with pytest.raises(ResultParseError) as excinfo:
            store.load(path)
        assert excinfo.value.field == "json"
        assert excinfo.value.line == 2

    def test_missing_envelope_field(self, store, temp_dir):
        path = temp_dir / "partial.json"
        path.write_text(json.dumps({"version": 2, "result": {}}))
        with pytest.raises(ResultParseError) as excinfo:
            store.load(path)
        assert excinfo.value.field == "timestamp"

    def test_missing_result_field_reports_line(self, store, result):
        path = store.persist(result)
        rewrite(path, lambda envelope: envelope["result"].pop("summary"))
        with pytest.raises(ResultParseError) as excinfo:
            store.load(path)
        assert excinfo.value.field == "summary"
        lines = path.read_text().splitlines()
        assert '"result":' in lines[excinfo.value.line - 1]

    def test_missing_comparison_field(self, store, result):
        path = store.persist(result)
        rewrite(path, lambda envelope: envelope["result"]["comparisons"][0].pop("bound"))
        with pytest.raises(ResultParseError) as excinfo:
            store.load(path)
        assert excinfo.value.field == "comparisons[0].bound"
        lines = path.read_text().splitlines()
        assert '"comparisons":' in lines[excinfo.value.line - 1]

    def test_bad_relation(self, store, result):
        path = store.persist(result)

        def mutate(envelope):
            envelope["result"]["comparisons"][0]["relation"] = "=="

        rewrite(path, mutate)
        with pytest.raises(ResultParseError) as excinfo:
            store.load(path)
        assert excinfo.value.field == "result"
        assert excinfo.value.line is not None


class TestMigration:
    def test_version_one(self, store, result):
        path = store.persist(result)

        def downgrade(envelope):
            envelope["version"] = 1
            data = envelope["result"]
            for comparison in data["comparisons"]:
                comparison.pop("relation")
                comparison.pop("slack")
            data.pop("p_values")
            data.pop("provenance")

        rewrite(path, downgrade)
        loaded = store.load(path)
        assert all(c.relation is Relation.AT_MOST for c in loaded.comparisons)
        assert all(c.slack == 0.0 for c in loaded.comparisons)
        assert loaded.p_values == {}
        assert loaded.provenance == {}


class TestListResults:
    def test_empty(self, store):
        assert store.list_results() == []

    def test_lists_json_only(self, store, result):
        store.persist(result)
        listed = store.list_results()
        assert [entry["filename"] for entry in listed] == ["mean_distance_soneg5_m1_seed3.json"]
        assert listed[0]["size"] > 0
