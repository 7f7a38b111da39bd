"""Session lifecycle: actions, history, best-so-far, persistence."""

import json

import numpy as np
import pytest

from featbench.jsonio import round_floats
from featbench.model import N_TREES_RANGE
from featbench.session import (
    ACTION_KINDS,
    Action,
    Session,
    SessionConfig,
    SessionError,
    combined_score,
    load_session,
)
from featbench.slicing import SLICES

from .conftest import make_config, write_fixture_csv


@pytest.fixture(scope="module")
def base_session(tmp_path_factory):
    csv = write_fixture_csv(tmp_path_factory.mktemp("sess") / "d.csv")
    return Session.from_config(make_config(csv))


@pytest.fixture
def fresh_session(tmp_path):
    csv = write_fixture_csv(tmp_path / "d.csv")
    return Session.from_config(make_config(csv))


class TestBaseline:
    def test_state_zero(self, base_session):
        s = base_session
        assert s.actions == []
        assert len(s.metrics_history) == 1
        row = s.metrics_history[0]
        assert row["ordinal"] == 0
        assert row["kind"] == "Baseline"
        assert row["became_best"] is True
        assert row["n_active"] == 4
        assert s.best.ordinal == 0
        np.testing.assert_allclose(row["combined"], combined_score(s.state.report), rtol=1e-15)

    def test_partition_covers_dataset(self, base_session):
        part = base_session.partition
        assert sum(part.counts.values()) == 60
        assert set(part.counts) == set(SLICES)

    def test_search_happened(self, base_session):
        assert len(base_session.state.trials) == 2
        assert N_TREES_RANGE[0] <= base_session.state.params.n_trees <= N_TREES_RANGE[1]

    def test_table_covers_actives(self, base_session):
        assert base_session.table.features == ("f1", "f2", "f3", "f4")
        assert base_session.table.active == (True,) * 4


class TestActions:
    def test_exclude_then_include_roundtrip(self, fresh_session):
        s = fresh_session
        s.apply_action({"kind": "Exclude", "feature": "f4"})
        assert s.dataset.active_names == ("f1", "f2", "f3")
        assert s.actions[-1].ordinal == 1
        assert s.actions[-1].subject == "f4"
        s.apply_action({"kind": "Include", "feature": "f4"})
        assert s.dataset.active_names == ("f1", "f2", "f3", "f4")
        assert [a.ordinal for a in s.actions] == [1, 2]
        assert len(s.metrics_history) == 3

    def test_exclude_excluded_rejected_atomically(self, fresh_session):
        s = fresh_session
        s.apply_action({"kind": "Exclude", "feature": "f4"})
        before = (s.dataset, s.state, len(s.actions), s.table)
        with pytest.raises(SessionError, match="already excluded"):
            s.apply_action({"kind": "Exclude", "feature": "f4"})
        assert (s.dataset, s.state, len(s.actions), s.table) == before

    def test_include_active_rejected(self, fresh_session):
        with pytest.raises(SessionError, match="already active"):
            fresh_session.apply_action({"kind": "Include", "feature": "f1"})

    def test_transform_adds_suffixed_and_retires_source(self, fresh_session):
        s = fresh_session
        report = s.apply_action({"kind": "Transform", "feature": "f1", "transform": "l2"})
        assert "f1_l2" in s.dataset.active_names
        assert "f1" not in s.dataset.active_names
        assert s.actions[-1].subject == "f1_l2"
        assert report is s.state.report

    def test_inapplicable_transform_is_atomic(self, fresh_session):
        s = fresh_session
        n_before = s.dataset.n_features
        with pytest.raises(Exception, match="inapplicable"):
            s.apply_action({"kind": "Transform", "feature": "f2", "transform": "l2"})
        assert s.dataset.n_features == n_before
        assert s.actions == []

    def test_disabled_transform_rejected(self, tmp_path):
        csv = write_fixture_csv(tmp_path / "d.csv")
        s = Session.from_config(make_config(csv, transforms=("p2", "z")))
        with pytest.raises(SessionError, match="not enabled"):
            s.apply_action({"kind": "Transform", "feature": "f1", "transform": "l2"})

    def test_generate_adopts_named_candidate(self, fresh_session):
        s = fresh_session
        s.apply_action({"kind": "Generate", "sources": ["f1", "f2"], "adopt": "f1×f2"})
        assert "f1×f2" in s.dataset.active_names
        d = s.dataset.descriptor("f1×f2")
        assert d.kind == "generated"
        # sources stay active alongside the generated column
        assert s.dataset.descriptor("f1").active

    def test_generate_unknown_candidate_lists_valid_names(self, fresh_session):
        with pytest.raises(SessionError, match=r"not among generated candidates.*f1\+f2"):
            fresh_session.apply_action(
                {"kind": "Generate", "sources": ["f1", "f2"], "adopt": "f1@f2"}
            )

    def test_unknown_kind_rejected(self, fresh_session):
        with pytest.raises(SessionError, match="unknown action kind"):
            fresh_session.apply_action({"kind": "Remove", "feature": "f1"})
        assert ACTION_KINDS == ("Include", "Exclude", "Transform", "Generate")

    def test_best_so_far_never_decreases(self, fresh_session):
        s = fresh_session
        best_values = [s.best.combined]
        for request in (
            {"kind": "Exclude", "feature": "f4"},
            {"kind": "Transform", "feature": "f1", "transform": "l2"},
            {"kind": "Include", "feature": "f4"},
        ):
            s.apply_action(request)
            best_values.append(s.best.combined)
            assert s.best.combined >= best_values[-2]
            assert s.best.combined >= s.metrics_history[0]["combined"]
        # the recorded best matches the max of the history
        assert s.best.combined == max(r["combined"] for r in s.metrics_history)

    def test_history_flags_best_rows(self, fresh_session):
        s = fresh_session
        s.apply_action({"kind": "Exclude", "feature": "f4"})
        row = s.metrics_history[-1]
        assert row["became_best"] == (row["combined"] > s.metrics_history[0]["combined"])


class TestSelectorExpansion:
    def test_lowest_average_matches_table_order(self, base_session):
        s = base_session
        expanded = s.expand_request({"kind": "Exclude", "select": {"lowest_average": 2}})
        ranked = sorted(range(4), key=lambda i: (s.table.average[i], i))
        want = [s.table.features[i] for i in ranked[:2]]
        assert [r["feature"] for r in expanded] == want
        assert all(r["kind"] == "Exclude" for r in expanded)

    def test_count_bounds(self, base_session):
        with pytest.raises(SessionError, match="out of range"):
            base_session.expand_request({"kind": "Exclude", "select": {"lowest_average": 0}})
        with pytest.raises(SessionError, match="out of range"):
            base_session.expand_request({"kind": "Exclude", "select": {"lowest_average": 4}})

    def test_selector_only_for_exclude(self, base_session):
        with pytest.raises(SessionError, match="unsupported selector"):
            base_session.expand_request({"kind": "Include", "select": {"lowest_average": 1}})

    def test_plain_request_passes_through(self, base_session):
        req = {"kind": "Exclude", "feature": "f4"}
        assert base_session.expand_request(req) == [req]

    def test_apply_script_expands_and_wraps_errors(self, fresh_session):
        s = fresh_session
        reports = s.apply_script([{"kind": "Exclude", "select": {"lowest_average": 2}}])
        assert len(reports) == 2
        assert len(s.actions) == 2
        with pytest.raises(SessionError, match="script step 1 failed"):
            s.apply_script([
                {"kind": "Exclude", "feature": "f1"},
                {"kind": "Exclude", "feature": "no_such"},
            ])
        # step 0 of the failing script still committed
        assert len(s.actions) == 3


class TestReadSurfaces:
    def test_statistics_keys_and_cache(self, base_session):
        bundle = base_session.statistics()
        assert set(bundle) == {"All", "Worst", "Bad", "Good", "Best"}
        assert bundle["All"] is not None
        assert base_session.statistics() is bundle

    def test_set_thresholds_repartitions_without_retraining(self, fresh_session):
        s = fresh_session
        state_before = s.state
        bundle_before = s.statistics()
        part = s.set_thresholds(10.0, 90.0)
        assert s.state is state_before  # no retraining
        assert sum(part.counts.values()) == 60
        assert s.thresholds.low == 10.0
        assert s.statistics() is not bundle_before  # cache dropped

    def test_set_thresholds_validates(self, fresh_session):
        with pytest.raises(ValueError, match="out of range"):
            fresh_session.set_thresholds(50.0, 75.0)
        assert fresh_session.thresholds.low == 25.0

    def test_feature_graph_slice_handling(self, base_session):
        assert isinstance(base_session.feature_graph("All", min_cor=0.0), list)
        with pytest.raises(SessionError, match="unknown slice"):
            base_session.feature_graph("Everything")

    def test_list_transforms_reports_applicability(self, base_session):
        entries = base_session.list_transforms("f2")  # has negatives
        by_id = {e["id"]: e for e in entries}
        assert by_id["l2"]["applicable"] is False
        assert "requires all values" in by_id["l2"]["reason"]
        assert by_id["p2"]["applicable"] is True
        assert by_id["p2"]["reason"] is None

    def test_generate_candidates_preview_does_not_mutate(self, base_session):
        s = base_session
        names_before = s.dataset.feature_names
        cands, table = s.generate_candidates(["f1", "f2"])
        assert len(cands) == 6
        assert s.dataset.feature_names == names_before
        # extended table appends valid candidates as inactive rows
        extra = [f for f in table.features if f not in names_before]
        assert set(extra) == {c.name for c in cands if c.valid}
        flags = dict(zip(table.features, table.active))
        assert all(flags[e] is False for e in extra)
        assert all(flags[n] is True for n in ("f1", "f2", "f3", "f4"))


class TestPersistence:
    def test_save_load_replay_bitwise(self, tmp_path):
        csv = write_fixture_csv(tmp_path / "d.csv")
        s = Session.from_config(make_config(csv))
        s.apply_script([
            {"kind": "Exclude", "feature": "f4"},
            {"kind": "Transform", "feature": "f1", "transform": "l2"},
        ])
        s.set_thresholds(20.0, 80.0)
        p1 = s.save(tmp_path / "one.json")
        s2 = load_session(p1)
        p2 = s2.save(tmp_path / "two.json")
        assert p1.read_bytes() == p2.read_bytes()
        assert s2.thresholds == s.thresholds
        assert [a.request for a in s2.actions] == [a.request for a in s.actions]
        for a, b in zip(s.metrics_history, s2.metrics_history):
            assert a == b

    def test_load_rejects_corrupt_file(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        with pytest.raises(SessionError, match="corrupt"):
            load_session(bad)

    def test_load_rejects_missing_fields(self, tmp_path):
        f = tmp_path / "m.json"
        f.write_text(json.dumps({"version": 1}), encoding="utf-8")
        with pytest.raises(SessionError, match="missing required fields"):
            load_session(f)

    def test_load_rejects_wrong_version(self, tmp_path, fresh_session):
        p = fresh_session.save(tmp_path / "s.json")
        doc = json.loads(p.read_text())
        doc["version"] = 99
        p.write_text(json.dumps(doc), encoding="utf-8")
        with pytest.raises(SessionError, match="version 99"):
            load_session(p)

    def test_config_file_roundtrip(self, tmp_path):
        csv = write_fixture_csv(tmp_path / "d.csv")
        cfg = make_config(csv, transforms=("l2", "p2"), freeze_params_after_baseline=True)
        f = tmp_path / "cfg.json"
        f.write_text(json.dumps(cfg.to_dict()), encoding="utf-8")
        assert SessionConfig.from_file(f) == cfg

    def test_config_file_invalid_json(self, tmp_path):
        f = tmp_path / "cfg.json"
        f.write_text("[oops", encoding="utf-8")
        with pytest.raises(SessionError, match="not valid JSON"):
            SessionConfig.from_file(f)


class TestExport:
    def test_export_best_roundtrips_values(self, tmp_path):
        csv = write_fixture_csv(tmp_path / "d.csv")
        s = Session.from_config(make_config(csv))
        s.apply_action({"kind": "Transform", "feature": "f1", "transform": "l2"})
        csv_path, sidecar_path = s.export_best(tmp_path / "out")
        lines = csv_path.read_text().strip().split("\n")
        ds = s.best.dataset
        header = lines[0].split(",")
        assert header == list(ds.active_names) + ["label"]
        assert len(lines) == 61
        first = lines[1].split(",")
        for j, name in enumerate(ds.active_names):
            assert float(first[j]) == ds.column(name)[0]  # repr round-trips exactly
        assert first[-1] == str(int(ds.target[0]))

        sidecar = json.loads(sidecar_path.read_text())
        assert sidecar["best_ordinal"] == s.best.ordinal
        assert sidecar["class_names"] == ["hi", "lo"]
        assert sidecar["best_params"] == round_floats(s.best.params.to_dict())
        assert len(sidecar["actions"]) == s.best.ordinal
        by_name = {f["name"]: f for f in sidecar["features"]}
        if "f1_l2" in by_name:  # present when the transform action won
            assert by_name["f1_l2"]["lineage"] == {"source": "f1", "transform": "l2"}


class TestFreeze:
    def test_params_fixed_after_baseline(self, tmp_path):
        csv = write_fixture_csv(tmp_path / "d.csv")
        s = Session.from_config(make_config(csv, freeze_params_after_baseline=True))
        baseline_params = s.state.params
        s.apply_action({"kind": "Exclude", "feature": "f4"})
        assert s.state.params == baseline_params
        assert s.state.trials == []  # no search ran
        s.apply_action({"kind": "Include", "feature": "f4"})
        assert s.state.params == baseline_params


class TestActionValidation:
    def test_action_kind_checked_at_construction(self):
        with pytest.raises(SessionError, match="unknown action kind"):
            Action(ordinal=1, kind="Tweak", subject="x", request={}, report=None, became_best=False)
