from dlplab import causal
from dlplab.fixtures import build_fixtures, run_fixtures


def test_all_fixtures_pass():
    report = run_fixtures()
    failed = [r.to_json() for r in report.results if r.passed is False]
    assert not failed
    assert report.ok


def test_fixture_names_are_unique():
    names = [f.name for f in build_fixtures()]
    assert len(names) == len(set(names))


def test_prx_fixture_is_gated_not_dropped():
    report = run_fixtures(["prx"])
    assert [r.to_json()["status"] for r in report.results] == ["skipped"]


def test_filtering_by_prefix():
    report = run_fixtures(["P1:"])
    assert {r.name for r in report.results} == {"P1:as", "P1:ju"}


def test_rejection_by_earlier_layers_breaks_fixtures(monkeypatch):
    original = causal.CompiledDlp.rejected

    def mutated(self, variant, j, sat=None):
        if variant != "ju":
            return original(self, variant, j, sat)
        sat = self.sat(j) if sat is None else sat
        return {k for k in range(len(self.rules))
                if any(sat[s] and self.layer[s] <= self.layer[k] for s in self.partners[k])}

    monkeypatch.setattr(causal.CompiledDlp, "rejected", mutated)
    report = run_fixtures()
    assert not report.ok
    assert report.counts()["fail"] >= 1


def test_dropping_expansion_breaks_the_strong_negation_fixture(monkeypatch):
    monkeypatch.setattr(causal, "expand", lambda dlp: dlp)
    report = run_fixtures(["intro-strong"])
    assert not report.ok


def test_markdown_summary():
    text = run_fixtures(["intro:"]).to_markdown()
    assert "| intro:ju | pass |" in text
    assert text.rstrip().endswith("0 failed, 0 skipped")
