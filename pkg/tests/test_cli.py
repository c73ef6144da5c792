import csv
import io
import json
from fractions import Fraction

import numpy as np
import pytest

from ffradial.ambient import AmbientSpace, PointSet, random_subset
from ffradial.cli import main
from ffradial.grassmann import enumerate_grassmannian
from ffradial.projections import QuotientMap
from ffradial.errors import ConfigInvalid, HeaderMismatch, ParseError
from ffradial.experiment import (ExperimentConfig, cells, generate_set, run_experiment,
                                 summarize)
from ffradial.pointfile import (format_pointset, parse_pointset, parse_pointset_text,
                                write_pointset)
from ffradial.theorems import TheoremId


# -- point-set files ---------------------------------------------------------------

def test_pointset_roundtrip(tmp_path):
    space = AmbientSpace(5, 3)
    E = random_subset(space, 30, np.random.default_rng(0))
    path = tmp_path / "e.txt"
    write_pointset(path, E)
    assert path.read_text().startswith("# q=5 n=3\n")
    assert parse_pointset(path) == E
    assert parse_pointset(path, space) == E


def test_pointset_text_format():
    E = PointSet.from_points(AmbientSpace(3, 2), [(2, 1), (0, 0)])
    assert format_pointset(E) == "# q=3 n=2\n0,0\n2,1\n"


def test_pointset_parse_errors():
    with pytest.raises(ParseError) as exc:
        parse_pointset_text("# q=3 n=2\n0,0\n3,1\n")
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        parse_pointset_text("# q=3 n=2\n0,0,1\n")
    with pytest.raises(ParseError):
        parse_pointset_text("q=3 n=2\n")
    with pytest.raises(ParseError):
        parse_pointset_text("# q=6 n=2\n")
    with pytest.raises(HeaderMismatch):
        parse_pointset_text("# q=3 n=2\n", AmbientSpace(3, 3))


def test_pointset_empty_body():
    E = parse_pointset_text("# q=4 n=2\n")
    assert len(E) == 0 and E.space == AmbientSpace(4, 2)


# -- instance families --------------------------------------------------------------

@pytest.mark.parametrize("family", ["random", "plane_subset", "plane_union", "full_plane"])
def test_families(family):
    space = AmbientSpace(4, 3)
    E = generate_set(space, family, 10, 2, np.random.default_rng(1))
    assert len(E) == (16 if family == "full_plane" else 10)


def test_plane_union_is_union_of_parallel_lines():
    space = AmbientSpace(5, 2)
    E = generate_set(space, "plane_union", 15, 1, np.random.default_rng(2))
    # some line direction splits E into exactly three full cosets
    fills = []
    for gamma in enumerate_grassmannian(space, 1):
        counts = QuotientMap(gamma).fiber_counts(E)
        fills.append(sorted(counts[counts > 0].tolist()))
    assert [5, 5, 5] in fills


# -- experiment runner ---------------------------------------------------------------

def test_zero_trials():
    cfg = ExperimentConfig(TheoremId.LargeESC, q=[7], n=[2], size=[45], M=[1], trials=0)
    reports = list(run_experiment(cfg))
    assert reports == []
    s = summarize(reports, cfg.theorem)
    assert s.ok and s.reports == 0


def test_deterministic_and_jobs_independent():
    kw = dict(theorem=TheoremId.WeakProjBound, q=[5, 7], n=[2], size=[10, 20], C=[2, 3],
              trials=3, seed=17)
    a = [r.to_dict() for r in run_experiment(ExperimentConfig(**kw))]
    b = [r.to_dict() for r in run_experiment(ExperimentConfig(**kw))]
    c = [r.to_dict() for r in run_experiment(ExperimentConfig(**kw, jobs=4))]
    assert json.dumps(a) == json.dumps(b) == json.dumps(c)
    assert all(r["holds"] for r in a)


def test_expectation_grid_all_hold():
    cfg = ExperimentConfig(TheoremId.ExpectationIdentity, q=[2, 3], n=[2, 3], trials=3, seed=1)
    reports = list(run_experiment(cfg))
    assert len(reports) == len(cells(cfg)) * 3
    assert all(r.holds for r in reports)


def test_skips_are_recorded_not_fatal():
    cfg = ExperimentConfig(TheoremId.FullDimLargeESC, q=[7], n=[3], k=[1], size=[40], M=[1],
                           trials=2)
    s = summarize(run_experiment(cfg), cfg.theorem)
    assert s.skipped == 2 and s.checked == 0 and s.ok
    cfg = ExperimentConfig(TheoremId.RadialConjecture, q=[3], n=[2], k=[1], size=[5],
                           family="plane_subset", trials=1)
    (r,) = run_experiment(cfg)
    assert not r.preconditions_met and "SizeTooLarge" in r.note


@pytest.mark.parametrize("kw", [
    dict(q=[6], n=[2]),
    dict(q=[], n=[2]),
    dict(q=[64], n=[5]),
    dict(q=[3], n=[2], family="cubes"),
    dict(q=[3], n=[2], size=[]),
])
def test_config_invalid(kw):
    kw.setdefault("size", [3])
    with pytest.raises(ConfigInvalid):
        list(run_experiment(ExperimentConfig(TheoremId.RadialConjecture, **kw)))


def test_missing_parameter_ranges():
    with pytest.raises(ConfigInvalid):
        list(run_experiment(ExperimentConfig(TheoremId.LargeESC, q=[7], n=[2], size=[45])))
    with pytest.raises(ConfigInvalid):
        list(run_experiment(ExperimentConfig(TheoremId.WeakProjBound, q=[7], n=[2], size=[5])))


# -- command line ---------------------------------------------------------------------

def run_cli(args, capsys):
    code = main(args)
    return code, capsys.readouterr().out


def test_cli_verify_json(capsys):
    code, out = run_cli(["verify", "weak-proj-bound", "--q", "3,5", "--n", "2", "--size", "6",
                         "--C", "3/2,2", "--trials", "2", "--seed", "4"], capsys)
    rows = [json.loads(line) for line in out.splitlines()]
    # two fields, two constants, k in {0, 1}, two trials
    assert code == 0
    assert rows[-1]["summary"] and rows[-1]["violations"] == 0 and rows[-1]["checked"] == 16
    assert Fraction(rows[0]["C"]) == Fraction(3, 2)
    assert all(Fraction(r["rhs"]) > Fraction(r["lhs"]) for r in rows[:-1])


def test_cli_verify_csv_and_jobs(tmp_path, capsys):
    base = ["verify", "LargeESC", "--q", "7,8", "--n", "2", "--size", "48:49", "--M", "1",
            "--trials", "3", "--format", "csv"]
    outs = []
    for jobs in ("1", "3"):
        path = tmp_path / f"out{jobs}.csv"
        assert main(base + ["--jobs", jobs, "--output", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    rows = list(csv.DictReader(io.StringIO(outs[0].decode().split("\n# ")[0])))
    assert len(rows) == 12
    assert {r["holds"] for r in rows} == {"True"}


def test_cli_env_output_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("FFRADIAL_OUTPUT_DIR", str(tmp_path))
    assert main(["grassmannian", "count", "--q", "2", "--n", "4", "--k", "2"]) == 0
    assert (tmp_path / "grassmannian.json").read_text() == "35\n"


def test_cli_grassmannian(capsys):
    code, out = run_cli(["grassmannian", "enum", "--q", "3", "--n", "3", "--k", "1"], capsys)
    assert code == 0 and len(out.splitlines()) == 13
    code, out = run_cli(["grassmannian", "sample", "--q", "3", "--n", "3", "--k", "2",
                         "--trials", "4", "--seed", "1"], capsys)
    assert len(out.splitlines()) == 4 and out.startswith("G(3,3,2):")


def test_cli_gen_project_radial(tmp_path, capsys):
    pts = tmp_path / "e.txt"
    assert main(["gen", "--q", "5", "--n", "3", "--size", "20", "--seed", "3",
                 "--output", str(pts)]) == 0
    E = parse_pointset(pts)
    assert len(E) == 20
    code, out = run_cli(["project", "--q", "5", "--n", "3", "--input", str(pts),
                         "--gamma", "G(5,3,1):1,2,3"], capsys)
    P = parse_pointset_text(out)
    assert P.space.n == 2 and len(P) <= 20
    code, out = run_cli(["radial", "--q", "5", "--n", "3", "--input", str(pts),
                         "--center", "0,0,0"], capsys)
    row = json.loads(out)
    assert row["size"] == len(row["directions"].split(";"))
    code, out = run_cli(["radial", "--q", "5", "--n", "3", "--input", str(pts),
                         "--format", "csv"], capsys)
    assert len(out.splitlines()) == 126


def test_cli_pipeline_and_expectation(capsys):
    code, out = run_cli(["pipeline", "--q", "5", "--n", "3", "--k", "2", "--size", "20",
                         "--seed", "2"], capsys)
    trace = json.loads(out)
    assert code == 0 and trace["checks"]["containment"]
    code, out = run_cli(["pipeline", "--q", "7", "--n", "3", "--k", "1", "--size", "40",
                         "--M", "1", "--mode", "fulldim", "--relaxed", "--family",
                         "plane_union"], capsys)
    assert code == 0
    code, out = run_cli(["expectation", "--q", "3", "--n", "3", "--k", "1", "--size", "7"],
                        capsys)
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and rows[0]["lhs"] == rows[0]["closed_form"]


def test_cli_errors(capsys):
    assert main(["pipeline", "--q", "3", "--n", "2", "--k", "1", "--size", "5"]) == 2
    assert "PreconditionViolated" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        main(["verify", "NoSuchTheorem", "--q", "3", "--n", "2"])
