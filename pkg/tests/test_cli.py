import json
import subprocess
import sys

import numpy as np
import pytest

from spectralcut import cluster
from spectralcut.cli import main
from spectralcut.errors import all_error_types
from spectralcut.kernels import KernelSpec
from spectralcut.matrixio import write_matrix
from spectralcut.oracle import enumerate_best
from spectralcut.graph import AffinityGraph, Objective, ObjectiveSpec

TWO_EDGES = "unipartite 4 4 coo\n0 1 1\n1 0 1\n2 3 1\n3 2 1\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, (json.loads(out.out) if code == 0 else json.loads(out.err))


def test_two_edges_end_to_end(write, capsys):
    code, rep = run_json(capsys, ["cluster", "--input", write("g.txt", TWO_EDGES), "--kind", "uni", "--k", "2"])
    assert code == 0
    assert rep["assignments"] == [0, 0, 1, 1]
    best = enumerate_best(
        AffinityGraph.unipartite(np.kron(np.eye(2), [[0, 1], [1, 0]])), ObjectiveSpec(Objective.NASSOC), 2
    )
    assert rep["discrete_value"] == best.best_value == 1.0
    assert rep["relaxed_value"] == pytest.approx(1.0, abs=1e-12)


def test_identity_bipartite_pairs(write, capsys):
    path = write("a.txt", "bipartite 2 2 dense\n1 0\n0 1\n")
    code, rep = run_json(capsys, ["cluster", "--input", path, "--kind", "bi-direct", "--k", "2"])
    assert code == 0
    a = rep["assignments"]
    assert a[0] == a[2] and a[1] == a[3] and a[0] != a[1]
    assert rep["row_split"] == 2


def test_augmented_route_and_tsv(write, capsys):
    path = write("a.txt", "bipartite 2 2 dense\n1 0\n0 1\n")
    assert main(["cluster", "--input", path, "--kind", "bi-augmented", "--k", "2", "--format", "tsv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "vertex\tcluster\tside" in lines


def test_byte_identical_output(write, tmp_path):
    rng = np.random.default_rng(0)
    w = np.triu(rng.random((10, 10)), 1)
    w = w + w.T
    path = str(tmp_path / "w.txt")
    write_matrix(path, w, kind="unipartite", layout="dense")
    outs = []
    for i in range(2):
        out = tmp_path / f"out{i}.json"
        assert main(["cluster", "--input", path, "--kind", "uni", "--k", "3", "--seed", "5", "--output", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_gw_requires_phi(write, capsys):
    g = write("g.txt", TWO_EDGES)
    code, err = run_json(capsys, ["cluster", "--input", g, "--kind", "uni", "--k", "2", "--objective", "gwassoc"])
    assert code == 2 and err["error"] == "UsageError"
    phi = write("phi.txt", "1 2 1 2\n")
    code, _ = run_json(capsys, ["cluster", "--input", g, "--kind", "uni", "--k", "2", "--phi", phi])
    assert code == 2
    code, rep = run_json(
        capsys, ["cluster", "--input", g, "--kind", "uni", "--k", "2", "--objective", "gwassoc", "--phi", phi]
    )
    assert code == 0 and rep["objective"] == "gwassoc"


def test_kernel_conflicts_with_directed(write, capsys):
    g = write("d.txt", "directed 2 2\n0 1 1\n")
    code, err = run_json(capsys, ["cluster", "--input", g, "--kind", "dir", "--k", "1", "--kernel", "gauss"])
    assert code == 2 and "--kernel" in err["message"]


def test_kernel_path(write, capsys):
    data = write("x.txt", "bipartite 2 4 dense\n0 0.1 5 5.1\n0 0 5 5\n")
    code, rep = run_json(
        capsys, ["cluster", "--input", data, "--kind", "bi", "--k", "2", "--kernel", "gauss", "--kernel-params", "alpha=1"]
    )
    assert code == 0
    assert rep["kind"] == "kernel"
    assert rep["assignments"] == [0, 0, 1, 1]


def test_bad_kernel_params(write, capsys):
    data = write("x.txt", "bipartite 1 2 dense\n1 2\n")
    code, _ = run_json(capsys, ["cluster", "--input", data, "--kind", "bi", "--k", "1", "--kernel", "gauss", "--kernel-params", "d=2"])
    assert code == 2


def test_file_kind_mismatch(write, capsys):
    code, _ = run_json(capsys, ["cluster", "--input", write("g.txt", TWO_EDGES), "--kind", "dir", "--k", "2"])
    assert code == 2


def test_parse_error_exit_code(write, capsys):
    code, err = run_json(capsys, ["cluster", "--input", write("b.txt", "bipartite 3 3\n0 5 1.0\n"), "--kind", "bi", "--k", "1"])
    assert code == 29 and err["error"] == "ParseError" and err["line"] == 2


def test_missing_file_is_io_error(tmp_path, capsys):
    code, err = run_json(capsys, ["cluster", "--input", str(tmp_path / "nope"), "--kind", "uni", "--k", "1"])
    assert code == 3 and err["error"] == "IOError"


def test_zero_degree_and_regularization(write, capsys):
    g = write("g.txt", "unipartite 3 3\n0 1 1\n1 0 1\n")
    code, err = run_json(capsys, ["cluster", "--input", g, "--kind", "uni", "--k", "2"])
    assert code == 17 and err["error"] == "ZeroDegreeVertex"
    code, rep = run_json(capsys, ["cluster", "--input", g, "--kind", "uni", "--k", "2", "--regularize-degrees"])
    assert code == 0 and rep["assignments"] == [0, 0, 1]


def test_k_out_of_range(write, capsys):
    code, err = run_json(capsys, ["cluster", "--input", write("g.txt", TWO_EDGES), "--kind", "uni", "--k", "5"])
    assert code == 13


def test_timings_opt_in(write, capsys):
    g = write("g.txt", TWO_EDGES)
    _, rep = run_json(capsys, ["cluster", "--input", g, "--kind", "uni", "--k", "2", "--timings"])
    assert set(rep["timings_ms"]) == {"build", "embed", "round", "score"}


def test_verify_suites(capsys):
    assert main(["verify", "--suite", "kyfan", "--trials", "1000", "--seed", "7", "--instances", "5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)
    assert main(["verify", "--suite", "rowcol", "--instances", "5"]) == 0


def test_verify_max_n_cap(capsys):
    code = main(["verify", "--max-n", "13"])
    assert code == 24
    assert json.loads(capsys.readouterr().err)["error"] == "TooLarge"


def test_help_lists_distinct_exit_codes(capsys):
    with pytest.raises(SystemExit):
        main(["cluster", "--help"])
    text = capsys.readouterr().out
    codes = [cls.exit_code for cls in all_error_types()]
    assert len(set(codes)) == len(codes)
    assert not {0, 1, 2, 3} & set(codes)
    for cls in all_error_types():
        assert f"{cls.exit_code:>3}  {cls.__name__}" in text


def test_module_entry_point(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text(TWO_EDGES)
    out = subprocess.run(
        [sys.executable, "-m", "spectralcut", "cluster", "--input", str(path), "--kind", "uni", "--k", "2"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["assignments"] == [0, 0, 1, 1]


class TestPipeline:
    def test_directed_cycles(self):
        cyc = np.roll(np.eye(3), 1, axis=1)
        b = np.kron(np.eye(2), cyc)
        rep = cluster(b, "dir", "rassoc", 2)
        assert rep.assignments == [0, 0, 0, 1, 1, 1]

    def test_kernel_rejects_unipartite(self):
        with pytest.raises(ValueError):
            cluster(np.eye(3), "uni", "nassoc", 2, kernel=KernelSpec.gaussian(1.0))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            cluster(np.eye(3), "tri", "nassoc", 2)

    def test_discrete_not_above_relaxed(self):
        w = np.triu(np.random.default_rng(2).random((8, 8)), 1)
        rep = cluster(w + w.T, "uni", "nassoc", 3, seed=1)
        assert rep.discrete_value <= rep.relaxed_value + 1e-6
