from __future__ import annotations

import pytest

from tjurina import corpus, oracle
from tjurina.oracle import NodalConfiguration

# values computed once by the exact engine and the independent oracles, then frozen
FROZEN = {
    "exB-d5": (1, 1, 12),
    "exB-d6": (1, 1, 20),
    "exB-d7": (1, 1, 30),
    "fermat-n2-d3": (2, None, 0),
    "fermat-n2-d4": (3, None, 0),
    "fermat-n2-d5": (4, None, 0),
    "fermat-n3-d3": (2, None, 0),
    "fermat-n3-d4": (3, None, 0),
    "fermat-n3-d5": (4, None, 0),
    "triangle": (1, 1, 3),
    "triangle-susp3": (1, 1, 6),
    "exB-d5-susp3": (1, 1, 48),
    "cusp-cubic": (1, 1, 2),
    "nodal-cubic": (2, 2, 1),
    "nodal-sextic": (5, 8, 1),
    "collinear-nodes-quartic": (2, 2, 3),
    "four-lines": (2, 2, 6),
    "ten-lines": (8, 8, 45),
    "quartic-node-surface": (3, 6, 1),
    "sextic-surface": (5, 6, 25),
}


def test_required_instances_present():
    names = {i.name for i in corpus.corpus(include_heavy=True)}
    assert set(FROZEN) == names
    assert corpus.get("exB-d5").poly == corpus.get("exB-d5").poly.__class__(3, 5, {(5, 0, 0): 1, (0, 4, 1): 1})
    assert corpus.get("triangle").expr == "x0*x1*x2"
    assert corpus.get("triangle-susp3").expr == "x0*x1*x2 + x3^3"
    with pytest.raises(KeyError):
        corpus.get("nope")


def test_ten_lines_is_generic():
    inst = corpus.get("ten-lines")
    assert inst.poly.degree == 10 and len(inst.nodes) == 45
    NodalConfiguration.for_poly(inst.poly, inst.nodes)


def test_collinear_nodes():
    inst = corpus.get("collinear-nodes-quartic")
    conf = NodalConfiguration.for_poly(inst.poly, inst.nodes)
    assert oracle.nodal_defect(conf, 1) == 1


@pytest.mark.parametrize("inst", corpus.corpus(include_heavy=True), ids=lambda i: i.name)
def test_instance_checks(inst):
    res = corpus.check_instance(inst)
    assert res.ok, [c for c in res.checks if not c.ok]
    rep = res.report
    assert (rep.mdr, rep.mder, rep.tau) == FROZEN[inst.name]
