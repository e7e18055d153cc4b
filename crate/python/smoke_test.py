"""Smoke test for the cliques_py extension module."""

import json

import cliques_py as cq


def main():
    d0 = cq.Magma("D:0")
    assert d0.elements() == ["𝟙", "0"]
    assert d0.op("0", "0") == "0"

    z = cq.Magma("Z")
    p = cq.Clique(z, 3, {(1, 3): "2", (2, 4): "-1"})
    q = cq.Clique(z, 2, {(1, 2): "5"})
    r = p.compose(q, 2)
    assert r.arity == 4
    assert cq.Clique.from_json(r.to_json()) == r
    assert p.compose(cq.Clique.unit(z), 1) == p
    assert r.reflect().reflect() == r

    assert cq.sequence("nes", d0, 5) == [1, 5, 14, 42, 132]
    assert cq.sequence("deg:1", d0, 5) == [1, 4, 10, 26, 76]
    assert cq.count_prime(d0, 3) >= 1
    assert cq.verify_axioms(cq.Magma("N:2"), 4) is None

    t = cq.Clique(d0, 2, {(1, 3): "0"})
    h = cq.compose_h(t, t, 1)
    assert len(h) >= 1
    f = cq.LinComb([(1, t)])
    assert f.to_h().from_h() == f
    assert json.loads(f.to_json())[0]["coefficient"] == "1/1"
    assert cq.LinComb([(1, cq.Clique(cq.Magma("N:2"), 2, {(1, 2): "1", (2, 3): "1", (1, 3): "1"}))]).is_associative()

    print("smoke test ok")


if __name__ == "__main__":
    main()
