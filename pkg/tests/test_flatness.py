import itertools

import pytest

from flatwall.flatness import (FlatnessCertificate, _corner_paths, canonical_sides, engine_failures,
                               lemma51_engine, order_along, peg_quota_failures, prove_wall_flat,
                               search_certificate, subwall_flatness, verify_flat_new, verify_flat_old)
from flatwall.graph import Separation, verify_separation
from flatwall.hosts import host_instance
from flatwall.society import augmented_planarity_oracle
from flatwall.tracks import Walk
from flatwall.walls import PEG_COUNT, elementary_wall, subdivide, subwall


def independent_check(g, w, cert):
    """The new rule restated directly: a separation, Ω on D inside A∩B, one Ω peg per interval."""
    A, B = set(cert.A), set(cert.B)
    assert A | B == set(g.vertices)
    for u, v in g.edges.values():
        assert not ({u, v} & (A - B) and {u, v} & (B - A)), (u, v)
    assert w.vertex_set() <= B
    D = w.boundary()
    assert set(cert.omega) <= A & B <= set(D)
    for I in w.peg_intervals():
        assert set(cert.omega) & set(I.interior), I.kind
    # a bare wall is planar, so the plain augmentation decides rurality here
    assert augmented_planarity_oracle(g.induced(B), list(cert.omega))


@pytest.mark.parametrize("r", [3, 4, 5])
def test_bare_walls_are_flat(r):
    w = elementary_wall(r)
    g = w.graph()
    res = search_certificate(g, w)
    assert res.status == "found"
    assert verify_flat_new(g, w, res.certificate) == []
    independent_check(g, w, res.certificate)
    assert res.certificate.omega == order_along(w, res.certificate.omega)


def test_old_rule_needs_full_peg_quotas():
    w = elementary_wall(3)
    g = w.graph()
    res = search_certificate(g, w, "old")
    assert res.status == "found"
    cert = res.certificate
    assert verify_flat_old(g, w, cert) == []
    assert peg_quota_failures(w, cert.peg_choice) == []
    # one peg per interval is enough for the new rule but not for the quotas
    new = search_certificate(g, w).certificate
    short = peg_quota_failures(w, new.omega)
    want = sorted(I.kind for I in w.peg_intervals() if PEG_COUNT[I.kind] > 1)
    assert sorted(m.split()[2] for m in short) == want


def test_verifier_names_the_broken_condition():
    w = elementary_wall(3)
    g = w.graph()
    c = search_certificate(g, w).certificate
    assert any(m.startswith("condition 3") for m in verify_flat_new(g, w, FlatnessCertificate(c.A, c.B, c.omega[1:])))
    assert any(m.startswith("omega") for m in
               verify_flat_new(g, w, FlatnessCertificate(c.A - {c.omega[0]}, c.B, c.omega)))
    assert any(m.startswith("condition 1") for m in verify_flat_new(g, w, FlatnessCertificate(c.B, c.A, c.omega)))


def test_certificate_json_round_trip():
    w = subdivide(elementary_wall(3), {((0, 0), (0, 1)): 2})
    g = w.graph()
    c = search_certificate(g, w).certificate
    back = FlatnessCertificate.from_json(c.to_json())
    assert back == c and verify_flat_new(g, w, back) == []


def test_canonical_sides_form_a_separation():
    w = elementary_wall(4)
    g = w.graph()
    S = [v for v in w.boundary() if g.degree(v) == 2][::2]
    A, B = canonical_sides(g, w, S)
    assert verify_separation(g, Separation(A, B))
    assert A & B == set(S) and w.vertex_set() <= B


def host(seed, R=6, r=3, anchor=(1, 1), **kw):
    return host_instance(R, r, anchor, seed=seed, **kw)


def test_engine_on_a_decorated_host():
    inst = host(0, subdivisions=4, n_chords=4, n_gadgets=4, extra_boundary=2)
    paths = _corner_paths(inst.inner, inst.access, set(inst.boundary))
    D = Walk.from_vertices(inst.graph, inst.inner.boundary(), closed=True)
    res = lemma51_engine(inst.graph, inst.boundary, inst.inner.vertex_set(), D, paths)
    assert engine_failures(inst.graph, inst.inner.vertex_set(), D, res) == []
    assert set(res.omega) <= res.A & res.B <= set(D.vertices)
    assert {m for m, _ in res.moves} <= {"M1", "M2", "M3"}


def test_engine_mirrors_a_counterclockwise_cycle():
    inst = host(1)
    paths = _corner_paths(inst.inner, inst.access, set(inst.boundary))
    D = Walk.from_vertices(inst.graph, inst.inner.boundary(), closed=True).reversed()
    res = lemma51_engine(inst.graph, inst.boundary, inst.inner.vertex_set(), D, paths)
    assert res.mirrored
    assert engine_failures(inst.graph, inst.inner.vertex_set(), D, res) == []


def test_engine_hypotheses_are_checked():
    inst = host(0)
    paths = _corner_paths(inst.inner, inst.access, set(inst.boundary))
    D = Walk.from_vertices(inst.graph, inst.inner.boundary(), closed=True)
    with pytest.raises(ValueError, match="hypothesis"):
        lemma51_engine(inst.graph, inst.boundary, inst.inner.vertex_set(), D, paths[:3])
    with pytest.raises(ValueError, match="hypothesis"):
        lemma51_engine(inst.graph, inst.boundary[:2], inst.inner.vertex_set(), D, paths)


def test_pipeline_and_subwalls_in_a_host():
    inst = host(2, R=7, r=4, anchor=(1, 2), n_chords=3, n_gadgets=3)
    cert = prove_wall_flat(inst.graph, inst.boundary, inst.inner, inst.access)
    assert verify_flat_new(inst.graph, inst.inner, cert) == []
    for a, b in itertools.product(range(2), repeat=2):
        sub = subwall(inst.inner, (a, b), 3)
        out = subwall_flatness(inst.graph, inst.inner, cert, sub)
        assert verify_flat_new(inst.graph, sub, out) == []
        assert out.A >= cert.A and out.B <= cert.B


def test_subwall_height_below_three_rejected():
    w = elementary_wall(4)
    g = w.graph()
    c = search_certificate(g, w).certificate
    with pytest.raises(ValueError):
        subwall_flatness(g, w, c, subwall(w, (0, 0), 2))
