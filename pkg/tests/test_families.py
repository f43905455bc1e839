"""Board builders: shapes, determinism, the catalog, recorded goldens."""

import pytest

from gameofcycles import families as F
from gameofcycles.families import FamilyError, FamilySpec
from gameofcycles.graph import canonical_cell
from gameofcycles.strategies import is_branching_tree


def test_cycle():
    g = F.cycle(5)
    assert g.size == 5
    assert len(g.cells) == 1
    assert g.special == frozenset()
    assert canonical_cell(g.cells[0]) == ("v01", "v02", "v03", "v04", "v05")
    s = F.cycle_with_special(5)
    assert s.special == frozenset({"v01"})
    assert s.digest() == F.cycle(5, special=True).digest()


def test_butterfly_variants():
    op, cl = F.butterfly("open"), F.butterfly("closed")
    assert op.size == cl.size == 6
    assert len(op.cells) == 2
    assert len(cl.cells) == 1
    assert op.digest() != cl.digest()
    with pytest.raises(FamilyError):
        F.butterfly("sideways")


def test_windmill_variants():
    for k in range(1, 5):
        g = F.windmill(k)
        assert g.size == 3 * k
        assert len(g.cells) == k
    for k in range(2, 5):
        g = F.windmill(k, nested=True)
        assert g.size == 3 * k
        assert len(g.cells) == 1  # only the innermost triangle bounds a cell
    assert F.windmill(2, nested=True).digest() != F.windmill(2).digest()
    with pytest.raises(FamilyError):
        F.windmill(0)
    with pytest.raises(FamilyError):
        F.windmill(1, nested=True)


def test_box():
    for k in range(1, 4):
        g = F.box(k)
        assert g.size == 3 * k + 1
        assert len(g.cells) == k
    with pytest.raises(FamilyError):
        F.box(0)


def test_wedges():
    g = F.wedge_cycles(3, 4)
    assert g.size == 7
    assert len(g.cells) == 2
    assert g.special == frozenset()
    assert F.wedge_cycles(3, 4, special=True).special == frozenset({"hub"})
    assert F.wedge_triangle_ngon(5).digest() == F.wedge_cycles(3, 5).digest()
    assert F.fishy(5).digest() == F.wedge_triangle_ngon(5).digest()
    assert F.fishy(5).size == 8
    with pytest.raises(FamilyError):
        F.wedge_cycles(2, 4)


def test_lollipop():
    for n in range(3, 7):
        for pendants in (1, 2):
            g = F.lollipop(n, pendants=pendants)
            assert g.size == n + pendants
            assert len(g.cells) == 1
            t = F.lollipop(n, pendants=pendants, trimmed=True)
            assert t.size == n  # loose ends are unmarkable
            assert t.special == frozenset(f"v{i:02d}" for i in range(1, pendants + 1))
    with pytest.raises(FamilyError):
        F.lollipop(2)
    with pytest.raises(FamilyError):
        F.lollipop(4, pendants=5)


def test_spider_star_path():
    g = F.spider((2, 4, 4))
    assert g.size == 10
    assert g.special == frozenset({"l1_2", "l2_4", "l3_4"})
    assert F.star(4).size == 4
    assert is_branching_tree(F.star(4))
    assert F.path(3).size == 3
    for bad in [lambda: F.spider(()), lambda: F.spider((0, 2)),
                lambda: F.star(0), lambda: F.path(0), lambda: F.cycle(2)]:
        with pytest.raises(FamilyError):
            bad()


def test_named_boards():
    assert F.ice_cream_cone().size == 10
    assert len(F.ice_cream_cone().cells) == 2
    assert F.layered_cake().size == 9
    assert len(F.layered_cake().cells) == 2
    g = F.size9_counterexample()
    assert g.size == 9
    assert len(g.cells) == 4
    assert g.special == frozenset()


def test_determinism():
    for build in [lambda: F.windmill(3, nested=True), lambda: F.fishy(6),
                  lambda: F.random_branching_tree(8, seed=5),
                  lambda: F.lollipop(5, pendants=2, trimmed=True)]:
        assert build().digest() == build().digest()
        assert build().to_json() == build().to_json()


def test_random_branching_tree():
    for seed in range(6):
        g = F.random_branching_tree(9, seed=seed)
        assert g.size == 9
        assert is_branching_tree(g)
    assert (F.random_branching_tree(9, seed=0).digest()
            != F.random_branching_tree(9, seed=1).digest())


# ----------------------------------------------------------------------
# catalog and generate
# ----------------------------------------------------------------------


def test_registry_contents():
    assert set(F.FAMILIES) == {
        "box", "butterfly", "cycle", "cycle_with_special", "fishy",
        "ice_cream_cone", "layered_cake", "lollipop", "path",
        "random_branching_tree", "size9_counterexample", "spider", "star",
        "wedge_cycles", "wedge_triangle_ngon", "windmill",
    }
    for name, entry in F.FAMILIES.items():
        assert callable(entry["builder"])
        assert isinstance(entry["params"], dict)


def test_generate():
    g = F.generate("cycle", n=4)
    assert g.digest() == F.cycle(4).digest()
    spec = FamilySpec.of("windmill", k=2, nested=True)
    assert F.generate(spec).digest() == F.windmill(2, nested=True).digest()
    with pytest.raises(FamilyError):
        F.generate("klein_bottle")
    with pytest.raises(FamilyError):
        F.generate("cycle", sides=4)


def test_catalog_entry():
    # the catalog stores the hand-transcribed boards as explicit graph JSON
    for name in ("ice_cream_cone", "layered_cake", "size9_counterexample"):
        entry = F.catalog_entry(name)
        assert "graph" in entry
    with pytest.raises(FamilyError):
        F.catalog_entry("nope")


# ----------------------------------------------------------------------
# tree enumeration
# ----------------------------------------------------------------------


def test_enumerate_trees_counts():
    trees = list(F.enumerate_trees(6))
    by_size: dict[int, int] = {}
    for t in trees:
        by_size[t.size] = by_size.get(t.size, 0) + 1
    assert by_size == {1: 1, 2: 1, 3: 2, 4: 3, 5: 6, 6: 11}
    digests = [t.digest() for t in trees]
    assert len(set(digests)) == len(digests)
    for t in trees:
        assert len(t.cells) == 0
        assert t.special == frozenset(v for v in t.vertices if t.degree(v) == 1)


def test_enumerate_trees_empty_and_order():
    assert list(F.enumerate_trees(0)) == []
    sizes = [t.size for t in F.enumerate_trees(4)]
    assert sizes == sorted(sizes)


# ----------------------------------------------------------------------
# recorded goldens
# ----------------------------------------------------------------------


def test_goldens_replay_boards():
    entries = F.goldens()
    assert len(entries) == 22
    seen = set()
    for e in entries:
        assert set(e) == {"family", "params", "digest", "size", "grundy"}
        g = F.generate(e["family"], **e["params"])
        assert g.digest() == e["digest"], e
        assert g.size == e["size"], e
        seen.add(e["digest"])
    assert len(seen) == 22
    assert any(e["grundy"] == 3 for e in entries)
