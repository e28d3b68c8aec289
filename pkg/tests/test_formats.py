import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from splitpoly.formats import (
    AsymmetryError,
    CountError,
    DiagonalError,
    NetworkDocument,
    NetworkFormatError,
    NewickError,
    ParseError,
    ValueFormatError,
    pair_csv,
    parse_newick,
    parse_phylip,
    read_network,
    vectors_csv,
    write_network,
    write_newick,
    write_phylip,
)
from splitpoly.networks import PhyloTree, enumerate_binary_trees, enumerate_trees
from splitpoly.splits import CircularOrdering, Split, pairs

D4 = """4
a 0 2 3 3
b 2 0 3 3
c 3 3 0 2
d 3 3 2 0
"""

trees6 = st.sampled_from(enumerate_trees(6))
orderings = st.integers(4, 7).flatmap(lambda n: st.permutations(range(1, n + 1)))


class TestPhylip:
    def test_example(self):
        dm = parse_phylip(D4)
        assert dm.names == ("a", "b", "c", "d") and dm.vector == (2, 3, 3, 3, 3, 2)

    def test_decimal_is_exact(self):
        dm = parse_phylip(D4.replace("0 2 3 3", "0 0.25 3 3").replace("b 2 0", "b 0.25 0"))
        assert dm.vector[0] == Fraction(1, 4)

    def test_row_count(self):
        with pytest.raises(CountError) as e:
            parse_phylip(D4.replace("4\n", "5\n", 1))
        assert e.value.line is not None

    def test_value_count(self):
        with pytest.raises(CountError) as e:
            parse_phylip(D4.replace("c 3 3 0 2", "c 3 3 0"))
        assert e.value.line == 4

    def test_asymmetry(self):
        with pytest.raises(AsymmetryError) as e:
            parse_phylip(D4.replace("d 3 3 2 0", "d 3 3 1 0"))
        assert (e.value.line, e.value.column) == (5, 3)

    def test_diagonal(self):
        with pytest.raises(DiagonalError) as e:
            parse_phylip(D4.replace("b 2 0 3 3", "b 2 1 3 3"))
        assert (e.value.line, e.value.column) == (3, 2)

    def test_bad_value(self):
        with pytest.raises(ValueFormatError) as e:
            parse_phylip(D4.replace("a 0 2 3 3", "a 0 x 3 3"))
        assert (e.value.line, e.value.column) == (2, 2)

    def test_negative_and_duplicate(self):
        with pytest.raises(ValueFormatError):
            parse_phylip(D4.replace("a 0 2 3 3", "a 0 -2 3 3"))
        with pytest.raises(ValueFormatError):
            parse_phylip(D4.replace("b 2 0", "a 2 0"))

    def test_too_small(self):
        with pytest.raises(CountError):
            parse_phylip("3\na 0 1 1\nb 1 0 1\nc 1 1 0\n")

    @given(st.integers(4, 7).flatmap(lambda n: st.tuples(
        st.just(n), st.lists(st.fractions(min_value=0, max_value=50, max_denominator=9),
                             min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))))
    def test_round_trip(self, case):
        n, d = case
        text = write_phylip(d, n)
        assert parse_phylip(text).vector == tuple(d)
        assert write_phylip(parse_phylip(text).vector, n) == text

    @settings(max_examples=200)
    @given(st.integers(0, len(D4) - 1), st.sampled_from(["", "9", "x", " ", "\n", "-", "/"]))
    def test_mutations_fail_cleanly(self, pos, ch):
        text = D4[:pos] + ch + D4[pos + 1:]
        try:
            parse_phylip(text)
        except ParseError as exc:
            assert exc.line is not None


class TestNewick:
    def test_examples(self):
        t = parse_newick("((1,2),3,(4,5));")
        assert t == PhyloTree.of(5, [[1, 2], [4, 5]])
        assert parse_newick("((1,2),(3,4));") == PhyloTree.of(4, [[1, 2]])

    def test_canonical_text(self):
        assert write_newick(parse_newick("((4,5),3,(2,1));")) == "(1,2,(3,(4,5)));"

    def test_names_and_lengths(self):
        t, w = parse_newick("((a:1,b:0.5):2,c:1,(d:1,e:1):1);", names="abcde", lengths=True)
        assert w[Split.of([1, 2], 5)] == 2 and w[Split.of([2], 5)] == Fraction(1, 2)
        text = write_newick(t, names="abcde", weights=w)
        t2, w2 = parse_newick(text, names="abcde", lengths=True)
        assert t2 == t and w2 == w

    def test_root_edges_merge(self):
        t, w = parse_newick("((1,2):1,(3,4):2);", lengths=True)
        assert t == PhyloTree.of(4, [[1, 2]]) and w[Split.of([1, 2], 4)] == 3

    @pytest.mark.parametrize("text,cls", [
        ("((1,2),3,(4,5))", NewickError),
        ("((1,2),3,(4,5);", NewickError),
        ("((1,2),3,(4,5)));", NewickError),
        ("((1,2),2,(4,5));", NewickError),
        ("((1,2),3,(4,6));", NewickError),
        ("((1,2),3);", NewickError),
        ("((1,x),3,(4,5));", NewickError),
        ("((1:a,2),3,(4,5));", NewickError),
    ])
    def test_malformed(self, text, cls):
        with pytest.raises(cls) as e:
            parse_newick(text)
        assert e.value.line == 1

    @given(trees6)
    def test_round_trip(self, t):
        text = write_newick(t)
        assert parse_newick(text) == t
        assert write_newick(parse_newick(text)) == text

    @settings(max_examples=200)
    @given(st.sampled_from(enumerate_binary_trees(6)), st.data())
    def test_mutations_fail_cleanly(self, t, data):
        text = write_newick(t)
        pos = data.draw(st.integers(0, len(text) - 1))
        ch = data.draw(st.sampled_from(["", "(", ")", ",", ";", "7", "1", ":"]))
        try:
            parse_newick(text[:pos] + ch + text[pos + 1:])
        except NewickError:
            pass


class TestNetworkJSON:
    DOC = json.dumps({
        "n": 6,
        "ordering": [1, 2, 3, 4, 5, 6],
        "splits": [
            {"part": [1, 2], "weight": "2/4"},
            {"part": [3, 4], "weight": "1"},
            {"part": [4, 5], "weight": "0.75"},
            {"part": [3, 4, 5], "weight": "2"},
        ],
    })

    def test_read_and_reduce(self):
        doc = read_network(self.DOC)
        w = dict(doc.splits)
        assert w[Split.of([1, 2], 6)] == Fraction(1, 2)
        assert '"weight": "1/2"' in write_network(doc)

    def test_round_trip_is_byte_stable(self):
        text = write_network(read_network(self.DOC))
        assert write_network(read_network(text)) == text
        assert read_network(text) == read_network(self.DOC)

    def test_weighting_defaults_trivial(self):
        w = read_network(self.DOC).weighting()
        assert len(w) == 4 + 6 and w[Split.of([1], 6)] == 1

    def test_not_interval(self):
        bad = {"n": 4, "ordering": [1, 2, 3, 4], "splits": [{"part": [2, 4], "weight": "1"}]}
        with pytest.raises(NetworkFormatError, match="not an interval"):
            read_network(json.dumps(bad))

    @pytest.mark.parametrize("weight", ["1/0", "abc", "-1"])
    def test_bad_weight(self, weight):
        bad = {"n": 4, "ordering": [1, 2, 3, 4], "splits": [{"part": [1, 2], "weight": weight}]}
        with pytest.raises(NetworkFormatError):
            read_network(json.dumps(bad))

    @pytest.mark.parametrize("raw", [
        "{", "[]", '{"n": 4, "ordering": [1, 2, 3, 4]}', '{"n": 3, "ordering": [1, 2, 3], "splits": []}',
        '{"n": 5, "ordering": [1, 2, 3, 4], "splits": []}', '{"n": 4, "ordering": [1, 2, 3, 4], "splits": [], "version": 2}',
    ])
    def test_malformed(self, raw):
        with pytest.raises(NetworkFormatError):
            read_network(raw)

    @given(orderings, st.data())
    def test_round_trip_random(self, cycle, data):
        c = CircularOrdering.of(cycle)
        diags = data.draw(st.lists(st.sampled_from(c.diagonals()), unique=True, max_size=4))
        weights = data.draw(st.lists(st.fractions(min_value=0, max_value=9, max_denominator=7),
                                     min_size=len(diags), max_size=len(diags)))
        doc = NetworkDocument(c.n, c, tuple(sorted(zip(diags, weights), key=lambda kv: kv[0].sort_key())))
        text = write_network(doc)
        assert read_network(text) == doc
        assert write_network(read_network(text)) == text


class TestCSV:
    def test_pair_csv(self):
        assert pair_csv((2, 1, 1, 1, 1, 2), 4).splitlines()[:3] == ["pair,value", "1-2,2", "1-3,1"]
        assert pair_csv((Fraction(1, 3),) * 6, 4, "abcd").splitlines()[-1] == "c-d,1/3"

    def test_vectors_csv(self):
        lines = vectors_csv([(1, 0, 1, 1, 0, 1)], 4).splitlines()
        assert lines == ["vertex," + ",".join(f"{i}-{j}" for i, j in pairs(4)), "0,1,0,1,1,0,1"]
