from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scissorkit.errors import (DimensionMismatch, DuplicateRule, InconsistentAssignment,
                               NonTermination, ParseError, UnassignedAtom)
from scissorkit.exact_geom import Rational
from scissorkit.kring import (RelationStore, RingExpr, joinable, normalize, parse_expr,
                              parse_relation_script, vol_eval)

EXAMPLE = """\
# region under a shifted square-root graph, the unit-by-ab rectangle, and [0, ab]
atom K_ab 2
atom C_ab 2
atom I_ab 1
equiv K_ab = C_ab
product C_ab = I * I_ab
flatten C_ab = I_ab
query K_ab
"""


def test_worked_example_flattens_to_interval():
    store, (q,) = parse_relation_script(EXAMPLE)
    assert normalize(store, q) == RingExpr.atom("I_ab")
    assert str(normalize(store, q)) == "I_ab"


class TestRingLaws:
    x, y, z = (RingExpr.atom(n) for n in "xyz")

    def test_identities(self):
        assert RingExpr.zero() + self.x == self.x
        assert self.x * RingExpr.one() == self.x
        assert self.x * RingExpr.atom("I") == self.x

    def test_distributivity(self):
        assert (self.x * (self.y + self.z) - self.x * self.y - self.x * self.z).is_zero()

    def test_square_of_sum(self):
        a, b = RingExpr.atom("a"), RingExpr.atom("b")
        assert str(-(a + b) ** 2) == "-a*a - 2*a*b - b*b"

    def test_parse(self):
        assert parse_expr("x*(y+z) - x*y - x*z") == 0
        assert parse_expr("2*x^2 - 3") == 2 * self.x * self.x - 3
        with pytest.raises(ParseError):
            parse_expr("x + * y")


def _store():
    s = RelationStore()
    for name, dim in [("A", 1), ("B", 1), ("U", 1), ("P", 2), ("E", 2), ("Q", 2), ("T", 3)]:
        s.declare_atom(name, dim)
    s.declare_scissors("U", ["A", "B"])
    s.declare_product("P", ["A", "B"])
    s.declare_fibration("E", "U", "A")
    s.declare_equivalence("Q", "E")
    s.declare_product("T", ["U", "Q"])
    return s.freeze()


class TestDeclarations:
    def test_fibration_rewrites_to_product(self):
        assert normalize(_store(), "E") == parse_expr("A*A + A*B")

    def test_product_dimension(self):
        s = RelationStore().declare_atom("K2", 2).declare_atom("K3", 3).declare_atom("X", 4)
        with pytest.raises(DimensionMismatch):
            s.declare_product("X", ["K2", "K3"])

    def test_scissors_dimension(self):
        s = RelationStore().declare_atom("K", 2).declare_atom("L", 1).declare_atom("M", 2)
        with pytest.raises(DimensionMismatch):
            s.declare_scissors("K", ["L", "M"])

    def test_points_excluded(self):
        with pytest.raises(DimensionMismatch):
            RelationStore().declare_atom("pt", 0)

    def test_duplicates(self):
        s = RelationStore().declare_atom("K", 1).declare_atom("L", 1)
        s.declare_equivalence("K", "L")
        with pytest.raises(DuplicateRule):
            s.declare_equivalence("K", "L")
        with pytest.raises(DuplicateRule):
            s.declare_equivalence("L", "L")
        with pytest.raises(DuplicateRule):
            s.declare_equivalence("I", "L")

    def test_frozen(self):
        with pytest.raises(RuntimeError):
            _store().declare_atom("Z", 1)


class TestNormalize:
    def test_cycle(self):
        s = RelationStore().declare_atom("K", 1).declare_atom("L", 1)
        s.declare_equivalence("K", "L").declare_equivalence("L", "K")
        with pytest.raises(NonTermination):
            normalize(s, "K")

    def test_budget(self):
        s = RelationStore()
        for k in range(30):
            s.declare_atom(f"K{k}", 1)
        for k in range(29):
            s.declare_equivalence(f"K{k}", f"K{k + 1}")
        assert normalize(s, "K0") == RingExpr.atom("K29")
        with pytest.raises(NonTermination):
            normalize(s, "K0", budget=10)

    def test_joinable(self):
        s = _store()
        assert joinable(s, "Q", parse_expr("A*U"))
        assert not joinable(s, "P", "Q")

    def test_unknown_atom(self):
        with pytest.raises(UnassignedAtom):
            normalize(_store(), "nope")


class TestVolume:
    def test_product(self):
        s = RelationStore().declare_atom("A", 1).declare_atom("B", 1)
        assert vol_eval(s, parse_expr("A*B"), {"A": Fraction(2, 3), "B": Fraction(3, 5)}) == Rational(2, 5)

    def test_inconsistent(self):
        s = RelationStore().declare_atom("U", 2).declare_atom("K1", 2).declare_atom("K2", 2)
        s.declare_scissors("U", ["K1", "K2"])
        with pytest.raises(InconsistentAssignment) as err:
            vol_eval(s, "U", {"U": 1, "K1": Fraction(1, 3), "K2": Fraction(1, 3)})
        assert err.value.relation.lhs == "U"

    def test_unassigned(self):
        with pytest.raises(UnassignedAtom):
            vol_eval(_store(), "P", {"A": 1})

    def test_flattening_keeps_volume(self):
        store, (q,) = parse_relation_script(EXAMPLE)
        assert vol_eval(store, q, {"I_ab": Fraction(6)}) == vol_eval(store, "C_ab", {"I_ab": Fraction(6)}) == 6

    def test_float_volumes(self):
        s = RelationStore().declare_atom("A", 1).declare_atom("B", 1)
        assert vol_eval(s, parse_expr("A + B"), {"A": 0.25, "B": Fraction(1, 4)}) == 0.5


NAMES = ["A", "B", "U", "P", "E", "Q", "T"]
exprs = st.recursive(
    st.one_of(st.sampled_from(NAMES).map(RingExpr.atom), st.integers(-3, 3).map(RingExpr.const)),
    lambda inner: st.one_of(st.tuples(inner, inner).map(lambda t: t[0] + t[1]),
                            st.tuples(inner, inner).map(lambda t: t[0] * t[1]),
                            inner.map(lambda e: -e)),
    max_leaves=8,
)
volumes = st.builds(Fraction, st.integers(1, 30), st.integers(1, 12))


@given(exprs)
def test_normalize_idempotent(e):
    s = _store()
    nf = normalize(s, e)
    assert normalize(s, nf) == nf
    assert nf.atoms() <= {"A", "B"}


@given(exprs, volumes, volumes)
def test_volume_invariant_under_normalize(e, a, b):
    s = _store()
    assignment = {"A": a, "B": b}
    assert vol_eval(s, normalize(s, e), assignment) == vol_eval(s, e, assignment)


def test_script_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse_relation_script("atom K 2\nscissors K = L +\n")
    assert err.value.line == 2
    with pytest.raises(ParseError) as err:
        parse_relation_script("atom K two\n")
    assert err.value.line == 1 and err.value.column == 1
    with pytest.raises(ParseError):
        parse_relation_script("frobnicate K\n")
    with pytest.raises(ParseError):
        parse_relation_script("atom K 1\nvolume K = 0.5\n")


def test_script_volume_and_fibration():
    store, (q,) = parse_relation_script(
        "atom F 1 1/2\natom B 1\natom E 2\nfibration E = F * B\nvolume B = 4\nquery E - F*B\n")
    assert normalize(store, q) == 0
    assert vol_eval(store, "E") == 2
