import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from plab import exactlin as el
from plab import fixtures as F
from plab.algebra import LEIBNIZ, check_averaging, check_leibniz, check_pre_lie, induced_leibniz, verify
from plab.errors import DimensionMismatch, KindError
from plab.matched_pairs import (LeibnizMatchedPair, MatchedPair, build_double, build_leibniz_double,
                                check_matched_pair_leibniz, check_matched_pair_prelie, double_data,
                                induced_leibniz_matched_pair)
from plab.representations import (Representation, avg_sides_report, check_leibniz_representation,
                                  check_prelie_representation)

MPS = F.matched_pair_fixtures()
L = O.as_lists


def oracle_double(mp):
    return O.double(L(mp.a.product), L(mp.b.product), L(mp.rho_a), L(mp.phi_a), L(mp.rho_b), L(mp.phi_b))


@pytest.mark.parametrize("name", list(MPS))
def test_fixture_doubles_match_oracle(name):
    mp = MPS[name]
    assert check_matched_pair_prelie(mp).passed
    dbl = build_double(mp)
    ref = oracle_double(mp)
    assert L(dbl.product) == ref
    pb = O.block(L(mp.p_a), L(mp.p_b))
    assert O.is_pre_lie(ref) and O.is_averaging(ref, pb)


@pytest.mark.parametrize("name", list(MPS))
def test_induction_commutes_with_doubling(name):
    mp = MPS[name]
    lhs = induced_leibniz(build_double(mp)).product
    lmp = induced_leibniz_matched_pair(mp)
    assert check_matched_pair_leibniz(lmp).passed
    rhs = build_leibniz_double(lmp).product
    assert el.equal(lhs, rhs)
    # both sides again from the loop formulas
    pa, pb = L(mp.p_a), L(mp.p_b)
    ref_lhs = O.induced_leibniz(oracle_double(mp), O.block(pa, pb))
    rl, rr, ml, mr = O.induced_matched_actions(L(mp.rho_a), L(mp.phi_a), L(mp.rho_b), L(mp.phi_b), pa, pb)
    c1 = O.induced_leibniz(L(mp.a.product), pa)
    c2 = O.induced_leibniz(L(mp.b.product), pb)
    ref_rhs = O.leibniz_double(c1, c2, rl, rr, ml, mr)
    assert ref_lhs == ref_rhs == L(lhs)
    assert O.is_leibniz(ref_rhs)


def test_zero_matched_pair():
    mp = F.zero_matched_pair(2, 3)
    assert check_matched_pair_prelie(mp).passed
    d = build_double(mp)
    assert d.dim == 5 and el.is_zero(d.product) and el.equal(d.op, el.identity(5))
    lmp = induced_leibniz_matched_pair(mp)
    for arr in (lmp.rho_l, lmp.rho_r, lmp.mu_l, lmp.mu_r):
        assert el.is_zero(arr)
    assert el.is_zero(build_leibniz_double(lmp).product)


def _ut2_left_only():
    ut2 = F.ut2()
    z = el.zeros(3, 3, 3)
    # A acts on a copy of itself by left multiplication and nothing else
    return MatchedPair(ut2, ut2, ut2.left(), z, z, z, F.ut2_r(), F.ut2_r())


def test_arbitrary_action_fails_matched_pair():
    mp = _ut2_left_only()
    ut2 = F.ut2()
    assert check_prelie_representation(ut2, Representation(ut2, ut2.left(), el.zeros(3, 3, 3))).passed
    rep = check_matched_pair_prelie(mp)
    assert not rep.passed
    assert rep.first_failure().witness is not None
    with pytest.raises(KindError):
        build_double(mp)
    alg, _ = double_data(mp)
    assert not check_pre_lie(alg).passed


def test_broken_action_breaks_double():
    mp = MPS["UT2 relative RB"]
    rho_b = mp.rho_b.copy()
    phi_b = mp.phi_b.copy()
    # replace the B-actions on A by zero: the A-side actions no longer match
    broken = MatchedPair(mp.a, mp.b, mp.rho_a, mp.phi_a, 0 * rho_b, 0 * phi_b, mp.p_a, mp.p_b)
    rep = check_matched_pair_prelie(broken)
    alg, _ = double_data(broken)
    assert rep.passed == check_pre_lie(alg).passed
    assert not rep.passed


def test_non_representation_action_raises():
    a2 = F.a2()
    z = el.zeros(2, 2, 2)
    mp = MatchedPair(a2, a2, a2.right(), a2.left(), z, z, el.identity(2), el.identity(2))
    with pytest.raises(KindError):
        check_matched_pair_prelie(mp)


def test_matched_pair_shapes():
    with pytest.raises(DimensionMismatch):
        MatchedPair(F.z2(), F.ut2(), el.zeros(2, 2, 2), el.zeros(2, 3, 3), el.zeros(3, 2, 2), el.zeros(3, 2, 2))
    with pytest.raises(KindError):
        build_double(MatchedPair(F.z2(), F.z2(), *(el.zeros(2, 2, 2),) * 4))


def test_leibniz_matched_pair_zero_and_identity():
    leib = induced_leibniz(F.a2_avg())
    z = el.zeros(2, 2, 2)
    zmp = LeibnizMatchedPair(leib, leib, z, z, z, z)
    assert check_matched_pair_leibniz(zmp).passed
    d = build_leibniz_double(zmp)
    assert check_leibniz(d).passed
    ident = el.array([el.identity(2), el.identity(2)])
    with pytest.raises(KindError):
        check_matched_pair_leibniz(LeibnizMatchedPair(leib, leib, ident, ident, z, z))


def test_leibniz_double_on_zero_brackets_with_identity_action():
    z2 = F.z2()
    ident = el.array([el.identity(2), el.identity(2)])
    z = el.zeros(2, 2, 2)
    g = verify(z2, LEIBNIZ)
    # on zero brackets every commutator cancels, so identity actions are admissible
    assert check_leibniz_representation(g, ident, z).passed
    mp = LeibnizMatchedPair(g, g, z, z, ident, z)
    assert check_matched_pair_leibniz(mp).passed
    dbl = build_leibniz_double(mp)
    ref = O.leibniz_double(L(z2.product), L(z2.product), L(z), L(z), L(ident), L(z))
    assert L(dbl.product) == ref and O.is_leibniz(ref)
    # [xi, y] = y for every basis xi of the second copy
    assert ref[2][0] == [1, 0, 0, 0] and ref[3][1] == [0, 1, 0, 0]
    # the same actions on the right break the pair, localized to a basis tuple
    bad = LeibnizMatchedPair(g, g, z, z, ident, ident)
    with pytest.raises(KindError):
        check_matched_pair_leibniz(bad)
    rep = check_leibniz_representation(g, ident, ident)
    assert not rep.passed and rep.first_failure().witness is not None


@settings(max_examples=60)
@given(st.sampled_from(["zero", "Z2 relative RB", "UT2 relative RB", "UT2 bialgebra", "A2 trivial bialgebra"]),
       st.data())
def test_double_averaging_iff_cross_conditions(name, data):
    mp = MPS[name]
    m = mp.b.dim
    entries = data.draw(st.lists(st.sampled_from([-1, 0, 1]), min_size=m * m, max_size=m * m))
    pb = el.array(entries).reshape(m, m)
    if not check_averaging(mp.b, pb).passed:
        return
    trial = MatchedPair(mp.a, mp.b, mp.rho_a, mp.phi_a, mp.rho_b, mp.phi_b, mp.p_a, pb)
    alg, op = double_data(trial)
    cross = (avg_sides_report(Representation(mp.a, mp.rho_a, mp.phi_a), mp.p_a, pb).passed
             and avg_sides_report(Representation(mp.b, mp.rho_b, mp.phi_b), pb, mp.p_a).passed)
    assert check_averaging(alg, op).passed == cross
    assert O.is_averaging(L(alg.product), L(op)) == cross
