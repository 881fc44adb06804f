"""End-to-end acceptance checks; each test is one numbered criterion.

A summary line per criterion is printed at the end of the pytest run.
"""
import itertools
import json
import math
import random
import subprocess
import sys
from fractions import Fraction
from importlib import resources

import pytest

import oracles as O
from plab import exactlin as el
from plab import fixtures as F
from plab.algebra import (AveragingAlgebra, averaging_algebra, check_averaging, check_leibniz, check_pre_lie,
                          induced_leibniz, search_pre_lie_algebras)
from plab.bialgebra import (AvgBialgebra, Coalgebra, bialgebra_to_manin, check_avg_lie_bialgebra,
                            check_avg_prelie_bialgebra, check_balanced, check_quadratic, induced_lie_bialgebra,
                            manin_to_bialgebra, verify_rep_isomorphism)
from plab.errors import KindError
from plab.matched_pairs import build_double, build_leibniz_double, induced_leibniz_matched_pair
from plab.representations import (AvgRepresentation, Representation, check_avg_representation,
                                  coregular_representation, semidirect_data, zero_representation)
from plab.rota_baxter import (RelativeRB, avg_bialgebra_from_qrb, build_r_from_qrb, check_equiva3,
                              check_rb_identity, descendent_neg_adjoint_avg, factorizable_to_qrb, j_omega,
                              lift_T_to_r, rrb_equiv_rb0, search_relative_rb)
from plab.yang_baxter import (build_coboundary_avg_bialgebra, check_admissible_cybe, check_combined_conditions,
                              check_factorizable, delta_r, double_bracket_rr)
from test_bialgebra import N2_COCOMMUTATIVE
from test_yang_baxter import UT2_ADMISSIBLE_SYMMETRIC, symmetric_grid

L = O.as_lists
SEED = 20261016


def _say(record_property, number, text):
    record_property("detail", text)
    print(f"criterion {number}: {text}")


def _zero3(t):
    return all(v == 0 for a in t for b in a for v in b)


def _rng(k):
    return random.Random(SEED + k)


def _rand_matrix(rng, n, m=None, entries=(-1, 0, 1)):
    m = n if m is None else m
    return el.array([[rng.choice(entries) for _ in range(m)] for _ in range(n)])


def ut2_coboundary_bialgebras():
    return [build_coboundary_avg_bialgebra(F.ut2_avg(), F.ut2_r(), el.array(r)) for r in UT2_ADMISSIBLE_SYMMETRIC]


def bialgebra_fixtures():
    """Every averaging bialgebra fixture, keyed by name."""
    out = {
        "Z2 trivial": F.trivial_bialgebra(F.z2(), el.array([[1, 1], [0, 1]])),
        "UT2 trivial": F.trivial_bialgebra(F.ut2(), F.ut2_r()),
        "A2 trivial": F.trivial_bialgebra(F.a2(), F.a2_p()),
        "N2 trivial": F.trivial_bialgebra(F.n2(), el.identity(2)),
        "UT2": F.ut2_bialgebra(),
        "N2 cocommutative": AvgBialgebra(F.n2(), el.identity(2), Coalgebra(el.array(N2_COCOMMUTATIVE)),
                                         el.identity(2)),
        "4-dim unbalanced": F.unbalanced_bialgebra(),
        "Sp2 from qRB": avg_bialgebra_from_qrb(F.sp2_qrb(), F.sp2_p()),
        "4-dim from qRB": avg_bialgebra_from_qrb(F.qrb4(), F.qrb4_p()),
    }
    for k, bi in enumerate(ut2_coboundary_bialgebras(), start=1):
        out[f"UT2 coboundary {k}"] = bi
    return out


def fixture_algebras():
    total_ut2, _, _ = bialgebra_to_manin(F.ut2_bialgebra())
    a2d, _ = F.a2_double()
    return {"Z2": F.z2(), "UT2": F.ut2(), "A2": F.a2(), "N2": F.n2(), "A2 double": a2d.base,
            "UT2 double": total_ut2.base}


@pytest.mark.criterion(1, "UT2: pre-Lie, averaging and induced Leibniz, certified by the matrix oracle")
def test_criterion_01_ut2(record_property):
    ut2, r = F.ut2(), F.ut2_r()
    oracle = O.ut2_matrix_product()
    assert L(ut2.product) == oracle
    assert check_pre_lie(ut2).passed and O.is_pre_lie(oracle)
    assert check_averaging(ut2, r).passed and O.is_averaging(oracle, L(r))
    leib = induced_leibniz(F.ut2_avg())
    assert check_leibniz(leib).passed
    ref = O.induced_leibniz(oracle, L(r))
    assert O.is_leibniz(ref)
    assert [[L(leib.product[i, j]) for j in range(3)] for i in range(3)] == ref
    _say(record_property, 1, "27 constants match the matrix oracle; all three checks pass")


@pytest.mark.criterion(2, "identity map is averaging on every pre-Lie algebra (fixtures and dim <= 2 search)")
def test_criterion_02_identity_law(record_property):
    algs = list(fixture_algebras().values()) + [F.qrb4().alg]
    algs += [mp_alg for mp in F.matched_pair_fixtures().values() for mp_alg in (build_double(mp).base,)]
    algs += search_pre_lie_algebras(1, [-2, -1, 0, 1, 2]) + search_pre_lie_algebras(2, [-1, 0, 1])
    checked = 0
    for alg in algs:
        if not check_pre_lie(alg).passed:
            continue
        n = alg.dim
        assert check_averaging(alg, el.identity(n)).passed
        assert O.is_averaging(L(alg.product), L(el.identity(n)))
        checked += 1
    assert checked >= 170
    _say(record_property, 2, f"{checked} pre-Lie algebras, no exception")


def _rep_pool():
    pool = []
    for avg in (F.ut2_avg(), F.a2_avg(), averaging_algebra(F.n2(), el.identity(2)),
                averaging_algebra(F.z2(), el.array([[1, 1], [0, 1]]))):
        alg = avg.base
        pool.append((avg, Representation(alg, alg.left(), alg.right()), avg.op))
        co, p_star = coregular_representation(avg)
        pool.append((avg, co, p_star))
        pool.append((avg, zero_representation(alg, 2), el.identity(2)))
    return pool


@pytest.mark.criterion(3, "semidirect product is averaging exactly when the representation is averaging")
def test_criterion_03_semidirect_iff(record_property):
    rng = _rng(3)
    pool = _rep_pool()
    trials = positives = 0
    for k in range(240):
        avg, rep, hint = pool[k % len(pool)]
        m = rep.module_dim
        alpha = hint if rng.random() < 0.3 else _rand_matrix(rng, m)
        lib = check_avg_representation(AvgRepresentation(rep, avg, alpha)).passed
        alg, op = semidirect_data(avg, rep, alpha)
        semi = check_averaging(alg, op).passed
        oracle = O.is_avg_rep(L(avg.op), L(rep.rho), L(rep.phi), L(alpha))
        assert lib == semi == oracle
        trials += 1
        positives += lib
    assert trials >= 100 and 0 < positives < trials
    _say(record_property, 3, f"{trials} candidates, {positives} averaging, 0 disagreements")


@pytest.mark.criterion(4, "induced Leibniz of the double equals the double of the induced Leibniz matched pair")
def test_criterion_04_leibniz_double(record_property):
    mps = F.matched_pair_fixtures()
    for mp in mps.values():
        lhs = induced_leibniz(build_double(mp)).product
        rhs = build_leibniz_double(induced_leibniz_matched_pair(mp)).product
        assert el.equal(lhs, rhs)
        ref = O.double(L(mp.a.product), L(mp.b.product), L(mp.rho_a), L(mp.phi_a), L(mp.rho_b), L(mp.phi_b))
        assert L(lhs) == O.induced_leibniz(ref, O.block(L(mp.p_a), L(mp.p_b)))
    _say(record_property, 4, f"{len(mps)} matched pairs, tensor-exact equality")


def _quadratic_fixtures():
    out = {"Sp2 with identity": (averaging_algebra(F.z2(), el.identity(2)), F.sp2_form())}
    a2d, om = F.quad4()
    out["A2 double"] = (a2d, om)
    for name, bi in bialgebra_fixtures().items():
        if el.equal(bi.p, bi.s):
            total, form, _ = bialgebra_to_manin(bi)
            out[f"double of {name}"] = (total, form.matrix)
    return out


@pytest.mark.criterion(5, "regular and coregular representations are isomorphic on every quadratic fixture")
def test_criterion_05_rep_isomorphism(record_property):
    fx = _quadratic_fixtures()
    for avg, om in fx.values():
        assert check_quadratic(avg.base, om, avg.op).passed
        assert verify_rep_isomorphism(avg, om).passed
    _say(record_property, 5, f"{len(fx)} quadratic averaging algebras, including {len(fx) - 2} doubles")


@pytest.mark.criterion(6, "bialgebra -> Manin triple -> bialgebra round trip")
def test_criterion_06_manin_round_trip(record_property):
    done = out_of_scope = 0
    for bi in bialgebra_fixtures().values():
        if not el.equal(bi.p, bi.s):
            # the double carries an invariant operator only when S = P
            with pytest.raises(KindError):
                bialgebra_to_manin(bi)
            out_of_scope += 1
            continue
        total, form, part = bialgebra_to_manin(bi)
        exact = manin_to_bialgebra(total, form, part, sign=1)
        assert el.equal(exact.alg.product, bi.alg.product) and el.equal(exact.co.coproduct, bi.co.coproduct)
        assert el.equal(exact.p, bi.p) and el.equal(exact.s, bi.s)
        default = manin_to_bialgebra(total, form, part)
        assert el.equal(default.alg.product, -bi.alg.product)
        assert el.equal(default.co.coproduct, bi.co.coproduct)
        assert el.equal(default.p, bi.p) and el.equal(default.s, bi.s)
        done += 1
    _say(record_property, 6, f"{done} bialgebras round-trip exactly; {out_of_scope} with S = -P rejected")


@pytest.mark.criterion(7, "double bracket agrees with the quadruple-loop oracle; linearity and homogeneity")
def test_criterion_07_yang_baxter_oracle(record_property):
    rng = _rng(7)
    entries = (-2, -1, 0, 0, 0, 1, 2, Fraction(1, 2), Fraction(-1, 3))
    fixed = {"UT2": [F.ut2_symmetric_r()] + [el.array(r) for r in UT2_ADMISSIBLE_SYMMETRIC],
             "A2 double": [build_r_from_qrb(F.qrb4()).coeff],
             "Z2": [build_r_from_qrb(F.sp2_qrb()).coeff]}
    count = 0
    for name, alg in fixture_algebras().items():
        n, c = alg.dim, L(alg.product)
        samples = fixed.get(name, []) + [_rand_matrix(rng, n, entries=entries) for _ in range(1000)]
        for r in samples:
            # the oracle runs on the integer tensor D r; the bracket is quadratic in r
            d = math.lcm(*(Fraction(v).denominator for v in r.flat))
            scaled = [[int(v * d) for v in row] for row in L(r)]
            assert L(el.canon(d * d * double_bracket_rr(alg, r))) == O.double_bracket(c, scaled)
            count += 1
        for _ in range(50):
            r1, r2 = _rand_matrix(rng, n, entries=entries), _rand_matrix(rng, n, entries=entries)
            lam = Fraction(rng.randint(-7, 7), rng.randint(1, 5))
            d = delta_r(alg, el.canon(r1 + r2)).coproduct
            assert el.equal(d, delta_r(alg, r1).coproduct + delta_r(alg, r2).coproduct)
            assert el.equal(delta_r(alg, el.canon(lam * r1)).coproduct, lam * delta_r(alg, r1).coproduct)
            assert el.equal(double_bracket_rr(alg, el.canon(lam * r1)), lam * lam * double_bracket_rr(alg, r1))
        assert L(delta_r(alg, samples[-1]).coproduct) == O.delta_r(c, L(samples[-1]))
    _say(record_property, 7, f"{count} tensors on {len(fixture_algebras())} algebras, 0 disagreements")


@pytest.mark.criterion(8, "symmetric admissible CYBE solutions give bialgebras; combined conditions agree")
def test_criterion_08_coboundary(record_property):
    cases = [(averaging_algebra(F.z2(), el.identity(2)), el.identity(2)),
             (averaging_algebra(F.z2(), el.array([[1, 1], [0, 1]])), el.array([[1, 1], [0, 1]])),
             (averaging_algebra(F.z2(), el.array([[1, 0], [0, 0]])), el.array([[0, 0], [0, 1]])),
             (F.ut2_avg(), F.ut2_r())]
    candidates = solutions = 0
    for avg, s in cases:
        c, p = L(avg.product), L(avg.op)
        for r in symmetric_grid(avg.dim):
            candidates += 1
            ok = check_admissible_cybe(avg, s, r).passed
            assert ok == O.is_admissible_cybe(c, p, L(s), L(r))
            assert check_combined_conditions(avg, s, r).child("equivalence").passed
            if ok:
                solutions += 1
                assert check_avg_prelie_bialgebra(build_coboundary_avg_bialgebra(avg, s, r)).passed
    assert solutions >= len(UT2_ADMISSIBLE_SYMMETRIC)
    _say(record_property, 8, f"{candidates} symmetric candidates, {solutions} solutions, all bialgebras pass")


@pytest.mark.criterion(9, "quadratic Rota-Baxter pipeline on Sp2 and a 4-dim fixture; r <-> (B, w) round trip")
def test_criterion_09_qrb_pipeline(record_property):
    for qrb, p in ((F.sp2_qrb(), F.sp2_p()), (F.qrb4(), F.qrb4_p())):
        bi = avg_bialgebra_from_qrb(qrb, p)
        assert check_avg_prelie_bialgebra(bi).passed
        assert descendent_neg_adjoint_avg(qrb, p).passed
        r = build_r_from_qrb(qrb)
        assert check_rb_identity(qrb, r).passed
        assert check_factorizable(qrb.alg, r).passed
        back = factorizable_to_qrb(qrb.alg, r, qrb.weight)
        assert el.equal(back.rb.b, qrb.rb.b) and el.equal(back.omega.matrix, qrb.omega.matrix)
        assert el.equal(build_r_from_qrb(back).coeff, r.coeff)
        assert _zero3(O.double_bracket(L(qrb.alg.product), L(r.coeff)))
        assert L(bi.co.coproduct) == O.delta_r(L(qrb.alg.product), L(r.coeff))
    assert not el.is_zero(avg_bialgebra_from_qrb(F.qrb4(), F.qrb4_p()).co.coproduct)
    _say(record_property, 9, "both pipelines pass; round trips exact; dual product identity on all basis pairs")


def _equiva3_oracle(avg, rep, s, alpha, beta):
    c, p = L(avg.product), L(avg.op)
    rho, phi = L(rep.rho), L(rep.phi)
    m = len(L(alpha))
    big, pa = O.semidirect(c, rho, phi), O.block(p, L(alpha))
    item_a = O.is_averaging(big, pa) and O.is_S_admissible(big, pa, O.block(L(s), L(beta)))
    d_rho = [[[-rho[i][b][a] + phi[i][b][a] for b in range(m)] for a in range(m)] for i in range(len(c))]
    d_phi = [[[phi[i][b][a] for b in range(m)] for a in range(m)] for i in range(len(c))]
    big_d, pb = O.semidirect(c, d_rho, d_phi), O.block(p, O.transpose(L(beta)))
    item_b = O.is_averaging(big_d, pb) and O.is_S_admissible(big_d, pb, O.block(L(s), O.transpose(L(alpha))))
    return item_a, item_b


@pytest.mark.criterion(10, "three-way admissibility equivalence, relative vs weight-0 RB, lifted CYBE solutions")
def test_criterion_10_relative_rb(record_property):
    rng = _rng(10)
    pool = []
    for avg in (F.ut2_avg(), F.a2_avg(), averaging_algebra(F.z2(), el.identity(2))):
        pool.append((avg, Representation(avg.base, avg.base.left(), avg.base.right())))
        pool.append((avg, zero_representation(avg.base, 2)))
    eq3 = eq3_pos = 0
    for k in range(240):
        avg, rep = pool[k % len(pool)]
        n, m = avg.dim, rep.module_dim
        if rng.random() < 0.25:
            s = avg.op
            alpha = beta = avg.op if m == n else el.identity(m)
        else:
            s, alpha, beta = _rand_matrix(rng, n), _rand_matrix(rng, m), _rand_matrix(rng, m)
        out = check_equiva3(avg, rep, s, alpha, beta)
        assert out.passed
        assert tuple(ch.passed for ch in out.children[:2]) == _equiva3_oracle(avg, rep, s, alpha, beta)
        eq3 += 1
        eq3_pos += out.children[0].passed
    assert eq3 >= 200 and eq3_pos > 0

    quads = [(averaging_algebra(F.z2(), el.identity(2)), F.sp2_form()), F.quad4()]
    rb0 = rb0_pos = 0
    for k in range(240):
        avg, om = quads[k % 2]
        n = avg.dim
        if rng.random() < 0.2:
            t = el.canon(Fraction(rng.randint(-2, 2)) * j_omega(om))
        else:
            t = _rand_matrix(rng, n, entries=(-1, 0, 0, 0, 1))
        out = rrb_equiv_rb0(avg, om, t)
        assert out.passed
        rel, rb = out.children
        c, p = L(avg.product), L(avg.op)
        tw = O.mm(L(t), O.transpose(L(om)))
        co_rho, co_phi = O.coregular(c)
        assert rel.passed == O.is_relative_rb(c, p, co_rho, co_phi, O.transpose(p), L(t))
        assert rb.passed == (O.is_rb(c, tw, 0) and O.mm(p, tw) == O.mm(tw, p))
        rb0 += 1
        rb0_pos += rel.passed
    assert rb0 >= 200 and rb0_pos > 0

    lifts = lift_pos = 0
    z = F.z2_rrb()
    for ent in itertools.product([-1, 0, 1], repeat=4):
        t = el.array(ent).reshape(2, 2)
        for s in (el.identity(2), el.zeros(2, 2), el.array([[1, 0], [0, 0]])):
            r, out = lift_T_to_r(z.avg, z.avgrep, t, s, z.avgrep.alpha)
            assert out.passed and el.equal(r.coeff, r.coeff.T)
            lifts += 1
            lift_pos += out.children[0].passed
    u = F.ut2_rrb()
    ts = [el.array(ent).reshape(3, 3) for ent in itertools.product([0, 1], repeat=9)]
    ts += search_relative_rb(u.avgrep, [-1, 0, 1])
    rep = u.avgrep.rep
    for t in ts:
        for s in (F.ut2_r(), el.identity(3), el.zeros(3, 3)):
            r, out = lift_T_to_r(u.avg, u.avgrep, t, s, u.avgrep.alpha)
            assert out.passed and el.equal(r.coeff, r.coeff.T)
            rhs = (O.is_relative_rb(L(u.avg.product), L(u.avg.op), L(rep.rho), L(rep.phi), L(u.avgrep.alpha), L(t))
                   and O.mm(L(t), L(u.avgrep.alpha)) == O.mm(L(s), L(t)))
            assert out.children[1].passed == rhs
            lifts += 1
            lift_pos += out.children[0].passed
    assert lift_pos > 2
    assert isinstance(z, RelativeRB)
    _say(record_property, 10, f"equivalence {eq3} inputs ({eq3_pos} admissible); weight-0 RB {rb0} maps "
                              f"({rb0_pos} relative RB); lift {lifts} maps ({lift_pos} solutions)")


@pytest.mark.criterion(11, "balanced bialgebras induce averaging Lie bialgebras; zero coproduct gives zero cobracket")
def test_criterion_11_induced_lie(record_property):
    balanced = zero = 0
    for bi in bialgebra_fixtures().values():
        is_bal = check_balanced(bi.alg, bi.co).passed
        assert is_bal == O.is_balanced(L(bi.alg.product), L(bi.co.coproduct))
        if not is_bal:
            continue
        balanced += 1
        lie = induced_lie_bialgebra(bi)
        rep = check_avg_lie_bialgebra(lie.lie, lie.delta, lie.p, lie.s)
        assert rep.passed
        if el.is_zero(bi.co.coproduct):
            zero += 1
            assert el.is_zero(lie.delta.coproduct)
            assert rep.passed == check_averaging(lie.lie, lie.p).passed
    assert balanced >= 20 and zero >= 4
    _say(record_property, 11, f"{balanced} balanced fixtures ({zero} with zero coproduct) all pass")


@pytest.mark.criterion(12, "command line: shipped UT2 workspace passes suite 'all'; JSON report byte-stable")
def test_criterion_12_cli(record_property):
    path = str(resources.files("plab").joinpath("data/ut2.plab"))
    cmd = [sys.executable, "-m", "plab.cli", "check", path, "--suite", "all", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == 0 and second.returncode == 0, first.stderr
    assert first.stdout == second.stdout
    records = json.loads(first.stdout)
    assert records and all(r["status"] == "pass" for r in records)
    _say(record_property, 12, f"exit 0 twice, {len(records)} records, identical {len(first.stdout)} bytes")
