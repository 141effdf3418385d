"""Acceptance criteria 1-10.

Each test prints one ``criterion N: PASS|FAIL`` line (visible without -s)
with its runtime and the limit it is held to, then asserts.
"""

import time

import numpy as np
import pytest

from monoidkit import lang
from monoidkit import pseudovar as pv
from monoidkit.burnside import burnside_group, enumerate_group, sigma
from monoidkit.corpus import language_corpus, random_transformation_monoids
from monoidkit.monoid import cyclic_group, omega_power
from monoidkit.presentations import builder_monoid_0, builder_monoid_1, enumerate_presentation
from monoidkit.provability import check_consequences, provable_leq, random_provable_pair
from monoidkit.terms import Pseudoidentity, check_identity, check_inequality, evaluate, parse_term
from monoidkit.words import has_power_factor

CORPUS = random_transformation_monoids(200, seed=0)


@pytest.fixture
def report(capsys):
    start = time.perf_counter()

    def emit(number, ok, limit, detail=""):
        took = time.perf_counter() - start
        ok = bool(ok) and took < limit
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {took:.2f}s (limit {limit:g}s)  {detail}")
        assert ok, detail

    return emit


def star_power(word, base):
    """Independent check of ``word in base*``."""
    q, r = divmod(len(word), len(base))
    return r == 0 and word == base * q


def power_decomposition_counterexamples(base, n, max_len):
    """All ``x u^n y`` in ``base*`` up to ``max_len``; return decompositions breaking the claim."""
    bad = []
    for k in range(max_len // len(base) + 1):
        word = base * k
        L = len(word)
        for i in range(L):
            for m in range(1, (L - i) // n + 1):
                u = word[i:i + m]
                if word[i:i + n * m] != u * n:
                    continue
                x, y = word[:i], word[i + n * m:]
                if m % len(base) or not star_power(x + y, base):
                    bad.append((x, u, y))
    return bad


def test_criterion_1_abcdbdc(report):
    res = lang.synt("(abcdbdc)*", "abcd")
    M = res.monoid
    cubes = check_identity(M, Pseudoidentity.parse("x^3 = x^2")).holds
    bg = pv.membership(M, "BG").verdict
    sig = {v: res.letter_map[c] for v, c in zip("xyzt", "abcd")}
    ux = evaluate(parse_term("(y z t y t z x)^w"), M, sig)
    xu = evaluate(parse_term("(x y z t y t z)^w"), M, sig)
    ok = cubes and bg and ux != xu
    report(1, ok, 10, f"|M|={M.size} x^3=x^2:{cubes} BG:{bg} (ux)^w=(xu)^w fails:{ux != xu}")


def test_criterion_2_L2(report):
    res = lang.syntactic_ordered_monoid(lang.lang_L2())
    leq = check_inequality(res.order, Pseudoidentity.parse("1 <= x^2")).holds
    eq = check_identity(res.monoid, Pseudoidentity.parse("(x y z x z y)^(w+1) = (x y z x z y)^w"))
    ok = leq and not eq.holds
    report(2, ok, 600, f"|Synt(L2)|={res.monoid.size} 1<=x^2:{leq} omega+1 identity fails:{not eq.holds} at {eq.witness}")


def test_criterion_3_squares_in_abcacb_star(report):
    bad = power_decomposition_counterexamples("abcacb", 2, 24)
    report(3, not bad, 60, f"counterexamples={len(bad)}")


def test_criterion_4_cubes_in_ln_base(report):
    base = "bba" * 2 + "ab" * 2 + "aa"
    assert base == lang.ln_base(3) and len(base) == 12
    bad = power_decomposition_counterexamples(base, 3, 36)
    report(4, not bad, 300, f"counterexamples={len(bad)}")


def test_criterion_5_three_bases_agree(report):
    disagreements = []
    counts = {}
    for item in CORPUS:
        assert item.monoid.size <= 300
        for n in (2, 3):
            v = {b: pv.membership(item.monoid, b, n).verdict for b in ("BGn_U", "BGn_V", "BGn_W")}
            if len(set(v.values())) != 1:
                disagreements.append((item.name, n, v))
            counts[n, v["BGn_W"]] = counts.get((n, v["BGn_W"]), 0) + 1
    report(5, len(CORPUS) >= 200 and not disagreements, 600,
           f"monoids={len(CORPUS)} disagreements={len(disagreements)} split={dict(sorted(counts.items()))}")


def test_criterion_6_one_leq_xn_implies_bgn(report):
    violations, passing = [], 0
    for n in (2, 3):
        ineq = Pseudoidentity.parse(f"x y^w z <= (x y^{n} z)^(w+1)")
        for item in language_corpus(n, seed=0):
            res = item.result
            if not check_inequality(res.order, Pseudoidentity.parse(f"1 <= x^{n}")):
                continue
            passing += 1
            if not pv.membership(res.monoid, "BGn_W", n):
                violations.append((item.name, n, "BGn_W"))
            if not check_inequality(res.order, ineq):
                violations.append((item.name, n, "inequality"))
    report(6, passing > 0 and not violations, 600, f"instances with 1<=x^n: {passing} violations={violations}")


def test_criterion_7_burnside(report):
    s2 = burnside_group("xyz", 2)
    s3 = burnside_group("xy", 3)
    first = s2.is_identity(sigma("xyzxzy", 2, "xyz"))
    second = s3.is_identity(sigma("yyx" * 2 + "xy" * 2 + "xx", 3, "xy"))
    sizes, cubes = [], True
    for k in (2, 3):
        G = burnside_group("xyz"[:k], 3)
        elems = enumerate_group(k, 3)
        sizes.append(len(elems))
        for e in elems:
            cubes &= G.is_identity(G.multiply(G.multiply(e, e), e))
    ok = first and second and sizes == [27, 2187] and cubes
    report(7, ok, 60, f"sigma(xyzxzy,2)=1:{first} sigma(cube word,3)=1:{second} orders={sizes} cubes=1:{cubes}")


def test_criterion_8_presentations(report):
    em0 = enumerate_presentation(builder_monoid_0(2))
    em1 = enumerate_presentation(builder_monoid_1(2))
    M0, M1 = em0.monoid, em1.monoid
    bh, ej0 = pv.membership(M0, "BHn", 2), pv.membership(M0, "EJn", 2)
    ej1, bg1 = pv.membership(M1, "EJn", 2), pv.membership(M1, "BGn_U", 2)
    # the witnesses, evaluated directly in the tables
    lhs = omega_power(M0, em0.element("aabb"))
    rhs = omega_power(M0, em0.element("bbaa"))
    direct0 = lhs != rhs
    direct1 = em1.element("aab") != em1.element("baa")
    cert0 = ej0.certificate["witness"] == {"x": "aa", "y": "bb"}
    cert1 = {bg1.certificate["lhs"], bg1.certificate["rhs"]} == {"aab", "baa"}
    ok = bh.verdict and ej0.verdict is False and ej1.verdict and bg1.verdict is False
    ok = ok and direct0 and direct1 and cert0 and cert1
    report(8, ok, 30, f"M0 in BH2:{bh.verdict} EJ2:{ej0.verdict} (a2b2)^w!=(b2a2)^w:{direct0}; "
                      f"M1 in EJ2:{ej1.verdict} BG2:{bg1.verdict} a2b!=ba2:{direct1}")


def test_criterion_9_product_deciders(report):
    C3 = cyclic_group(3)
    rep = pv.membership(C3, "JmHn", 2)
    pm = pv.pair_monoid(C3, 2)
    in_fiber = rep.certificate["elements"]["u"] in pm.identity_fiber
    violations = []
    for item in CORPUS:
        for n in (2, 3):
            if pv.membership(item.monoid, "JmHn", n) and not pv.membership(item.monoid, "BGn_W", n):
                violations.append((item.name, n))
    L2 = lang.syntactic_ordered_monoid(lang.lang_L2()).monoid
    pm2 = pv.pair_monoid(L2, 2)
    jm = pv.membership(L2, "JmHn", 2, pm=pm2).verdict
    js = pv.membership(L2, "JsHn", 2, pm=pm2).verdict
    ok = rep.verdict is False and in_fiber and not violations and jm is False and js is False
    report(9, ok, 600, f"C3 rejected with fiber witness:{in_fiber} implication violations={len(violations)} "
                       f"Synt(L2) JmH2:{jm} JsH2:{js}")


def test_criterion_10_provability(report):
    rng = np.random.default_rng(0)
    one_step = 0
    for _ in range(50):
        w = "".join(rng.choice(list("abc"), size=int(rng.integers(1, 7))))
        r = provable_leq("", w + w, 2)
        one_step += bool(r) and len(r.proof.steps) == 1
    refuted = not provable_leq("", "abcacb", 2)
    bg2 = [it.monoid for it in CORPUS if pv.membership(it.monoid, "BGn_W", 2)]
    violations = 0
    for _ in range(200):
        u, v, proof = random_provable_pair(rng, "abc", 2)
        assert proof.end == v and provable_leq(u, v, 2)
        for M in bg2:
            violations += not check_consequences(M, u, v, 2, verify_proof=False)
    sq_free = not has_power_factor("txyzxzyt", 2)
    cube_free = not has_power_factor("t" + "yyx" * 2 + "xy" * 2 + "xx" + "tt", 3)
    ok = one_step == 50 and refuted and violations == 0 and sq_free and cube_free
    report(10, ok, 600, f"one-step proofs={one_step}/50 abcacb refuted:{refuted} (BG)2 members={len(bg2)} "
                        f"violations={violations} square-free:{sq_free} cube-free:{cube_free}")
