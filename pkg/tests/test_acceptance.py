"""Acceptance criteria 1-11.  Each test prints one PASS/FAIL line."""

import itertools
import json
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from obcalc import dthree, foliations, links3
from obcalc.domains import PeriodicData
from obcalc.infer import Fact, rule_ids, run
from obcalc.links3.braid import Braid3Word
from obcalc.links3.bracket import bracket_det
from obcalc.links3.goeritz import goeritz_det
from obcalc.mcg import MCG_ALPHABET, PseudoAnosov, TwistWord, classify, normal_form_word
from obcalc.openbook import (
    NULL,
    UNAFFECTED,
    CurveInfo,
    OpenBookDesc,
    SurfaceSig,
    cap_off,
    example_s12,
    glue,
    legendrian_stabilize,
    self_glue,
    stabilization_names,
)
from conftest import random_word_letters

ROOT = Path(__file__).resolve().parent.parent
DATA = Path(__file__).parent / "data"


@pytest.fixture
def verdict(capsys):
    def report(number, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
        assert ok, detail

    return report


def _words(count, seed):
    rng = random.Random(seed)
    return [TwistWord(random_word_letters(rng), MCG_ALPHABET) for _ in range(count)]


SUITE_WORDS = _words(500, seed=1)


def test_criterion_01_classification(verdict):
    start = time.perf_counter()
    rng = random.Random(2)
    bad = []
    for w in SUITE_WORDS:
        nf = classify(w)
        u = TwistWord(random_word_letters(rng, 6), MCG_ALPHABET)
        if classify(u * w * u.inverse()) != nf:
            bad.append(("conjugation", str(w)))
        ls = w.letters
        for i in range(len(ls)):
            if classify(TwistWord(ls[i:] + ls[:i], MCG_ALPHABET)) != nf:
                bad.append(("rotation", str(w)))
                break
        if isinstance(nf, PseudoAnosov) and classify(normal_form_word(nf.n, nf.d)) != nf:
            bad.append(("round trip", str(w)))
    elapsed = time.perf_counter() - start
    verdict(1, not bad and elapsed < 5, f"{len(SUITE_WORDS)} words, {elapsed:.2f}s, {len(bad)} failures")


def test_criterion_02_exponent_identity(verdict):
    bad, pa = [], 0
    for w in SUITE_WORDS:
        nf = classify(w)
        if isinstance(nf, PseudoAnosov):
            pa += 1
            if w.exponent_sum() != 6 * nf.d + len(nf.n) - sum(nf.n):
                bad.append(str(w))
    verdict(2, pa > 0 and not bad, f"{pa} pseudo-Anosov words, {len(bad)} mismatches")


def _braid_suite():
    gens = [(1, 1), (1, -1), (2, 1), (2, -1)]
    out = []
    for length in range(0, 8):
        out += [Braid3Word(c) for c in itertools.product(gens, repeat=length)]
    rng = random.Random(3)
    for _ in range(1500):
        out.append(Braid3Word(tuple(rng.choice(gens) for _ in range(rng.randint(7, 14)))))
    return out


def test_criterion_03_determinant_oracles(verdict):
    start = time.perf_counter()
    named = {"s2 s1^-1": 1, "s1 s2 s1 s2": 3}
    ok = all(links3.determinant(links3.parse_braid(b)) == v for b, v in named.items())
    ok &= links3.determinant(links3.parse_braid("s2 s1^-1") ** 2) == 5
    suite = _braid_suite()
    bad = 0
    for b in suite:
        c = b.crossings()
        d = links3.determinant(b)
        if not (d == bracket_det(c) == goeritz_det(c)):
            bad += 1
    elapsed = time.perf_counter() - start
    verdict(3, ok and not bad and elapsed < 30,
            f"{len(suite)} braids (all words up to 7 crossings, random up to 14), {bad} mismatches, {elapsed:.1f}s")


def _n_suite():
    out = []
    for length in range(1, 6):
        for n in itertools.product(range(7), repeat=length):
            if max(n) > 0:
                out.append(n)
    return out


def test_criterion_04_detsum_and_rank(verdict):
    bad = []
    suite = _n_suite()
    for n in suite:
        ds = links3.detsum(n)
        if not ds.holds:
            bad.append(("detsum", n))
        if links3.hf_model(links3.minus(n)).hat_rank != links3.hf_model(n).hat_rank + ds.det_resolution:
            bad.append(("rank", n))
    verdict(4, not bad, f"{len(suite)} tuples, {len(bad)} failures")


D3_SUITE = dthree.random_suite(1000, seed=2024)


def test_criterion_05_telescope(verdict):
    bad = [pd for pd in D3_SUITE
           if (lambda r: r.d3_printed != r.d3_telescoped)(dthree.d3(pd, "printed", 0))]
    verdict(5, len(D3_SUITE) == 1000 and not bad, f"{len(D3_SUITE)} inputs, {len(bad)} mismatches")


def test_criterion_06_calibration(verdict):
    cal = dthree.calibrate(D3_SUITE + [dthree.DISCRIMINATING])
    text = dthree.conventions_report(cal)
    (ROOT / "CONVENTIONS.md").write_text(text)
    ok = cal.selected is not None and cal.audits[cal.selected].clean
    counts = ", ".join(f"{c}: {len(a.violations)} violations" for c, a in cal.audits.items())
    verdict(6, ok, f"selected {cal.selected}; {counts}; CONVENTIONS.md written")


def test_criterion_07_shift_bound(verdict):
    cal = dthree.calibrate(D3_SUITE + [dthree.DISCRIMINATING])
    channel = cal.selected or "printed"
    over = []
    count = 0
    for pd in D3_SUITE:
        for s in dthree.d3(pd, channel, 0).per_cap_shifts:
            count += 1
            if s > Fraction(1, 4):
                over.append((pd.k, pd.m, s))
    verdict(7, not over, f"{count} shifts under {channel}, {len(over)} above 1/4")


def test_criterion_08_support_genus(verdict):
    bad = []
    suite = _n_suite()
    for n in suite:
        for d in (-2, -1, 0, 1, 2, 3):
            res = links3.support_genus(n, d)
            want = links3.ZERO if d <= 0 else links3.UNKNOWN_D1 if d == 1 else links3.ONE
            if res.value != want:
                bad.append((n, d))
            if d >= 2:
                first, last = res.chain[0], res.chain[-1]
                if (first.op, first.n, first.d) != ("base", (1,), 2) or (last.n, last.d) != (n, d):
                    bad.append(("chain", n, d))
    verdict(8, not bad, f"{len(suite)} tuples x 6 values of d, {len(bad)} failures")


def test_criterion_09_inference(verdict):
    script = json.loads((DATA / "pipeline.json").read_text())
    cl = run(script)
    goal = Fact("Y", "sg_ge", 1)
    path = cl.rule_path(goal) if goal in cl else []
    cited = [r for r in path if r in ("R-nontor", "R-capR", "R-planar")]
    base = {f: cl.tree(f) for f in cl}
    rng = random.Random(9)
    same = 0
    for _ in range(100):
        order = rule_ids()
        rng.shuffle(order)
        other = run(script, rule_order=order)
        same += {f: other.tree(f) for f in other} == base
    ok = cited == ["R-nontor", "R-capR", "R-planar"] and same == 100
    verdict(9, ok, f"path {' > '.join(path)}; {same}/100 orders identical")


def _random_foliation(rng):
    while True:
        g = rng.randint(0, 3)
        sings = [rng.randint(1, 6) for _ in range(rng.randint(1, 5))]
        deficit = sum(2 - p for p in sings) - (4 - 4 * g)
        if deficit >= 0:
            break
    parts = []
    while deficit:
        x = rng.randint(1, deficit)
        parts.append(x + 2)
        deficit -= x
    labels = tuple(f"B{i}" for i in range(len(sings)))
    fdtc = [Fraction(rng.randint(-6, 18), rng.choice([1, 2, 3, 6])) for _ in sings]
    return foliations.FoliationData(SurfaceSig(g, labels), parts, sings, fdtc)


def test_criterion_10_foliations(verdict):
    rng = random.Random(10)
    capped = rejected = fired = 0
    bad = []
    for _ in range(500):
        fd = _random_foliation(rng)
        if not foliations.validate(fd).ok:
            bad.append(("generator", fd))
            continue
        i = rng.randrange(fd.surface.r)
        label = fd.surface.boundary[i]
        if fd.boundary_sings[i] == 1:
            try:
                foliations.cap_foliation(fd, label)
                bad.append(("p=1 accepted", fd))
            except foliations.NotCappable:
                rejected += 1
        else:
            out = foliations.cap_foliation(fd, label)
            lhs, rhs = foliations.balance(out)
            capped += 1
            if lhs != rhs:
                bad.append(("balance", fd))
        hyp = (fd.surface.genus == 1 and all(p == 2 for p in fd.boundary_sings)
               and any(c < 1 for c in fd.fdtc))
        rep = foliations.u_image_report(fd)
        fired += rep.verdict == foliations.IN_IM_U
        if (rep.verdict == foliations.IN_IM_U) != hyp:
            bad.append(("reporter", fd))
    ok = not bad and rejected > 0 and fired > 0
    verdict(10, ok, f"{capped} caps, {rejected} p=1 rejections, reporter fired {fired} times, {len(bad)} failures")


def _random_book(rng, prefix, min_r=0):
    g = rng.randint(0, 2)
    labels = tuple(f"{prefix}{i}" for i in range(rng.randint(min_r, 5)))
    curves = []
    for j in range(rng.randint(1, 4)):
        cid = f"{prefix.lower()}{j}"
        if labels and rng.random() < 0.5:
            b = rng.choice(labels)
            curves.append(CurveInfo(cid, "boundary-parallel", b, {x: UNAFFECTED for x in labels if x != b}))
        else:
            curves.append(CurveInfo(cid, "generic", None, {x: rng.choice([UNAFFECTED, NULL]) for x in labels}))
    ids = [c.id for c in curves]
    letters = tuple((rng.choice(ids), rng.choice([-2, -1, 1, 2])) for _ in range(rng.randint(0, 8)))
    return OpenBookDesc(SurfaceSig(g, labels), TwistWord(letters), curves)


def test_criterion_11_open_books(verdict):
    rng = random.Random(11)
    bad = []
    for _ in range(300):
        a, b = _random_book(rng, "L", 1), _random_book(rng, "R", 1)
        n = rng.randint(1, min(a.r, b.r))
        if a.r > n or b.r > n:
            out = glue(a, b, list(zip(a.surface.boundary[:n], b.surface.boundary[:n])))
            chi = out.surface.euler_characteristic
            if chi != a.surface.euler_characteristic + b.surface.euler_characteristic:
                bad.append(("glue chi", a, b))
        c = _random_book(rng, "S", 3)
        x, y = rng.sample(c.surface.boundary, 2)
        if self_glue(c, (x, y)).surface.euler_characteristic != c.surface.euler_characteristic:
            bad.append(("self-glue chi", c))
        if cap_off(cap_off(c, x), y) != cap_off(cap_off(c, y), x):
            bad.append(("cap commute", c))
    ob = example_s12()
    for curve in ("a", "b", "gamma"):
        for sign in (1, -1):
            kp, bp, bm = stabilization_names(ob, curve, sign)
            if cap_off(cap_off(legendrian_stabilize(ob, curve, sign), bp), bm) != ob:
                bad.append(("stabilize round trip", curve, sign))
    verdict(11, not bad, f"300 random glue/self-glue/cap cases + 6 stabilizations, {len(bad)} failures")
