"""Acceptance criteria, one test each.

Every test records a one-line verdict (see ``support.record``); the lines are
printed again in the pytest terminal summary.  Run this module directly for
just the eight verdicts.
"""

from __future__ import annotations

import itertools
import random
import time

from support import (
    conjugate_by_braid,
    insert_canceling_pair,
    random_knot,
    random_link,
    record,
    self_crossings,
    switch_event,
)

from stringlink import skein
from stringlink.closed import connected_sum, smooth_crossing, switch_crossing
from stringlink.generate import gen_string_link
from stringlink.lab import DivisibilityError, check_vanishing, thm1_rhs, thm2_A_term, thm2_rhs
from stringlink.laurent import LaurentPoly2
from stringlink.milnor import linking_number, mu, mu_table
from stringlink.tangle import close, parse_tangle, stack

t, z = LaurentPoly2.t(), LaurentPoly2.z()


def test_criterion_1_length_three_identity():
    start = time.perf_counter()
    checks, bad = 0, []
    for seed in range(200):
        sigma = gen_string_link(3, 14, seed)
        assert sigma.crossing_count <= 14
        for I in itertools.permutations((1, 2, 3)):
            checks += 1
            if thm2_rhs(sigma, I) != mu(sigma, I):
                bad.append((seed, I))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    record(1, ok, f"{checks - len(bad)}/{checks} checks on 200 links in {elapsed:.1f}s")
    assert ok, bad[:10]


def test_criterion_2_p0_identity():
    start = time.perf_counter()
    links, seed = [], 0
    while len(links) < 25:
        sigma = gen_string_link(4, 40, seed, "commutator-built")
        if check_vanishing(sigma, 2):
            links.append((seed, sigma))
        seed += 1
    checks, bad, indivisible = 0, [], 0
    for seed, sigma in links:
        for I in itertools.permutations((1, 2, 3, 4)):
            checks += 1
            try:
                rhs = thm1_rhs(sigma, I)
            except DivisibilityError:
                indivisible += 1
                bad.append((seed, I, "indivisible"))
                continue
            if rhs != mu(sigma, I):
                bad.append((seed, I, rhs, mu(sigma, I)))
    elapsed = time.perf_counter() - start
    failing_links = sorted({b[0] for b in bad})
    ok = not bad and elapsed < 900
    detail = (
        f"{checks - len(bad)}/{checks} checks on 25 links in {elapsed:.1f}s, "
        f"{indivisible} indivisible by 48; mismatches on links {failing_links}"
        if bad
        else f"{checks}/{checks} checks on 25 links in {elapsed:.1f}s, all divisible by 48"
    )
    if bad:
        # every mismatch observed so far comes from a link with a nonzero
        # length-3 invariant; report that alongside the failure
        culprits = [s for s, sig in links if s in failing_links and not check_vanishing(sig, 3)]
        detail += f" (nonzero length-3 mu on {len(culprits)}/{len(failing_links)} of them)"
    record(2, ok, detail)
    assert ok, bad[:10]


def test_criterion_3_worked_example():
    fig8 = close(parse_tangle("braid 3: 1 -2 1 -2"))
    a2 = skein.a2(fig8)
    value = a2 - a2 - 1 * 1
    # a string link whose invariants match: lk12 = lk23 = 1, lk13 = 0, mu123 = -1
    sigma = parse_tangle("braid 3: 1 1 2 2")
    lk = (linking_number(sigma, 1, 2), linking_number(sigma, 2, 3), linking_number(sigma, 1, 3))
    ok = (
        a2 == -1
        and value == -1
        and thm2_A_term((1, 2, 3), lk[0]) == 0
        and lk == (1, 1, 0)
        and mu(sigma, (1, 2, 3)) == thm2_rhs(sigma, (1, 2, 3)) == -1
    )
    record(3, ok, f"a2(4_1) = {a2}; a2 - a2 - 1*1 = {value}")
    assert ok


def test_criterion_4_low_derivatives():
    rng = random.Random(4)
    bad = []
    for k in range(50):
        K = random_knot(rng, 16)
        d = [skein.p0_deriv(K, m) for m in range(3)]
        if d != [1, 0, -8 * skein.a2(K)]:
            bad.append((k, d))
    record(4, not bad, f"{50 - len(bad)}/50 random knots")
    assert not bad


def test_criterion_5_skein_relation():
    rng = random.Random(5)
    pairs, bad = 0, []
    while pairs < 100:
        D = random_link(rng, 12)
        if not D.crossings:
            continue
        c = rng.randrange(len(D.crossings))
        P, Ps, P0 = skein.homfly(D), skein.homfly(switch_crossing(D, c)), skein.homfly(smooth_crossing(D, c))
        plus, minus = (P, Ps) if D.crossings[c].sign > 0 else (Ps, P)
        ok = t**-1 * plus - t * minus == z * P0 and skein.conway(D) == P.eval_t1()
        if not ok:
            bad.append(pairs)
        pairs += 1
    record(5, not bad, f"{pairs - len(bad)}/{pairs} (diagram, crossing) pairs")
    assert not bad


def test_criterion_6_connected_sum():
    rng = random.Random(6)
    bad = []
    for k in range(20):
        K1, K2 = random_knot(rng, 10), random_knot(rng, 10)
        K = connected_sum(K1, K2)
        d1 = [skein.p0_deriv(K1, m) for m in range(4)]
        d2 = [skein.p0_deriv(K2, m) for m in range(4)]
        mult = skein.homfly(K) == skein.homfly(K1) * skein.homfly(K2)
        leib = all(skein.p0_deriv(K, m) == skein.leibniz_p0(d1, d2, m) for m in range(4))
        if not (mult and leib):
            bad.append(k)
    record(6, not bad, f"{20 - len(bad)}/20 connected sums")
    assert not bad


def test_criterion_7_mu_foundations():
    rng = random.Random(7)
    lk_bad = 0
    for k in range(100):
        n = rng.randint(2, 4)
        sigma = gen_string_link(n, 14, f"lk:{k}")
        lk_bad += any(
            mu(sigma, (i, j)) != linking_number(sigma, i, j) for i, j in itertools.permutations(range(1, n + 1), 2)
        )

    pairs, sc_bad, seed = 0, 0, 0
    while pairs < 50:
        sigma = gen_string_link(3, 14, f"self:{seed}")
        seed += 1
        for k in self_crossings(sigma)[:2]:
            other = switch_event(sigma, k)
            sc_bad += mu_table(other, 3) != mu_table(sigma, 3) or mu_table(other, 2) != mu_table(sigma, 2)
            pairs += 1

    add_bad = 0
    for k in range(20):
        a = gen_string_link(4, 24, f"add:{k}", "commutator-built")
        b = gen_string_link(4, 24, f"add:{k}'", "commutator-built")
        ab = stack(a, b)
        for length in (2, 3, 4):
            ta, tb, tab = mu_table(a, length), mu_table(b, length), mu_table(ab, length)
            add_bad += any(tab[I] != ta[I] + tb[I] for I in tab)

    ok = not (lk_bad or sc_bad or add_bad)
    record(
        7,
        ok,
        f"lk {100 - lk_bad}/100, self-crossing {pairs - sc_bad}/{pairs}, additivity {20 - add_bad}/20",
    )
    assert ok


def test_criterion_8_diagram_moves():
    rng = random.Random(8)
    bad = []
    for k in range(50):
        sigma = gen_string_link(rng.randint(2, 4), 12, f"move:{k}")
        P = skein.homfly(close(sigma))
        moved = insert_canceling_pair(sigma, rng)
        conj = conjugate_by_braid(sigma, rng)
        same = (
            skein.homfly(close(moved)) == P
            and skein.homfly(close(conj)) == P
            and skein.conway(close(conj)) == P.eval_t1()
            and mu_table(moved, 2) == mu_table(sigma, 2)
        )
        if not same:
            bad.append(k)
    record(8, not bad, f"{50 - len(bad)}/50 mutated diagrams")
    assert not bad


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
