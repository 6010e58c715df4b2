"""Named check suites, one per result being replayed.

Each suite returns a list of ``Check`` records; the CLI prints them and the
acceptance tests assert on them.  Randomized suites take a seed and a case
count and are deterministic for fixed arguments.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable

from . import dynamics, funcalc, ktheory, paradox, regset
from .freegroup import Word, ball, format_word, sphere, word
from .regset import Pattern


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: Any = None

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": bool(self.ok), "detail": self.detail}


def _cyl(t: Word) -> funcalc.StepFunction:
    return funcalc.indicator(regset.cylinder(t))


def random_cylinder_projection(rng: random.Random, depth: int = 3) -> funcalc.StepFunction:
    """A random boolean combination of cylinders of length ``<= depth``."""
    words = [w for w in ball(depth) if not w.is_identity]
    picks = rng.sample(words, rng.randint(1, 4))
    s = regset.cylinder(picks[0])
    for w in picks[1:]:
        op = rng.choice(("or", "and", "minus"))
        c = regset.cylinder(w)
        s = s | c if op == "or" else (s & c if op == "and" else s - c)
    return funcalc.indicator(s)


def cylinder_projection_sums(seed: int = 0, cases: int = 50) -> list[Check]:
    """Projections of the cylinder algebra are finite sums of cylinder projections mod I."""
    rng = random.Random(seed)
    ok = True
    for _ in range(cases):
        f = random_cylinder_projection(rng)
        k = funcalc.depth_of(f)
        coords = funcalc.coords_at_depth(f, k)
        back = funcalc.from_depth_coords(coords, k)
        ok &= set(coords) <= {0, 1} and funcalc.equals_mod_I(back, f)
    return [Check(f"{cases} random projections are sums of cylinder projections", ok)]


def cylinder_infiniteness(radius: int = 3) -> list[Check]:
    out = []
    ok = True
    for t in ball(radius):
        if t.is_identity:
            continue
        w = paradox.infiniteness_witness(t)
        ok &= w.verify()
    out.append(Check(f"t.p strictly below p for every cylinder of length <= {radius}", ok))
    return out


def topological_freeness(radius: int = 3) -> list[Check]:
    words = [w for w in ball(radius) if not w.is_identity]
    bad = [
        (format_word(s), format_word(t))
        for s in words
        for t in words
        if not dynamics.topfree_witness(s, t).passed
    ]
    return [Check(f"topological freeness witnesses for |s|, |t| <= {radius}", not bad, bad)]


def minimality(radius: int = 4) -> list[Check]:
    bad = [format_word(r) for r in ball(radius) if not r.is_identity and not dynamics.minimality_witness(r).passed]
    return [Check(f"s.p + t.p >= 1 mod I for all |r| <= {radius}", not bad, bad)]


def amenability(i_max: int = 8) -> list[Check]:
    rep = dynamics.amenability_suite(i_max)
    out = [Check(n, ok) for n, ok in rep.checks if not n.startswith("<T_") or not ok]
    norms = all(ok for n, ok in rep.checks if n.startswith("<T_"))
    out.insert(0, Check(f"<T_i, T_i> = 1 mod I for i <= {i_max}", norms))
    out.append(Check("worst slack", True, str(rep.extra["worst_slack"])))
    return out


def _report_checks(rep: ktheory.KGroupReport) -> list[Check]:
    return [Check(c["name"], c["ok"], c.get("detail")) for c in rep.claims]


def k0_example1(depth: int = 3) -> list[Check]:
    return _report_checks(ktheory.k0_report_example1(depth))


def k1_example1_kernels(depth: int = 4) -> list[Check]:
    out = []
    for k in range(1, depth + 1):
        rep = ktheory.k1_example1(k)
        out.append(Check(f"kernel of sigma_{k} is spanned by constants", rep.passed, rep.kernel_rank))
    return out


def k1_example1_report(depth: int = 3) -> list[Check]:
    return _report_checks(ktheory.k1_example1(depth))


def random_obstructed_projection(rng: random.Random) -> funcalc.StepFunction:
    """``(p - p_1)...(p - p_n)`` with ``p`` a cylinder or pattern and ``p_i`` patterns below it."""
    pats = ktheory.generator_patterns(1, 2)
    if rng.random() < 0.5:
        p = _cyl(rng.choice(sphere(rng.randint(1, 2))))
    else:
        p = funcalc.indicator(regset.pattern_set(rng.choice(pats)))
    r = p
    for q in rng.sample(pats, 3):
        qf = funcalc.indicator(regset.pattern_set(q)) * p
        if paradox.strictly_below_mod_I(qf, p):
            r = r * (p - qf)
    return r


def obstructed_products(seed: int = 0, cases: int = 30) -> list[Check]:
    rng = random.Random(seed)
    ok = True
    done = 0
    while done < cases:
        r = random_obstructed_projection(rng)
        if funcalc.is_zero_mod_I(r):
            continue
        g = dynamics.sub_generator(r)
        ok &= funcalc.is_projection(r) and funcalc.leq_mod_I(_cyl(g), r)
        done += 1
    return [Check(f"{cases} obstructed products are projections with a cylinder below", ok)]


def obstruction_fixtures() -> list[tuple[str, Any, list]]:
    """The obstruction families: disjoint residue classes below B(a), and the pattern case."""
    P = Pattern.parse
    fam = [P("", "a", "b"), P("a", "B", "A"), P("aB", "a", "b"), P("aBa", "B", "A"), P("aBaB", "a", "b")]
    out = [(f"B(a) with {n} obstructions", word("a"), fam[:n]) for n in range(1, len(fam) + 1)]
    out.append(("B(ba) with conjugated obstructions", word("ba"), [P("ba", "a", "b"), P("baa", "B", "A")]))
    for N in range(0, 4):
        qs = [P("", "ab", "a")] + [regset.cylinder(word("a" * k + "b")) for k in range(1, N + 1)]
        out.append((f"pattern a^N b with q_0..q_{N}", P("", "a", "b"), qs))
    for N in range(1, 3):
        qs = [P("", "abab", "a")] + [P("a" * k, "ba", "b") for k in range(1, N + 1)]
        out.append((f"pattern a^N b^N a^N b with q_0..q_{N}", P("", "aba", "b"), qs))
    return out


def obstruction_witnesses() -> list[Check]:
    out = []
    for name, p, obs in obstruction_fixtures():
        w = paradox.infiniteness_witness(p, obs)
        out.append(Check(name, w.verify(), format_word(w.t)))
    return out


def k0_example2(depth: int = 2) -> list[Check]:
    return _report_checks(ktheory.k0_report_example2(depth))


def k1_example2(seed: int = 0, cases: int = 50) -> list[Check]:
    ok, rows = ktheory.coefficient_table_check()
    out = [Check("coefficient table matches", ok, len(rows))]
    ra, rb = ktheory.r_invariance()
    out.append(Check("a.r = r mod I", ra))
    out.append(Check("b.r' = r' mod I", rb))
    rng = random.Random(seed)
    quads = [tuple(rng.randint(-9, 9) for _ in range(4)) for _ in range(cases)]
    bad = [q for q in quads if not ktheory.kernel_pair_holds(*q)]
    out.append(Check(f"(n + m r, k + l r') in ker sigma for {cases} seeded cases", not bad, bad))
    rep = ktheory.k1_example2(2, 2)
    out.extend(_report_checks(rep))
    return out


def paradoxical_decomposition() -> list[Check]:
    c = paradox.standard_cert()
    out = [Check("standard certificate is strong", bool(paradox.verify_cert(c)))]
    iso = paradox.cert_to_isometries(c)
    out.extend(Check(n, ok) for n, ok in iso.checks().items())
    bad = [format_word(t) for t in ball(3) if not t.is_identity and not paradox.verify_cert(paradox.cylinder_cert(t))]
    out.append(Check("cylinder certificates are weak-valid for |t| <= 3", not bad, bad))
    return out


def three_colouring() -> list[Check]:
    tc = paradox.three_coloring()
    return [Check(n, ok) for n, ok in tc.checks().items()]


SUITES: dict[str, Callable[..., list[Check]]] = {
    "lem1": cylinder_projection_sums,
    "lem2": cylinder_infiniteness,
    "lem3": topological_freeness,
    "lem4": minimality,
    "lem5": amenability,
    "lem6": k0_example1,
    "lem7": k1_example1_kernels,
    "lem8": k1_example1_report,
    "lem11": obstructed_products,
    "lem12": obstruction_witnesses,
    "lem14": k0_example2,
    "lem16": k1_example2,
    "men31": paradoxical_decomposition,
    "lem01": three_colouring,
}

# which suites take (seed, cases) and which take a size bound through --cases
SEEDED = {"lem1", "lem11", "lem16"}
SIZED = {"lem2", "lem3", "lem4", "lem5", "lem6", "lem7", "lem8", "lem14"}


def run(name: str, seed: int = 0, cases: int | None = None) -> list[Check]:
    fn = SUITES[name]
    if name in SEEDED:
        return fn(seed=seed, cases=cases) if cases is not None else fn(seed=seed)
    if name in SIZED and cases is not None:
        return fn(cases)
    return fn()
