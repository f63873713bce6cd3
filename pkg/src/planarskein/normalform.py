"""Directed rewriting toward spanning monomials, and the spanning checks.

The rewriting is a heuristic reduction, not a decision procedure: each rule
is a verified catalog relation solved for its largest word, and a rule fires
only when every word it produces is strictly smaller than the word it
replaces.  The measure compares reduced degree, then the number of factors
on three or more punctures, then the crossing proxy, inversions, and finally
the word itself.
Confluence is not claimed; theta-preservation is.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .multicurve import Multicurve, _trim, compatible, layout
from .ncpoly import Generator, NCPoly, gen
from .presentation import FAMILIES, build_catalog, theta_eval
from .ring import ScalarR, is_unit

__all__ = [
    "monomial_cn", "word_measure", "normal_form", "RewriteRule", "rules_for",
    "enumerate_profile_basis", "spanning_triangularity_check", "greedy_target_order",
    "independence_check", "profile_monomials", "sweep_profiles", "SpanningError",
    "NormalFormError", "LISTED_PROFILES", "random_word_poly", "targets_1_6",
    "all_profiles", "profile_report",
]

MAX_STEPS = 20000
WINDOW = 6
# exact commutations are handled directly, not through catalog rules
_SKIP_GROUPS = {"aux", "central", "commuting"}


class NormalFormError(RuntimeError):
    pass


class SpanningError(ValueError):
    pass


# ---------------------------------------------------------------------------
# measure

def _gen_key(g: Generator) -> tuple:
    return (0 if g.kind == "t" else 1, len(g.idx), g.idx)


def _gen_degree(g: Generator) -> int:
    if g.kind == "t" and len(g.idx) == 1:
        return 0
    return len(g.idx)


def monomial_cn(word: Sequence[Generator]) -> int:
    """2 for every unordered pair of factors with crossing supports."""
    total = 0
    for a, b in combinations(word, 2):
        if len(a.idx) > 1 and len(b.idx) > 1 and not compatible(a.idx, b.idx):
            total += 2
    return total


def word_measure(word: Sequence[Generator]) -> tuple:
    keys = [_gen_key(g) for g in word]
    inv = sum(1 for i, j in combinations(range(len(keys)), 2) if keys[i] > keys[j])
    big = sum(1 for g in word if len(g.idx) >= 3)
    return (sum(_gen_degree(g) for g in word), big, monomial_cn(word), inv, len(word), tuple(keys))


def _commute_exactly(a: Generator, b: Generator) -> bool:
    if len(a.idx) == 1 and a.kind == "t" or len(b.idx) == 1 and b.kind == "t":
        return True
    if a == b:
        return True
    sa, sb = set(a.idx), set(b.idx)
    if a.kind == "t" and b.kind == "t":
        return compatible(a.idx, b.idx)
    # s curves commute exactly when their supports are disjoint and unlinked
    return not (sa & sb) and compatible(a.idx, b.idx)


# ---------------------------------------------------------------------------
# rules

class RewriteRule:
    """``lhs`` (a word on punctures 1..m) rewrites to ``rhs``."""

    __slots__ = ("lhs", "rhs", "source")

    def __init__(self, lhs: tuple, rhs: NCPoly, source: str):
        self.lhs = lhs
        self.rhs = rhs
        self.source = source

    def as_relation(self) -> NCPoly:
        return NCPoly.word(*self.lhs) - self.rhs

    def __repr__(self) -> str:
        return f"RewriteRule({' '.join(map(repr, self.lhs))} -> {self.rhs!r} [{self.source}])"


def _support(p: NCPoly) -> set:
    return {i for g in p.generators() for i in g.idx}


@lru_cache(maxsize=None)
def rules_for(m: int) -> dict:
    """Rules whose relation uses exactly the punctures 1..m, keyed by lhs word."""
    table: dict = {}
    names = [f for f, fam in FAMILIES.items() if fam.group not in _SKIP_GROUPS]
    for r in build_catalog(m, names):
        if _support(r.poly) != set(range(1, m + 1)):
            continue
        ranked = sorted(r.poly.terms, key=word_measure, reverse=True)
        top = ranked[0]
        if len(ranked) > 1 and word_measure(ranked[1]) == word_measure(top):
            continue
        c = r.poly.terms[top]
        inv = c.inverse() if is_unit(c) else None
        if inv is None:
            continue
        rest = NCPoly({w: cf for w, cf in r.poly.terms.items() if w != top})
        rhs = -(rest * inv)
        table.setdefault(top, []).append(RewriteRule(top, rhs, r.label()))
    return table


def _relabel_word(word: tuple) -> tuple[tuple, list]:
    support = sorted({i for g in word for i in g.idx})
    fwd = {v: k + 1 for k, v in enumerate(support)}
    return tuple(Generator(g.kind, tuple(fwd[i] for i in g.idx)) for g in word), support


def _rewrite_once(word: tuple) -> NCPoly | None:
    """One measure-decreasing rewrite of ``word``, or None if it is irreducible."""
    mw = word_measure(word)

    def accept(p: NCPoly) -> bool:
        return all(word_measure(w) < mw for w in p.terms)

    # exact swaps of adjacent factors
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        if _gen_key(a) > _gen_key(b) and _commute_exactly(a, b):
            return NCPoly.word(*word[:i], b, a, *word[i + 2:])
    # catalog rules on windows of two or three factors
    for width in (2, 3):
        for i in range(len(word) - width + 1):
            sub = word[i:i + width]
            norm, support = _relabel_word(sub)
            if len(support) > WINDOW:
                continue
            for rule in rules_for(len(support)).get(norm, ()):
                rhs = rule.rhs.relabel(lambda j: support[j - 1])
                out = NCPoly.word(*word[:i]) * rhs * NCPoly.word(*word[i + width:])
                if accept(out):
                    return out
    return None


@lru_cache(maxsize=100000)
def _reduce_word(word: tuple) -> NCPoly | None:
    return _rewrite_once(word)


def _check_window(p: NCPoly) -> None:
    for w in p.terms:
        support = {i for g in w for i in g.idx}
        deg = sum(_gen_degree(g) for g in w if g.kind == "s")
        if len(support) > WINDOW or deg > 2 * WINDOW:
            raise NormalFormError(f"word {w} is outside the rewriting window")


def normal_form(p: NCPoly, n: int | None = None, max_steps: int = MAX_STEPS) -> NCPoly:
    """Rewrite ``p`` until no rule applies.

    Every step replaces one word by a combination of strictly smaller words,
    and this is asserted.  ``max_steps`` guards against runaway rewriting.
    """
    _check_window(p)
    if n is not None and p.max_index() > n:
        raise NormalFormError(f"index {p.max_index()} exceeds n={n}")
    done: dict = {}
    todo = dict(p.terms)
    steps = 0
    while todo:
        w = max(todo, key=word_measure)
        c = todo.pop(w)
        if c.is_zero():
            continue
        red = _reduce_word(w)
        if red is None:
            done[w] = done.get(w, ScalarR(0)) + c
            continue
        steps += 1
        if steps > max_steps:
            raise NormalFormError(f"no fixpoint after {max_steps} rewrites")
        mw = word_measure(w)
        for w2, c2 in red.terms.items():
            assert word_measure(w2) < mw, (w, w2)
            todo[w2] = todo.get(w2, ScalarR(0)) + c * c2
    return NCPoly(done)


# ---------------------------------------------------------------------------
# profiles and spanning checks

def _noncrossing_matchings(pts: list):
    if not pts:
        yield ()
        return
    a = pts[0]
    for k in range(1, len(pts), 2):
        for left in _noncrossing_matchings(pts[1:k]):
            for right in _noncrossing_matchings(pts[k + 1:]):
                yield ((a, pts[k]),) + left + right


@lru_cache(maxsize=None)
def _profile_basis(e: tuple) -> tuple:
    labels, _ = layout(e)
    seen = {}
    for m in _noncrossing_matchings(list(range(len(labels)))):
        partner = {}
        for i, j in m:
            partner[labels[i]] = labels[j]
            partner[labels[j]] = labels[i]
        mc, loops = Multicurve.from_labels(e, partner)
        if loops == 0 and mc.counts == _trim(e) and not any(mc.peripheral):
            seen[mc] = None
    return tuple(sorted(seen))


def enumerate_profile_basis(u: Sequence[int]) -> list:
    """Multicurves without peripheral components that meet puncture ``v`` exactly
    ``u[v-1]`` times (counted with multiplicity, in minimal position)."""
    e = tuple(int(x) for x in u)
    if any(x <= 0 for x in e) or sum(e) > 2 * WINDOW:
        raise ValueError(f"bad profile {e}")
    return list(_profile_basis(e))


def _projection(img, targets: list, e: tuple):
    """Split a theta-image into target coefficients and the discarded rest."""
    deg = sum(e)
    row = [img.terms.get(t, ScalarR(0)) for t in targets]
    tset = set(targets)
    offenders = []
    for k in img.terms:
        if k in tset:
            continue
        if k.reduced_degree() >= deg:
            offenders.append(k)
    return row, offenders


def _is_triangular(mat: list) -> str | None:
    n = len(mat)
    if all(mat[i][j].is_zero() for i in range(n) for j in range(i)):
        return "upper"
    if all(mat[i][j].is_zero() for i in range(n) for j in range(i + 1, n)):
        return "lower"
    return None


def spanning_triangularity_check(u: Sequence[int], monomials: Sequence[NCPoly],
                                 targets: Sequence[Multicurve], engine: str = "chord") -> dict:
    """Coefficient matrix of the monomials' images against the targets.

    Reports whether it is triangular in the given orders (upper or lower),
    whether the diagonal consists of units, and every full-degree key that
    falls outside the target list.
    """
    e = tuple(u)
    if len(monomials) != len(targets):
        raise SpanningError(f"{len(monomials)} monomials against {len(targets)} targets")
    n = len(e)
    targets = list(targets)
    mat, offenders = [], []
    for p in monomials:
        img = theta_eval(p, n, engine=engine)
        row, bad = _projection(img, targets, e)
        mat.append(row)
        offenders += [f"{p!r}: {k.name()}" for k in bad]
    shape = _is_triangular(mat)
    diag_ok = all(is_unit(mat[i][i]) for i in range(len(mat)))
    return {
        "profile": list(e),
        "triangular": shape is not None,
        "shape": shape,
        "unit_diagonal": diag_ok,
        "offenders": offenders,
        "diagonal": [repr(mat[i][i]) for i in range(len(mat))],
        "matrix": mat,
    }


def greedy_target_order(u: Sequence[int], monomials: Sequence[NCPoly],
                        targets: Sequence[Multicurve] | None = None, engine: str = "chord"):
    """Pick monomials and order targets so the matrix is lower triangular with
    unit diagonal.

    Repeatedly takes the first unused monomial whose image, restricted to the
    not yet covered targets, is a single unit multiple of one target.  Returns
    ``(chosen_monomials, ordered_targets, uncovered, offenders)``.
    """
    e = tuple(u)
    n = len(e)
    targets = list(enumerate_profile_basis(e) if targets is None else targets)
    rows = []
    offenders = []
    for p in monomials:
        row, bad = _projection(theta_eval(p, n, engine=engine), targets, e)
        rows.append(row)
        offenders += [f"{p!r}: {k.name()}" for k in bad]
    covered: list = []
    chosen: list = []
    used = set()
    progress = True
    while progress and len(covered) < len(targets):
        progress = False
        for i, row in enumerate(rows):
            if i in used:
                continue
            live = [j for j in range(len(targets)) if j not in covered and not row[j].is_zero()]
            if len(live) == 1 and is_unit(row[live[0]]):
                used.add(i)
                covered.append(live[0])
                chosen.append(monomials[i])
                progress = True
                break
    uncovered = [targets[j] for j in range(len(targets)) if j not in covered]
    return chosen, [targets[j] for j in covered], uncovered, offenders


def _rank(rows: list) -> int:
    rows = [r[:] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def independence_check(monomials: Sequence[NCPoly], n: int, v0: Fraction = Fraction(3, 2),
                       top_only_degree: int | None = None) -> int:
    """Rank of the monomials' theta-images after specializing v to ``v0``.

    Full rank at one value proves linear independence over R.  With
    ``top_only_degree`` set, keys of smaller reduced degree are dropped first,
    giving the rank modulo lower degree instead.
    """
    imgs = [theta_eval(p, n) for p in monomials]
    keys = sorted({k for im in imgs for k in im.terms
                   if top_only_degree is None or k.reduced_degree() >= top_only_degree})
    rows = [[im.terms[k].eval_at(v0) if k in im.terms else Fraction(0) for k in keys] for im in imgs]
    return _rank(rows)


def profile_monomials(u: Sequence[int]) -> list:
    """Products of standard s-curves, factors in generator order, whose index
    multiset is exactly the profile."""
    e = tuple(u)
    n = len(e)
    pool = [S for r in range(2, n + 1) for S in combinations(range(1, n + 1), r)]
    out = []
    target = sum(e)

    def rec(start, remaining, acc):
        if not any(remaining):
            out.append(acc)
            return
        for k in range(start, len(pool)):
            S = pool[k]
            if all(remaining[i - 1] > 0 for i in S):
                rem = list(remaining)
                for i in S:
                    rem[i - 1] -= 1
                rec(k, rem, acc + [S])

    if target:
        rec(0, list(e), [])
    polys = []
    for subsets in out:
        p = NCPoly.const(1)
        for S in subsets:
            p = p * gen("s", S)
        polys.append(p)
    return polys


def all_profiles(total: int = WINDOW) -> list:
    out = []

    def rec(prefix, left):
        if prefix:
            out.append(tuple(prefix))
        for x in range(1, left + 1):
            if len(prefix) < WINDOW:
                rec(prefix + [x], left - x)

    rec([], total)
    return sorted(out, key=lambda e: (sum(e), len(e), e))


def sweep_profiles(total: int = WINDOW, engine: str = "chord") -> list:
    """Greedy spanning certificate for every profile with entries summing to at
    most ``total``.  Profiles where the greedy choice leaves targets uncovered
    or meets an off-list full-degree key are reported, not hidden."""
    reports = []
    for e in all_profiles(total):
        if len(e) < 2:
            continue
        mons = profile_monomials(e)
        chosen, ordered, uncovered, offenders = greedy_target_order(e, mons, engine=engine)
        reports.append({
            "profile": list(e),
            "targets": len(ordered) + len(uncovered),
            "monomials": len(mons),
            "triangular": not uncovered,
            "unit_diagonal": not uncovered,
            "uncovered": [t.name() for t in uncovered],
            "offenders": offenders,
        })
    return reports


# monomial lists retained in the main spanning argument, per profile
LISTED_PROFILES: dict = {
    (1, 1, 1, 1, 1, 1): ["s13*s25*s46", "s12*s35*s46", "s23*s46*s15", "s34*s15*s26", "s45*s26*s13",
                         "s56*s13*s24", "s16*s24*s35", "s123*s456", "s234*s156", "s345*s126",
                         "s12*s34*s56", "s16*s23*s45", "s14*s23*s56", "s16*s25*s34", "s12*s36*s45"],
    (1, 1, 2, 1, 1): ["s13*s25*s34", "s13*s24*s35", "s14*s23*s35", "s12*s34*s35", "s13*s23*s45",
                      "s15*s23*s34"],
    (1, 2, 2, 1): ["s14*s23^2", "s12*s23*s34", "s13*s23*s24"],
    (2, 1, 2, 1): ["s12*s13*s34", "s13*s14*s23", "s13^2*s24"],
    (1, 1, 1, 1, 1): ["s12*s345", "s23*s145", "s34*s125", "s45*s123", "s15*s234", "s13*s245"],
    (2, 1, 1, 1): ["s12*s134", "s13*s124", "s14*s123"],
}

# targets for (1,...,1) in the order they are listed alongside the monomials
TARGETS_1_6 = [
    [[1, 2, 3, 4, 5, 6]], [[1, 2], [3, 4, 5, 6]], [[2, 3], [1, 4, 5, 6]], [[3, 4], [1, 2, 5, 6]],
    [[4, 5], [1, 2, 3, 6]], [[5, 6], [1, 2, 3, 4]], [[1, 6], [2, 3, 4, 5]], [[1, 2, 3], [4, 5, 6]],
    [[2, 3, 4], [1, 5, 6]], [[3, 4, 5], [1, 2, 6]], [[1, 2], [3, 4], [5, 6]], [[1, 6], [2, 3], [4, 5]],
    [[1, 4], [2, 3], [5, 6]], [[1, 6], [2, 5], [3, 4]], [[1, 2], [3, 6], [4, 5]],
]


def targets_1_6() -> list:
    return [Multicurve.from_subsets(s) for s in TARGETS_1_6]


def random_word_poly(rng: random.Random, n: int = 4, length: int = 3, terms: int = 2) -> NCPoly:
    """Small random polynomial inside the rewriting window, for tests."""
    pool = [Generator("t", (i,)) for i in range(1, n + 1)]
    pool += [Generator("s", S) for r in (2, 3) for S in combinations(range(1, n + 1), r)]
    p = NCPoly()
    for _ in range(terms):
        w = [rng.choice(pool) for _ in range(rng.randint(1, length))]
        if sum(_gen_degree(g) for g in w) > 2 * WINDOW:
            continue
        p = p + NCPoly.word(*w, coeff=ScalarR({rng.randint(-2, 2): rng.choice([-1, 1])}))
    return p


def profile_report(u: Sequence[int], engine: str = "chord") -> dict:
    """Spanning report for one profile.

    The all-ones profile on six punctures uses the retained monomials and the
    targets in their listed order.  Other profiles with a retained list use
    those monomials with a greedily ordered target list; the rest fall back to
    every s-monomial of the profile.
    """
    from .expr import parse_poly

    e = tuple(int(x) for x in u)
    targets = enumerate_profile_basis(e)
    listed = [parse_poly(x) for x in LISTED_PROFILES.get(e, [])]
    if e == (1,) * 6:
        rep = spanning_triangularity_check(e, listed, targets_1_6(), engine=engine)
        rep["source"] = "retained"
        monos, ordered = listed, targets_1_6()
    else:
        pool = listed or profile_monomials(e)
        monos, ordered, uncovered, offenders = greedy_target_order(e, pool, targets, engine=engine)
        if uncovered or not monos:
            rep = {"profile": list(e), "triangular": not uncovered, "shape": None,
                   "unit_diagonal": not uncovered, "offenders": offenders, "diagonal": []}
        else:
            rep = spanning_triangularity_check(e, monos, ordered, engine=engine)
            rep["offenders"] = sorted(set(rep["offenders"]) | set(offenders))
        rep["source"] = "retained" if listed else "all-monomials"
        unused = [p for p in pool if p not in monos]
        if listed and unused:
            n = len(e)
            rep["unused_retained"] = [repr(p) for p in unused]
            rep["rank_full"] = independence_check(listed, n)
            rep["rank_top_degree"] = independence_check(listed, n, top_only_degree=sum(e))
    rep.pop("matrix", None)
    rep["targets"] = [t.name() for t in ordered]
    rep["monomials"] = [repr(p) for p in monos]
    return rep
