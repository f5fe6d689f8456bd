"""The F4 root system and its correspondence with the prolonged frame.

Roots are integer coefficient 4-tuples over the simple roots (alpha1..alpha4).
The published correspondence attaches the negative root -root(k) to zeta_k; we
store the positive coefficient tuples.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .report import DISCREPANCY, Item, check

Root = Tuple[int, int, int, int]

# Bourbaki F4 Cartan matrix: alpha1, alpha2 long; alpha3, alpha4 short
CARTAN_MATRIX: Tuple[Tuple[int, ...], ...] = (
    (2, -1, 0, 0),
    (-1, 2, -2, 0),
    (0, -1, 2, -1),
    (0, 0, -1, 2),
)

HIGHEST_ROOT: Root = (2, 3, 4, 2)

# the published zeta_k <-> -(root) assignment; zeta_17 repeats the zeta_14
# value in print, repaired mechanically by bijectivity
PRINTED_ASSIGNMENT: Dict[int, Root] = {
    1: (1, 0, 0, 0), 2: (0, 1, 0, 0), 3: (0, 0, 1, 0), 4: (0, 0, 0, 1),
    5: (1, 1, 0, 0), 6: (0, 1, 1, 0), 7: (0, 0, 1, 1),
    8: (1, 1, 1, 0), 9: (0, 1, 1, 1), 10: (0, 1, 2, 0),
    11: (1, 1, 1, 1), 12: (1, 1, 2, 0), 13: (0, 1, 2, 1),
    14: (1, 1, 2, 1), 15: (1, 2, 2, 0), 16: (0, 1, 2, 2),
    17: (1, 1, 2, 1), 18: (1, 1, 2, 2),
    19: (1, 2, 2, 2), 20: (1, 2, 3, 1),
    21: (1, 2, 3, 2), 22: (1, 2, 4, 2), 23: (1, 3, 4, 2), 24: (2, 3, 4, 2),
}


def cartan_pairing(beta: Root, j: int) -> int:
    """<beta, alpha_j^vee> = sum_i b_i A[i][j]."""
    return sum(b * CARTAN_MATRIX[i][j] for i, b in enumerate(beta))


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))  # type: ignore[return-value]


def _sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))  # type: ignore[return-value]


def generate_positive_roots() -> List[Root]:
    """All positive roots by root-string closure over the simple roots.

    For a root beta and simple alpha_j, the string length upward is
    q = p - <beta, alpha_j^vee> where p is the largest k with beta - k alpha_j
    a root; beta + alpha_j is a root iff q > 0.
    """
    simple = [tuple(1 if i == j else 0 for i in range(4)) for j in range(4)]
    roots = set(simple)
    level = list(simple)
    # breadth-first by height: every root of height h+1 is beta + alpha_j for
    # some root beta of height h, and the down-string of beta involves only
    # lower heights, all already known
    while level:
        nxt = []
        for beta in level:
            for j, alpha in enumerate(simple):
                p = 0
                down = beta
                while True:
                    down = _sub(down, alpha)
                    if down in roots:
                        p += 1
                    else:
                        break
                q = p - cartan_pairing(beta, j)
                if q > 0:
                    up = _add(beta, alpha)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        level = nxt
    return sorted(roots, key=lambda r: (height(r), r))


def height(root: Root) -> int:
    return sum(root)


def alpha4_grading(roots: List[Root]) -> Tuple[int, ...]:
    """Count of positive roots by their alpha_4 coefficient, ascending."""
    counts: Dict[int, int] = {}
    for r in roots:
        counts[r[3]] = counts.get(r[3], 0) + 1
    return tuple(counts[c] for c in sorted(counts))


def is_root(beta: Root, roots: Optional[List[Root]] = None) -> bool:
    rs = set(roots if roots is not None else generate_positive_roots())
    return beta in rs


def repaired_assignment() -> Tuple[Dict[int, Root], List[int]]:
    """The printed assignment with duplicates repaired to a bijection.

    A repair is possible only when each duplicated value and each missing root
    pair off uniquely via the additivity forced by the defining brackets; here
    the single repair is zeta_17.
    """
    from .prolong import DEFINING_BRACKETS

    roots = generate_positive_roots()
    values = list(PRINTED_ASSIGNMENT.values())
    missing = [r for r in roots if r not in values]
    duplicated = sorted({r for r in values if values.count(r) > 1})
    assignment = dict(PRINTED_ASSIGNMENT)
    repaired: List[int] = []
    if not missing and not duplicated:
        return assignment, repaired
    if len(missing) != len(duplicated):
        raise ValueError("printed assignment is not repairable to a bijection")
    for dup in duplicated:
        holders = [k for k, r in assignment.items() if r == dup]
        # keep the holder whose defining bracket is additive, repair the rest
        keep = [
            k
            for k in holders
            if k <= 4
            or _add(assignment[DEFINING_BRACKETS[k][0]], assignment[DEFINING_BRACKETS[k][1]]) == dup
        ]
        if len(keep) != 1:
            raise ValueError(f"ambiguous repair for duplicated root {dup}")
        for k in holders:
            if k == keep[0]:
                continue
            i, j = DEFINING_BRACKETS[k]
            forced = _add(assignment[i], assignment[j])
            if forced not in missing:
                raise ValueError(f"repair of zeta{k} not forced onto a missing root")
            assignment[k] = forced
            missing.remove(forced)
            repaired.append(k)
    return assignment, sorted(repaired)


def verify_root_system() -> List[Item]:
    items = []
    # symmetrizability of the Cartan matrix with d = (1, 1, 2, 2)
    d = (1, 1, 2, 2)
    sym = all(
        d[i] * CARTAN_MATRIX[i][j] == d[j] * CARTAN_MATRIX[j][i]
        for i in range(4)
        for j in range(4)
    )
    shape = all(
        (CARTAN_MATRIX[i][j] == 2) == (i == j)
        and (i == j or CARTAN_MATRIX[i][j] <= 0)
        for i in range(4)
        for j in range(4)
    )
    items.append(
        check(
            "roots:cartan-matrix",
            "Cartan matrix is a symmetrizable generalized Cartan matrix",
            sym and shape,
        )
    )
    roots = generate_positive_roots()
    items.append(
        check("roots:count", "24 positive roots", len(roots) == 24, computed=str(len(roots)), expected="24")
    )
    items.append(
        check(
            "roots:highest",
            "highest root is 2a1 + 3a2 + 4a3 + 2a4, height 11",
            roots[-1] == HIGHEST_ROOT and height(roots[-1]) == 11,
            computed=str(roots[-1]),
            expected=str(HIGHEST_ROOT),
        )
    )
    per_height: Dict[int, int] = {}
    for r in roots:
        per_height[height(r)] = per_height.get(height(r), 0) + 1
    profile = tuple(per_height[h] for h in sorted(per_height))
    items.append(
        check(
            "roots:height-profile",
            "roots per height are (4,3,3,3,3,2,2,1,1,1,1)",
            profile == (4, 3, 3, 3, 3, 2, 2, 1, 1, 1, 1),
            computed=str(profile),
            expected="(4, 3, 3, 3, 3, 2, 2, 1, 1, 1, 1)",
        )
    )
    grading = alpha4_grading(roots)
    items.append(
        check(
            "roots:alpha4-grading",
            "alpha_4-coefficient grading is (9, 8, 7)",
            grading == (9, 8, 7),
            computed=str(grading),
            expected="(9, 8, 7)",
        )
    )
    return items


def verify_root_correspondence(table=None) -> List[Item]:
    """Bijectivity (after repair), additivity on the computed bracket table,
    non-roots on the computed zeros, and heights equal to frame weights."""
    from .prolong import _expected_weight, build_zeta_generators, compute_bracket_table

    items: List[Item] = []
    roots = generate_positive_roots()
    root_set = set(roots)
    assignment, repaired = repaired_assignment()
    if repaired:
        items.append(
            Item(
                "roots:printed-duplicate",
                "published assignment repeats a root; repaired to a bijection",
                DISCREPANCY,
                computed=", ".join(f"zeta{k} -> {assignment[k]}" for k in repaired),
                expected="each zeta_k gets a distinct root",
                note="repair forced by additivity of the defining brackets",
            )
        )
    items.append(
        check(
            "roots:bijection",
            "repaired assignment is a bijection onto the positive roots",
            sorted(assignment.values()) == sorted(roots) and len(assignment) == 24,
        )
    )
    items.append(
        check(
            "roots:heights-are-weights",
            "height of root(k) equals the grading weight of zeta_k",
            all(height(assignment[k]) == _expected_weight(k) for k in range(1, 25)),
        )
    )
    if table is None:
        zs = build_zeta_generators()
        table = compute_bracket_table(zs)
    bad_add: List[str] = []
    bad_zero: List[str] = []
    for (i, j), combo in sorted(table.entries.items()):
        if i == j or combo is None:
            continue
        s = _add(assignment[i], assignment[j])
        if combo:
            for k in combo:
                if s != assignment[k]:
                    bad_add.append(f"[z{i},z{j}]->z{k}")
        else:
            if s in root_set:
                bad_zero.append(f"[z{i},z{j}]")
    items.append(
        check(
            "roots:additivity",
            "every nonzero bracket lands on the sum of the roots",
            not bad_add,
            computed=", ".join(bad_add) or "all additive",
        )
    )
    items.append(
        check(
            "roots:non-roots-vanish",
            "every vanishing bracket has a non-root sum",
            not bad_zero,
            computed=", ".join(bad_zero) or "all consistent",
        )
    )
    return items


def verify_suite(table=None) -> List[Item]:
    return verify_root_system() + verify_root_correspondence(table)
