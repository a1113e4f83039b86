"""Multi-step experiments: group table spot checks, the prescribed Singer search and factor reports."""

import logging
from math import comb
from typing import Any

from sympy import isprime

from qdesign.config import Config
from qdesign.crypto import DihedralElem
from qdesign.design import (
    IncidenceSystem,
    expand_solution,
    incidence_matrix,
    km_solve,
    point_incidence_matrix,
    point_km_solve,
    verify_point_design,
)
from qdesign.errors import BadParameters, BudgetExceeded, UnsupportedRow, VerificationMismatch
from qdesign.field import FieldCtx, field_from_order, primitive_element
from qdesign.groups import CyclicElem, GLElem, GroupSpec, dihedral_reflection, singer_cycle, torus_generators
from qdesign.models import DesignMode, TableRowKind
from qdesign.poly import Poly, factor_xn_minus_1, is_irreducible
from qdesign.subspace import gaussian_binomial

logger = logging.getLogger(__name__)

# Factorisations of x^n - 1 as printed in the literature, lowest-first codes per factor
REFERENCE_XN1_FACTORS = {
    (5, 8): ["4 1", "1 1", "3 1", "2 1", "1 0 1", "3 0 1", "2 0 1"],
}


# ----------------------------------------------------------------------
# Table spot checks
# ----------------------------------------------------------------------
def _cyclic_elements(g, n: int) -> list:
    elements = [g.one()]
    for _ in range(n - 1):
        elements.append(elements[-1] * g)
    if len(set(elements)) != n:
        raise VerificationMismatch(f"Generator does not have order {n}")
    return elements


def _row_group(row: TableRowKind, ctx: FieldCtx, l: int) -> tuple[str, list, list]:
    """(description, elements, subgroup of order k) for a table row."""
    q = ctx.q
    if row in (TableRowKind.CYCLIC_Q_MINUS_1, TableRowKind.CYCLIC_Q_PLUS_1):
        split, nonsplit = torus_generators(q)
        g, n = (split, q - 1) if row == TableRowKind.CYCLIC_Q_MINUS_1 else (nonsplit, q + 1)
        return f"cyclic of order {n} in GL(2,{q})", _cyclic_elements(g, n), None
    if row == TableRowKind.CYCLIC_Q:
        if isprime(q):
            g = GLElem.from_rows(ctx, [[1, 1], [0, 1]])
            return f"unipotent cyclic of order {q} in GL(2,{q})", _cyclic_elements(g, q), None
        return f"Z_{q}", _cyclic_elements(CyclicElem(q, 1), q), None
    if row == TableRowKind.ABELIAN_P:
        elements = [GLElem.from_rows(ctx, [[1, a], [0, 1]]) for a in range(q)]
        subgroup = elements[: ctx.p**l]
        return f"unipotent p-group of order {q} in GL(2,{q})", elements, subgroup
    if row in (TableRowKind.DIHEDRAL_Q_MINUS_1, TableRowKind.DIHEDRAL_Q_PLUS_1):
        if row == TableRowKind.DIHEDRAL_Q_MINUS_1:
            g = primitive_element(ctx).code
            tau = GLElem.diagonal(ctx, [g, ctx.inv(g)])
            N = q - 1
        else:
            tau = torus_generators(q)[1]
            N = q + 1
        sigma = dihedral_reflection(tau)
        elements = [DihedralElem(N, r, s).to_matrix(tau, sigma) for s in (0, 1) for r in range(N)]
        if len(set(elements)) != 2 * N:
            raise VerificationMismatch(f"Dihedral embedding of order {2 * N} is not faithful")
        return f"dihedral of order {2 * N} in GL(2,{q})", elements, elements[:N]
    raise UnsupportedRow(f"Row {row} has no group construction; Borel subgroups are outside the supported rows")


def _row_shape(row: TableRowKind, q: int, ctx: FieldCtx, l: int) -> tuple[int, int, int, dict[str, bool]]:
    """(t, n, k, row-specific conditions)."""
    p, e = ctx.p, ctx.e
    if row == TableRowKind.CYCLIC_Q_PLUS_1:
        return 3, q + 1, (q + 1) // 3, {"q odd prime": p > 2 and e == 1, "3 divides q+1": (q + 1) % 3 == 0}
    if row == TableRowKind.CYCLIC_Q_MINUS_1:
        return 3, q - 1, (q - 1) // 3, {"q odd prime": p > 2 and e == 1, "3 divides q-1": (q - 1) % 3 == 0}
    if row == TableRowKind.CYCLIC_Q:
        return 3, q, q // 3, {"q odd": q % 2 == 1, "3 divides q": q % 3 == 0}
    if row == TableRowKind.ABELIAN_P:
        return p, q, p**l, {"l < e": 0 <= l < e}
    if row == TableRowKind.DIHEDRAL_Q_MINUS_1:
        return 3, 2 * (q - 1), q - 1, {"q odd": q % 2 == 1}
    if row == TableRowKind.DIHEDRAL_Q_PLUS_1:
        return 2, 2 * (q + 1), q + 1, {"q even": q % 2 == 0}
    raise UnsupportedRow(f"Row {row} has no group construction; Borel subgroups are outside the supported rows")


def _right_cosets(elements: list, subgroup: list) -> list[tuple[int, ...]]:
    index = {g: i for i, g in enumerate(elements)}
    seen = set()
    cosets = []
    for g in elements:
        if index[g] in seen:
            continue
        coset = tuple(sorted(index[h * g] for h in subgroup))
        seen.update(coset)
        cosets.append(coset)
    return cosets


def _right_translations(elements: list) -> list[tuple[int, ...]]:
    """Right multiplication by each group element as a permutation of element indices."""
    index = {g: i for i, g in enumerate(elements)}
    return [tuple(index[h * g] for h in elements) for g in elements]


def _invariant_design_search(
    n: int,
    t: int,
    k: int,
    elements: list,
    budget: int | None,
    node_budget: int | None,
) -> dict[str, Any]:
    """Smallest non-complete lambda with a group-invariant t-(n,k,lambda) design, via Kramer-Mesner."""
    complete_lam = comb(n - t, k - t)
    try:
        system = point_incidence_matrix(n, t, k, _right_translations(elements), budget)
    except BudgetExceeded as exc:
        return {"verdict": "undecided", "reason": str(exc), "lambda_candidates": None, "lambda": None}

    reachable = _orbit_size_sums([len(orbit) for orbit in system.col_orbits])
    candidates = []
    for lam in range(1, complete_lam):
        blocks_needed, remainder = divmod(lam * comb(n, t), comb(k, t))
        if not remainder and blocks_needed in reachable:
            candidates.append(lam)
    report = {
        "verdict": "none",
        "reason": "only the complete design" if not candidates else None,
        "lambda_candidates": candidates,
        "lambda": None,
        "row_orbits": len(system.row_orbits),
        "column_orbits": [len(orbit) for orbit in system.col_orbits],
    }
    for lam in candidates:
        try:
            solutions = point_km_solve(system, lam, 1, node_budget)
        except BudgetExceeded as exc:
            return {**report, "verdict": "undecided", "reason": f"lambda={lam}: {exc}"}
        if solutions:
            blocks = system.expand(solutions[0])
            measured = verify_point_design(n, t, blocks, lam, budget)
            return {
                **report,
                "verdict": "found",
                "lambda": lam,
                "design_blocks": len(blocks),
                "lambda_min": measured.lam_min,
                "lambda_max": measured.lam_max,
                "ok": measured.ok,
            }
    if candidates:
        report["reason"] = "no invariant design for any candidate lambda"
    return report


def table_check(
    row: TableRowKind | str,
    q: int,
    l: int | None = None,
    budget: int | None = None,
    node_budget: int | None = None,
) -> dict[str, Any]:
    """Build the group named by a table row and test it as the automorphism group of a design.

    Points are the group elements, acted on by right multiplication. The right cosets
    of the subgroup of order k form the base orbit, whose t-subset coverage is measured.
    A Kramer-Mesner search over the orbits of t- and k-subsets then looks for the
    smallest lambda below the complete design admitting a group-invariant
    t-(n,k,lambda) design. The row holds only when the shape checks pass and such a
    design is found with uniform lambda.

    Args:
        row: Table row kind
        q: Field size, a prime power at most Config.TABLE_MAX_Q
        l: Exponent of the block size p^l for the abelian p-group row (default e - 1)
        budget: Cap on the subsets enumerated
        node_budget: Cap on the search nodes per candidate lambda

    Returns:
        Dict with the shape checks, the base orbit coverage and the search outcome
    """
    row = TableRowKind(row)
    if row == TableRowKind.BOREL:
        raise UnsupportedRow("Borel rows need a group construction beyond the supported rows")
    if q > Config.TABLE_MAX_Q:
        raise BadParameters(f"Table checks need q <= {Config.TABLE_MAX_Q}, got {q}")
    ctx = field_from_order(q)
    l = ctx.e - 1 if l is None else l
    if l < 0:
        raise BadParameters(f"Block exponent l must be >= 0, got {l}")
    t, n, k, conditions = _row_shape(row, q, ctx, l)
    checks = {"t <= k <= n": 0 <= t <= k <= n, "k divides n": k >= 1 and n % k == 0, **conditions}

    description, elements, subgroup = _row_group(row, ctx, l)
    if len(elements) != n:
        raise VerificationMismatch(f"{description} has {len(elements)} elements, expected {n}")

    base = None
    cosets = []
    search = {"verdict": "not run", "reason": "shape checks failed", "lambda_candidates": None, "lambda": None}
    if checks["t <= k <= n"] and checks["k divides n"]:
        if subgroup is None:
            subgroup = elements[:: n // k]
        cosets = _right_cosets(elements, subgroup)
        implied, remainder = divmod(len(cosets) * comb(k, t), comb(n, t))
        base = verify_point_design(n, t, cosets, implied if not remainder else 0, budget)
        search = _invariant_design_search(n, t, k, elements, budget, node_budget)

    found = search["verdict"] == "found"
    ok = all(checks.values()) and found and search["ok"] and search["lambda_min"] == search["lambda_max"]
    logger.info(f"Table row {row} q={q}: {description}, base orbit {len(cosets)} blocks, search {search['verdict']}")
    return {
        "row": str(row),
        "q": q,
        "group": description,
        "t": t,
        "n": n,
        "k": k,
        "l": l if row == TableRowKind.ABELIAN_P else None,
        "checks": checks,
        "blocks": len(cosets),
        "lambda_min": base.lam_min if base else None,
        "lambda_max": base.lam_max if base else None,
        "uniform": base is not None and base.lam_min == base.lam_max,
        "search": search,
        "lambda": search["lambda"],
        "ok": ok,
    }


# ----------------------------------------------------------------------
# Prescribed automorphism group search
# ----------------------------------------------------------------------
def _orbit_size_sums(sizes: list[int]) -> set[int]:
    """Every total reachable as a sum of a sub-multiset of orbit sizes."""
    sums = {0}
    for size in sizes:
        sums |= {s + size for s in sums}
    return sums


def prescribed_group_search(
    q: int = 2,
    n: int = 6,
    t: int = 2,
    k: int = 3,
    lam: int = 3,
    max_solutions: int | None = None,
    node_budget: int | None = None,
    budget: int | None = None,
) -> dict[str, Any]:
    """Kramer-Mesner search for a t-(n,k,lam;q) design invariant under a Singer cycle of GL(n,q).

    The default instance asks whether a 2-(6,3,3;2) design exists with a Singer
    cycle as automorphism. The report records the verdict either way.
    """
    ctx = field_from_order(q)
    group = GroupSpec.matrix(ctx, n, [singer_cycle(ctx, n)])
    system: IncidenceSystem = incidence_matrix(ctx, n, t, k, group, budget)
    blocks_needed, remainder = divmod(lam * gaussian_binomial(n, t, q), gaussian_binomial(k, t, q))
    column_sizes = [len(orbit) for orbit in system.col_orbits]
    reachable = _orbit_size_sums(column_sizes)
    if remainder or blocks_needed not in reachable:
        reason = "block count not divisible" if remainder else "no union of orbits has the required block count"
        solutions = []
    else:
        reason = None
        solutions = km_solve(system, lam, DesignMode.EXACT, max_solutions, node_budget)
    verdict = "feasible" if solutions else "infeasible"
    logger.info(f"Prescribed Singer search {t}-({n},{k},{lam};{q}): {verdict}")
    return {
        "q": q,
        "n": n,
        "t": t,
        "k": k,
        "lambda": lam,
        "group": f"Singer cycle of GL({n},{q})",
        "group_order": q**n - 1,
        "row_orbits": [len(orbit) for orbit in system.row_orbits],
        "column_orbits": column_sizes,
        "blocks_needed": blocks_needed if remainder == 0 else None,
        "solutions": [list(x) for x in solutions],
        "solution_blocks": [len(expand_solution(system, x)) for x in solutions],
        "verdict": verdict,
        "reason": reason,
        "ok": bool(solutions),
    }


# ----------------------------------------------------------------------
# Factorisation report
# ----------------------------------------------------------------------
def factor_report(ctx: FieldCtx, n: int) -> dict[str, Any]:
    """Factors of x^n - 1, checked against a reference listing when one is on file."""
    factors = factor_xn_minus_1(ctx, n)
    report = {
        "field": ctx.spec,
        "n": n,
        "factors": [f.to_text() for f in factors],
        "pretty": [str(f) for f in factors],
        "degrees": [f.degree for f in factors],
        "ok": True,
    }
    listed = REFERENCE_XN1_FACTORS.get((ctx.q, n))
    if listed is not None:
        polys = [Poly(ctx, [int(c) for c in text.split()]) for text in listed]
        product = Poly.one(ctx)
        for f in polys:
            product = product * f
        report["reference"] = {
            "factors": [str(f) for f in polys],
            "degree_sum": sum(f.degree for f in polys),
            "product_matches": product == Poly.xn_minus_1(ctx, n),
            "reducible": [str(f) for f in polys if not is_irreducible(f)],
        }
    return report

