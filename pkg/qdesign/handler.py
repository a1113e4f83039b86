"""Command dispatcher shared by the CLI and programmatic callers."""

import json
import logging
import traceback
from typing import Any

from qdesign.codes import (
    code_action,
    code_pair_distance,
    count_cyclic_codes,
    coset_leader,
    cyclic_code,
    default_subfield,
    dual_code,
    goppa_code,
    min_distance,
    quasi_cyclic_index,
    reversal_permutation,
    rs_code,
    weight_distribution,
)
from qdesign.config import Config
from qdesign.crypto import DihedralElem, dh_exchange, dlp_bruteforce, eavesdrop
from qdesign.design import (
    arc_check,
    design_to_cw_code,
    design_to_graph,
    expand_solution,
    incidence_matrix,
    km_solve,
    kr_arc_parameters,
    large_set_check,
    nrc_points,
    pg2_line_design,
    rs_family_design,
    verify_design,
    verify_gdd,
)
from qdesign.errors import BadParameters
from qdesign.formats import (
    dump_code,
    load_code,
    load_design,
    load_set_system,
    parse_codes,
    parse_field_spec,
    parse_group_file,
    parse_poly,
    read_json,
    read_text,
)
from qdesign.groups import (
    CyclicElem,
    GroupSpec,
    cayley_graph,
    count_splitting,
    element_order,
    group_closure,
    orbit_subspaces,
    singer_cycle,
)
from qdesign.models import DesignMode, TableRowKind
from qdesign.poly import (
    continued_fraction_value,
    count_invariant_irreducible,
    count_irreducible,
    count_separable,
    count_separable_sum,
    cyclotomic_poly,
    factor_xn_minus_1,
    poly_continued_fraction,
    poly_partial_fractions,
    recombine_partial_fractions,
)
from qdesign.processor import factor_report, prescribed_group_search, table_check
from qdesign.subspace import enumerate_subspaces, gaussian_binomial

logger = logging.getLogger(__name__)

INSECURE_NOTE = "Teaching simulation only: the dihedral discrete log is easy, this exchange is not secure."


# ----------------------------------------------------------------------
# Parameter helpers
# ----------------------------------------------------------------------
def _require(params: dict, *names: str) -> list:
    missing = [name for name in names if params.get(name) is None]
    if missing:
        raise BadParameters(f"Missing required parameter(s): {', '.join(missing)}")
    return [params[name] for name in names]


def _int(params: dict, name: str, default: int | None = None) -> int | None:
    value = params.get(name, default)
    return None if value is None else int(value)


def _codes(value) -> list[int]:
    if isinstance(value, str):
        return parse_codes(value)
    return [int(v) for v in value]


def _field(params: dict, name: str = "q"):
    (value,) = _require(params, name)
    return parse_field_spec(str(value))


def _group(params: dict, ctx, n: int) -> GroupSpec | None:
    """"singer" (default), "none", or the path of a group file."""
    choice = params.get("group") or "singer"
    if choice == "none":
        return None
    if choice == "singer":
        return GroupSpec.matrix(ctx, n, [singer_cycle(ctx, n)])
    group = parse_group_file(read_text(choice))
    if group.ctx != ctx or group.n != n:
        raise BadParameters(f"Group file acts on F_{group.ctx.spec}^{group.n}, expected F_{ctx.spec}^{n}")
    return group


def _code(params: dict, name: str = "file"):
    (path,) = _require(params, name)
    return load_code(read_json(path))


def _code_body(C) -> dict:
    return {"label": C.label(), "code": dump_code(C)}


# ----------------------------------------------------------------------
# Subspaces and groups
# ----------------------------------------------------------------------
def _gauss(params: dict) -> dict:
    n, k, q = (int(v) for v in _require(params, "n", "k", "q"))
    return {"n": n, "k": k, "q": q, "count": gaussian_binomial(n, k, q)}


def _subspaces(params: dict) -> dict:
    ctx = _field(params)
    n, k = (int(v) for v in _require(params, "n", "k"))
    subs = [S.to_text() for S in enumerate_subspaces(ctx, n, k, _int(params, "budget"))]
    return {"field": ctx.spec, "n": n, "k": k, "count": len(subs), "subspaces": subs}


def _orbits(params: dict) -> dict:
    ctx = _field(params)
    n, k = (int(v) for v in _require(params, "n", "k"))
    group = _group(params, ctx, n)
    if group is None:
        raise BadParameters("Orbits need a group")
    order = len(group_closure(group, _int(params, "budget")))
    orbits = orbit_subspaces(group, k, _int(params, "budget"))
    sizes = [len(o) for o in orbits]
    return {
        "field": ctx.spec,
        "n": n,
        "k": k,
        "group_order": order,
        "orbit_count": len(orbits),
        "orbit_sizes": sizes,
        "representatives": [o[0].to_text() for o in orbits],
        "ok": all(order % s == 0 for s in sizes) and sum(sizes) == gaussian_binomial(n, k, ctx.q),
    }


def _singer(params: dict) -> dict:
    ctx = _field(params)
    (n,) = (int(v) for v in _require(params, "n"))
    T = singer_cycle(ctx, n)
    return {"field": ctx.spec, "n": n, "matrix": T.to_text(), "order": element_order(T)}


def _splitting_count(params: dict) -> dict:
    ctx = _field(params)
    n, r = (int(v) for v in _require(params, "n", "r"))
    T = singer_cycle(ctx, n)
    return {"field": ctx.spec, "n": n, "r": r, "count": count_splitting(T, r, _int(params, "budget"))}


def _cayley(params: dict) -> dict:
    """Cayley graph of Z_N with the connection set given as residues."""
    (N,) = (int(v) for v in _require(params, "N"))
    group = GroupSpec.cyclic(N)
    elements = group_closure(group)
    S = [CyclicElem(N, s % N) for s in _codes(params.get("S") or [])]
    graph = cayley_graph(elements, S)
    return {
        "N": N,
        "S": [s.r for s in S],
        "graph": graph.summary(),
        "connected": graph.is_connected(),
        "dot": graph.to_dot(),
    }


# ----------------------------------------------------------------------
# Designs
# ----------------------------------------------------------------------
def _design_verify(params: dict) -> dict:
    (path,) = _require(params, "file")
    D = load_design(read_json(path))
    report = verify_design(D, threads=_int(params, "threads"), budget=_int(params, "budget")).to_dict()
    if params.get("graph") and report["ok"]:
        graph, regularity = design_to_graph(D)
        report["graph"] = {**graph.summary(), **regularity}
    if params.get("cw_code"):
        report["cw_code"] = design_to_cw_code(D)[0].to_dict()
    return report


def _km_search(params: dict) -> dict:
    ctx = _field(params)
    n, t, k, lam = (int(v) for v in _require(params, "n", "t", "k", "lam"))
    mode = DesignMode(params.get("mode") or DesignMode.EXACT.value)
    max_solutions = _int(params, "max_solutions")
    node_budget = _int(params, "node_budget")
    if (params.get("group") or "singer") == "singer" and mode == DesignMode.EXACT:
        return prescribed_group_search(ctx.q, n, t, k, lam, max_solutions, node_budget, _int(params, "budget"))
    group = _group(params, ctx, n)
    system = incidence_matrix(ctx, n, t, k, group, _int(params, "budget"))
    solutions = km_solve(system, lam, mode, max_solutions, node_budget)
    return {
        "field": ctx.spec,
        "n": n,
        "t": t,
        "k": k,
        "lambda": lam,
        "mode": mode.value,
        "shape": list(system.shape),
        "solutions": [list(x) for x in solutions],
        "solution_blocks": [len(expand_solution(system, x)) for x in solutions],
        "verdict": "feasible" if solutions else "infeasible",
        "ok": bool(solutions),
    }


def _gdd_verify(params: dict) -> dict:
    (path,) = _require(params, "file")
    return verify_gdd(load_set_system(read_json(path))).to_dict()


def _largeset_check(params: dict) -> dict:
    (paths,) = _require(params, "files")
    designs = [load_design(read_json(p)) for p in paths]
    return {"designs": len(designs), "ok": large_set_check(designs, _int(params, "budget"))}


def _pg2(params: dict) -> dict:
    (p,) = (int(v) for v in _require(params, "p"))
    D = pg2_line_design(p)
    report = D.report
    return {
        "p": p,
        "points": gaussian_binomial(3, 1, p),
        "lines": len(D.blocks),
        "block_size": p + 1,
        "lambda": report.lam,
        "ok": report.ok,
    }


def _nrc_arc(params: dict) -> dict:
    ctx = _field(params)
    (n,) = (int(v) for v in _require(params, "n"))
    s = _int(params, "s", n + 1)
    points = nrc_points(ctx, n)
    ok = arc_check(points, s, _int(params, "budget"))
    body = {"field": ctx.spec, "n": n, "s": s, "points": [P.basis.data[0].tolist() for P in points], "ok": ok}
    if n == 2:
        size, r = kr_arc_parameters(points)
        body["kr_arc"] = {"k": size, "r": r}
    return body


# ----------------------------------------------------------------------
# Codes
# ----------------------------------------------------------------------
def _code_rs(params: dict) -> dict:
    ctx = _field(params)
    (k,) = (int(v) for v in _require(params, "k"))
    points = _codes(params["points"]) if params.get("points") is not None else list(range(1, ctx.q))
    return _code_body(rs_code(ctx, points, k))


def _rs_family(params: dict) -> dict:
    (q,) = (int(v) for v in _require(params, "q"))
    return rs_family_design(q, _int(params, "r"), _int(params, "t", 1), _int(params, "budget"))


def _code_cyclic(params: dict) -> dict:
    ctx = _field(params)
    n, g = _require(params, "n", "g")
    return _code_body(cyclic_code(ctx, int(n), parse_poly(ctx, g)))


def _code_goppa(params: dict) -> dict:
    ctx = _field(params)
    locators, f = _require(params, "locators", "f")
    f = parse_poly(ctx, f)
    subfield = parse_field_spec(params["subfield"]) if params.get("subfield") else default_subfield(f)
    return _code_body(goppa_code(_codes(locators), f, subfield))


def _code_dual(params: dict) -> dict:
    return _code_body(dual_code(_code(params)))


def _code_mindist(params: dict) -> dict:
    C = _code(params)
    return {
        "label": C.label(_int(params, "budget")),
        "d": min_distance(C, _int(params, "budget"), _int(params, "threads")),
        "weights": weight_distribution(C, _int(params, "budget")),
    }


def _code_qc_index(params: dict) -> dict:
    C = _code(params)
    ell, co_index = quasi_cyclic_index(C)
    return {"label": C.label(), "index": ell, "co_index": co_index, "cyclic": ell == 1}


def _code_action(params: dict) -> dict:
    C = _code(params)
    perm = reversal_permutation(C.n) if params.get("reverse") else _codes(_require(params, "perm")[0])
    image = code_action(C, perm)
    return {
        "permutation": perm,
        "image": dump_code(image),
        "distance": code_pair_distance(C, image),
        "invariant": image == C,
    }


def _code_count_cyclic(params: dict) -> dict:
    ctx = _field(params)
    (n,) = (int(v) for v in _require(params, "n"))
    return count_cyclic_codes(ctx, n).to_dict()


def _code_coset(params: dict) -> dict:
    C = _code(params)
    (word,) = _require(params, "word")
    word = _codes(word)
    leader = coset_leader(C, word, _int(params, "budget"))
    return {"word": word, "leader": list(leader), "weight": sum(1 for c in leader if c), "syndrome": C.syndrome(word)}


# ----------------------------------------------------------------------
# Polynomials
# ----------------------------------------------------------------------
def _poly_factor_xn1(params: dict) -> dict:
    ctx = _field(params)
    (n,) = (int(v) for v in _require(params, "n"))
    return factor_report(ctx, n)


def _poly_cyclotomic(params: dict) -> dict:
    (n,) = (int(v) for v in _require(params, "n"))
    phi = cyclotomic_poly(n)
    body = {"n": n, "cyclotomic": str(phi), "coefficients": list(phi.coeffs)}
    if params.get("q") is not None:
        ctx = _field(params)
        reduced = phi.reduce(ctx)
        body["field"] = ctx.spec
        body["reduced"] = str(reduced)
        if n % ctx.p:
            body["divides_xn_minus_1"] = [str(f) for f in factor_xn_minus_1(ctx, n) if (reduced % f).is_zero()]
    return body


def _poly_count_irr(params: dict) -> dict:
    q, l = (int(v) for v in _require(params, "q", "l"))
    return {
        "q": q,
        "l": l,
        "irreducible": count_irreducible(q, l),
        "separable": count_separable(q, l),
        "separable_sum": count_separable_sum(q, l),
    }


def _fraction_inputs(params: dict):
    ctx = _field(params)
    f, g = _require(params, "f", "g")
    return ctx, parse_poly(ctx, f), parse_poly(ctx, g)


def _poly_partfrac(params: dict) -> dict:
    ctx, f, g = _fraction_inputs(params)
    terms = poly_partial_fractions(f, g)
    return {
        "field": ctx.spec,
        "f": str(f),
        "g": str(g),
        "terms": [term.to_text() for term in terms],
        "ok": recombine_partial_fractions(terms, g) == f,
    }


def _poly_contfrac(params: dict) -> dict:
    ctx, f, g = _fraction_inputs(params)
    quotients = poly_continued_fraction(f, g)
    num, den = continued_fraction_value(quotients) if quotients else (f, g)
    return {
        "field": ctx.spec,
        "f": str(f),
        "g": str(g),
        "quotients": [str(quot) for quot in quotients],
        "ok": (num * g) == (den * f),
    }


def _poly_count_invariant(params: dict) -> dict:
    q, k, m = (int(v) for v in _require(params, "q", "k", "m"))
    method = params.get("method") or "auto"
    count = count_invariant_irreducible(q, k, m, method, _int(params, "budget"))
    return {"q": q, "k": k, "m": m, "method": method, "count": count}


# ----------------------------------------------------------------------
# Crypto and tables
# ----------------------------------------------------------------------
def _dh(params: dict) -> dict:
    (q,) = (int(v) for v in _require(params, "q"))
    transcript = dh_exchange(q, _int(params, "seed", 0), _int(params, "d"), _int(params, "e"))
    body = transcript.to_dict()
    if params.get("eavesdrop"):
        body["eavesdropped"] = eavesdrop(transcript).r
    body["note"] = INSECURE_NOTE
    body["ok"] = body["agree"]
    return body


def _dlp(params: dict) -> dict:
    N, target = (int(v) for v in _require(params, "N", "target"))
    base = DihedralElem(N, _int(params, "base", 1) % N, 0)
    reflection = bool(params.get("reflection"))
    m = dlp_bruteforce(base, DihedralElem(N, target % N, int(reflection)), _int(params, "budget"))
    return {"N": N, "base": base.r, "target": target % N, "m": m, "note": INSECURE_NOTE}


def _table_check(params: dict) -> dict:
    row, q = _require(params, "row", "q")
    return table_check(TableRowKind(row), int(q), _int(params, "l"), _int(params, "budget"), _int(params, "node_budget"))


COMMANDS = {
    "gauss": _gauss,
    "subspaces": _subspaces,
    "orbits": _orbits,
    "singer": _singer,
    "splitting-count": _splitting_count,
    "design-verify": _design_verify,
    "km-search": _km_search,
    "gdd-verify": _gdd_verify,
    "largeset-check": _largeset_check,
    "pg2": _pg2,
    "nrc-arc": _nrc_arc,
    "code-rs": _code_rs,
    "rs-family": _rs_family,
    "code-cyclic": _code_cyclic,
    "code-goppa": _code_goppa,
    "code-dual": _code_dual,
    "code-mindist": _code_mindist,
    "code-qc-index": _code_qc_index,
    "code-action": _code_action,
    "code-count-cyclic": _code_count_cyclic,
    "code-coset": _code_coset,
    "poly-factor-xn1": _poly_factor_xn1,
    "poly-cyclotomic": _poly_cyclotomic,
    "poly-count-irr": _poly_count_irr,
    "poly-partfrac": _poly_partfrac,
    "poly-contfrac": _poly_contfrac,
    "poly-count-invariant": _poly_count_invariant,
    "dh": _dh,
    "dlp": _dlp,
    "cayley": _cayley,
    "table-check": _table_check,
}


def resolved_config(params: dict) -> dict:
    """Config defaults merged with the parameters of this run."""
    defaults = {name: getattr(Config, name) for name in dir(Config) if name.isupper()}
    return {"defaults": defaults, "params": {k: v for k, v in sorted(params.items()) if k != "command"}}


def handle(event: dict[str, Any]) -> dict[str, Any]:
    """Run one command.

    Event schema:
    {
        "command": "design-verify",     # Required, one of COMMANDS
        ...                             # Command parameters, named like the CLI flags
    }

    Returns:
    {
        "exit_code": 0 | 1 | 2,        # 0 verified, 1 verification failed or infeasible, 2 error
        "body": {...}                  # Report, always with the resolved "config"
    }
    """
    logger.info(f"Received event: {json.dumps(event, default=str, sort_keys=True)}")
    command = event.get("command")
    config = resolved_config(event)
    try:
        if command not in COMMANDS:
            raise BadParameters(f"Unknown command: {command}")
        body = COMMANDS[command](event)
        body = {**body, "command": command, "config": config}
        exit_code = 1 if body.get("ok") is False else 0
        logger.info(f"{command} finished with exit code {exit_code}")
        return {"exit_code": exit_code, "body": body}

    except ValueError as e:
        logger.error(f"Validation error: {str(e)}")
        body = {"error": str(e), "error_type": type(e).__name__, "command": command, "config": config}
        return {"exit_code": 2, "body": body}

    except Exception as e:
        logger.error(f"Processing error: {str(e)}\n{traceback.format_exc()}")
        return {"exit_code": 2, "body": {"error": f"Internal error: {str(e)}", "command": command, "config": config}}
