"""
File formats

Text and JSON readers/writers for field specs, polynomials, matrices, subspaces,
designs, set systems, group files and codes. Reports are JSON with sorted keys and
two-space indent so identical inputs give byte-identical output.
"""

import json
from pathlib import Path

import numpy as np

from qdesign.codes import LinearCode
from qdesign.design import DesignInstance, SetSystem
from qdesign.errors import FormatError
from qdesign.field import FieldCtx, field_create, field_from_order
from qdesign.groups import GLElem, GroupSpec
from qdesign.models import DesignMode
from qdesign.poly import Poly
from qdesign.subspace import MatQ, Subspace
from qdesign.utils import to_jsonable


def parse_field_spec(text: str) -> FieldCtx:
    """Field from "p^e" or from a prime power such as "8"."""
    text = str(text).strip()
    try:
        if "^" in text:
            p, e = text.split("^", 1)
            return field_create(int(p), int(e))
        return field_from_order(int(text))
    except ValueError as e:
        if type(e) is not ValueError:
            raise
        raise FormatError(f"Bad field spec {text!r}") from e


def parse_codes(text: str) -> list[int]:
    try:
        return [int(tok) for tok in str(text).split()]
    except ValueError as e:
        raise FormatError(f"Expected integer codes, got {text!r}") from e


def parse_poly(ctx: FieldCtx, text: str) -> Poly:
    """Lowest-first space separated coefficient codes."""
    return Poly(ctx, parse_codes(text))


def dump_poly(f: Poly) -> str:
    return f.to_text()


def parse_matrix(text: str) -> MatQ:
    """Header "p^e rows cols" followed by rows of codes."""
    lines = [line for line in str(text).strip().splitlines() if line.strip()]
    if not lines:
        raise FormatError("Empty matrix text")
    header = lines[0].split()
    if len(header) != 3:
        raise FormatError(f"Matrix header must be 'p^e rows cols', got {lines[0]!r}")
    ctx = parse_field_spec(header[0])
    rows, cols = (int(v) for v in header[1:])
    body = [parse_codes(line) for line in lines[1:]]
    if len(body) != rows or any(len(row) != cols for row in body):
        raise FormatError(f"Matrix body does not match header {rows}x{cols}")
    return MatQ(ctx, np.array(body, dtype=np.int64).reshape(rows, cols))


def dump_matrix(M: MatQ) -> str:
    return M.to_text()


def parse_subspace(text: str) -> Subspace:
    """Matrix text that must already be a full-rank RREF basis."""
    return Subspace.from_rref(parse_matrix(text))


def load_design(data: dict) -> DesignInstance:
    try:
        ctx = parse_field_spec(data["field"])
        blocks = [parse_subspace(b) for b in data["blocks"]]
        return DesignInstance(
            ctx=ctx,
            n=int(data["n"]),
            t=int(data["t"]),
            k=int(data["k"]),
            blocks=tuple(blocks),
            lam=int(data["lambda"]),
            mode=DesignMode(data.get("mode", DesignMode.EXACT.value)),
        )
    except KeyError as e:
        raise FormatError(f"Design JSON missing key {e}") from e


def dump_design(D: DesignInstance) -> dict:
    return {
        "field": D.ctx.spec,
        "n": D.n,
        "t": D.t,
        "k": D.k,
        "lambda": D.lam,
        "mode": D.mode.value,
        "blocks": [B.to_text() for B in D.blocks],
    }


def load_set_system(data: dict) -> SetSystem:
    try:
        return SetSystem(data["points"], data["groups"], data["blocks"])
    except KeyError as e:
        raise FormatError(f"Set system JSON missing key {e}") from e


def dump_set_system(S: SetSystem) -> dict:
    return {"points": list(S.points), "groups": [list(G) for G in S.groups], "blocks": [list(A) for A in S.blocks]}


def parse_group_file(text: str) -> GroupSpec:
    """Header "p^e n", then generator matrices as matrix text separated by blank lines."""
    chunks = [c for c in str(text).strip().split("\n\n") if c.strip()]
    if not chunks:
        raise FormatError("Empty group file")
    header, _, first = chunks[0].partition("\n")
    parts = header.split()
    if len(parts) != 2:
        raise FormatError(f"Group header must be 'p^e n', got {header!r}")
    ctx = parse_field_spec(parts[0])
    n = int(parts[1])
    bodies = ([first] if first.strip() else []) + chunks[1:]
    generators = [GLElem(parse_matrix(body)) for body in bodies]
    return GroupSpec.matrix(ctx, n, generators)


def dump_group_file(group: GroupSpec) -> str:
    parts = [f"{group.ctx.spec} {group.n}"]
    parts.extend(g.to_text() for g in group.generators)
    return "\n\n".join(parts)


def load_code(data: dict) -> LinearCode:
    try:
        ctx = parse_field_spec(data["field"])
        C = LinearCode.from_rows(ctx, parse_matrix(data["generator"]).data, int(data["n"]))
    except KeyError as e:
        raise FormatError(f"Code JSON missing key {e}") from e
    if C.k != int(data.get("k", C.k)):
        raise FormatError(f"Code JSON claims k={data.get('k')}, generator has rank {C.k}")
    return C


def dump_code(C: LinearCode) -> dict:
    return {"field": C.ctx.spec, "n": C.n, "k": C.k, "generator": C.generator.to_text()}


def dump_report(report) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2)


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: {e}") from e


def read_text(path) -> str:
    return Path(path).read_text()
