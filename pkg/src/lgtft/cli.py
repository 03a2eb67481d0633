"""Command line front end: ``lgtft <command> PROBLEM_FILE ...``.

Problem files are JSON documents whose polynomials are strings in the
polynomial grammar of :mod:`lgtft.polyring.parse`.  Reports go to stdout,
diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from . import koszul as koszul_mod
from .errors import (
    LGError,
    NonIsolatedCritical,
    NotAFactorization,
    ParseError,
    ResourceBudgetExceeded,
)
from .linalg import nullspace
from .matfact import MatrixFactorization, Morphism, from_blocks, hom_cohomology, koszul_factorization
from .polyring import (
    GaussianRational,
    MilnorAlgebra,
    Polynomial,
    is_quasi_homogeneous,
    milnor_algebra,
    order_from_name,
    parse_polynomial,
    parse_scalar,
    rational_critical_points,
)
from .polyring.groebner import DEFAULT_BUDGET
from .residues import Normalization, VolumeForm, boundary_bulk, boundary_trace, bulk_trace, residue_engine
from .superalg import SuperMatrix
from . import tftcheck

EXIT_OK, EXIT_AXIOM, EXIT_INVALID, EXIT_NONISOLATED, EXIT_BUDGET = 0, 1, 2, 3, 4


# ---------------------------------------------------------------- problem files


@dataclass
class ProblemFile:
    variables: List[str]
    potential: Polynomial
    vol: VolumeForm
    norm: Normalization
    objects: Dict[str, MatrixFactorization] = field(default_factory=dict)
    morphisms: Dict[str, Morphism] = field(default_factory=dict)

    def poly(self, text: str) -> Polynomial:
        return parse_polynomial(text, self.variables)

    def fmt(self, p: Polynomial) -> str:
        return p.to_string(self.variables)

    def object(self, name: str) -> MatrixFactorization:
        if name not in self.objects:
            raise ValidationError(f"unknown object {name!r}; known: {sorted(self.objects)}")
        return self.objects[name]


class ValidationError(LGError):
    pass


def _matrix(rows, pf: ProblemFile, what: str) -> List[List[Polynomial]]:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ValidationError(f"{what} must be a list of rows")
    return [[pf.poly(str(e)) for e in row] for row in rows]


def _named_items(raw, what: str):
    if raw is None:
        return []
    if isinstance(raw, dict):
        return [(k, v) for k, v in raw.items()]
    if isinstance(raw, list):
        out = []
        for k, item in enumerate(raw):
            if not isinstance(item, dict):
                raise ValidationError(f"{what}[{k}] must be an object")
            out.append((item.get("name", f"{what[:-1]}{k}"), item))
        return out
    raise ValidationError(f"{what} must be a list or an object")


def load_problem(data: dict) -> ProblemFile:
    if not isinstance(data, dict):
        raise ValidationError("problem file must be a JSON object")
    for key in ("variables", "potential"):
        if key not in data:
            raise ValidationError(f"problem file is missing {key!r}")
    names = data["variables"]
    if not isinstance(names, list) or not names or not all(isinstance(n, str) for n in names):
        raise ValidationError("variables must be a nonempty list of names")
    W = parse_polynomial(str(data["potential"]), names)
    phi = parse_polynomial(str(data.get("volume_phi", "1")), names)
    raw_norm = data.get("normalization") or {}
    norm = Normalization(
        parse_scalar(str(raw_norm.get("A", "1"))),
        parse_scalar(str(raw_norm["c_e"])) if raw_norm.get("c_e") is not None else None,
        parse_scalar(str(raw_norm["c_f"])) if raw_norm.get("c_f") is not None else None,
    )
    pf = ProblemFile(list(names), W, VolumeForm(phi), norm)
    for name, spec in _named_items(data.get("objects"), "objects"):
        if "koszul" in spec:
            u = [pf.poly(str(e)) for e in spec["koszul"]["u"]]
            v = [pf.poly(str(e)) for e in spec["koszul"]["v"]]
            obj = koszul_factorization(u, v, name)
            if obj.potential != W:
                raise NotAFactorization(f"object {name}: sum u_k v_k is {pf.fmt(obj.potential)}, not W")
        else:
            obj = from_blocks(W, _matrix(spec.get("u_blocks"), pf, f"{name}.u_blocks"),
                              _matrix(spec.get("v_blocks"), pf, f"{name}.v_blocks"), name, pf.variables)
        pf.objects[name] = obj
    for name, spec in _named_items(data.get("morphisms"), "morphisms"):
        a, b = pf.object(spec["source"]), pf.object(spec["target"])
        blocks = dict(spec.get("blocks", {}))
        mat = SuperMatrix.from_json({"source": a.rank.to_json(), "target": b.rank.to_json(), "blocks": blocks},
                                    pf.variables)
        pf.morphisms[name] = Morphism(a, b, mat)
    return pf


def read_problem(path: str) -> ProblemFile:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc.msg}", position=exc.pos) from exc
    return load_problem(data)


# ---------------------------------------------------------------- reports


def scalar_json(c: GaussianRational) -> dict:
    return c.to_json()


def local_milnor_numbers(milnor: MilnorAlgebra, points) -> List[int]:
    """Dimension of the joint generalized eigenspace of the coordinate operators at each point."""
    d, mu = milnor.ambient_vars, milnor.dimension
    basis = milnor.basis_polynomials()
    ops = []
    for k in range(d):
        z = Polynomial.variable(d, k)
        cols = [milnor.coordinates(z * b) for b in basis]
        ops.append([[cols[c][r] for c in range(mu)] for r in range(mu)])
    out = []
    for pt in points:
        rows = []
        for k, op in enumerate(ops):
            shifted = [[op[r][c] - (pt[k] if r == c else 0) for c in range(mu)] for r in range(mu)]
            power = shifted
            for _ in range(mu - 1):
                power = [[sum((power[r][m] * shifted[m][c] for m in range(mu)), GaussianRational(0))
                          for c in range(mu)] for r in range(mu)]
            rows.extend(power)
        out.append(len(nullspace(rows, mu)))
    return out


def cmd_milnor(pf: ProblemFile, args) -> dict:
    milnor = milnor_algebra(pf.potential, args.order, args.budget)
    qh = is_quasi_homogeneous(pf.potential, args.order, milnor)
    points = rational_critical_points(pf.potential, milnor)
    local = local_milnor_numbers(milnor, points)
    table = [{"point": [scalar_json(x) for x in pt], "local_mu": m} for pt, m in zip(points, local)]
    return {
        "command": "milnor",
        "potential": pf.fmt(pf.potential),
        "order": args.order.name(),
        "mu": milnor.dimension,
        "basis": [pf.fmt(b) for b in milnor.basis_polynomials()],
        "groebner_basis": [pf.fmt(g) for g in milnor.groebner.generators],
        "quasi_homogeneous": qh.is_quasi_homogeneous,
        "weights": [str(w) for w in qh.weights] if qh.weights is not None else None,
        "localization": table,
        "localization_sum": sum(local),
        "localization_complete": sum(local) == milnor.dimension,
    }


def cmd_hom(pf: ProblemFile, args) -> dict:
    milnor = milnor_algebra(pf.potential, args.order, args.budget)
    a, b = pf.object(args.a), pf.object(args.b)
    h = hom_cohomology(a, b, milnor, args.strategy)
    out = {"command": "hom", "potential": pf.fmt(pf.potential)}
    out.update(h.to_json(pf.variables))
    return out


def _endomorphism(pf: ProblemFile, a: MatrixFactorization, milnor: MilnorAlgebra, spec: str) -> Morphism:
    m = re.fullmatch(r"basis:(\d+)", spec)
    if m:
        h = hom_cohomology(a, a, milnor)
        k = int(m.group(1))
        if k >= len(h.basis):
            raise ValidationError(f"End({a.name}) has only {len(h.basis)} basis classes")
        return h.basis[k]
    if spec not in pf.morphisms:
        raise ValidationError(f"unknown morphism {spec!r}; use a morphism name or basis:<k>")
    s = pf.morphisms[spec]
    if s.source != a or s.target != a:
        raise ValidationError(f"morphism {spec} is not an endomorphism of {a.name}")
    return s


def cmd_trace(pf: ProblemFile, args) -> dict:
    milnor = milnor_algebra(pf.potential, args.order, args.budget)
    engine = residue_engine(pf.potential, args.order, milnor)
    a = pf.object(args.a)
    s = _endomorphism(pf, a, milnor, args.s)
    value = boundary_trace(a, s, engine, pf.vol, pf.norm)
    image = boundary_bulk(a, s, milnor, pf.vol, pf.norm)
    return {
        "command": "trace",
        "potential": pf.fmt(pf.potential),
        "object": a.name,
        "input": s.to_json(pf.variables),
        "value": scalar_json(value),
        "boundary_bulk": pf.fmt(image),
    }


def cmd_bulk_trace(pf: ProblemFile, args) -> dict:
    milnor = milnor_algebra(pf.potential, args.order, args.budget)
    engine = residue_engine(pf.potential, args.order, milnor)
    f = pf.poly(args.f)
    return {
        "command": "bulk-trace",
        "potential": pf.fmt(pf.potential),
        "input": pf.fmt(f),
        "normal_form": pf.fmt(milnor.reduce(f)),
        "value": scalar_json(bulk_trace(f, engine, pf.vol, pf.norm)),
    }


def cmd_verify(pf: ProblemFile, args) -> dict:
    milnor_algebra(pf.potential, args.order, args.budget)
    inst = tftcheck.build_instance(pf.potential, list(pf.objects.values()), pf.vol, pf.norm, args.order, pf.variables)
    report = tftcheck.full_report(inst, seed=args.seed, timings=args.timings)
    return dict({"command": "verify"}, **report)


def cmd_koszul(pf: ProblemFile, args) -> dict:
    milnor_algebra(pf.potential, args.order, args.budget)
    cx = koszul_mod.build(pf.potential, order=args.order)
    return dict({"command": "koszul", "potential": pf.fmt(pf.potential)}, **koszul_mod.degree_table(cx))


COMMANDS = {
    "milnor": cmd_milnor,
    "hom": cmd_hom,
    "trace": cmd_trace,
    "bulk-trace": cmd_bulk_trace,
    "verify": cmd_verify,
    "koszul": cmd_koszul,
}


# ---------------------------------------------------------------- text format

_SIMPLE_KEY = re.compile(r"[A-Za-z_][A-Za-z0-9_\-]*")


def _key(k: str) -> str:
    return "." + k if _SIMPLE_KEY.fullmatch(k) else "[" + json.dumps(k) + "]"


def _flatten(obj, path: str, out: List[str]):
    if isinstance(obj, dict) and obj:
        for k, v in obj.items():
            _flatten(v, path + _key(str(k)), out)
    elif isinstance(obj, list) and obj:
        for k, v in enumerate(obj):
            _flatten(v, f"{path}[{k}]", out)
    else:
        out.append(f"{path.lstrip('.')} = {json.dumps(obj, ensure_ascii=False)}")


def to_text(report: dict) -> str:
    lines: List[str] = []
    _flatten(report, "", lines)
    return "\n".join(lines) + "\n"


_SEGMENT = re.compile(r'\.?([A-Za-z_][A-Za-z0-9_\-]*)|\[(\d+)\]|\[("(?:[^"\\]|\\.)*")\]')


def _parse_path(path: str) -> List:
    segs, pos = [], 0
    while pos < len(path):
        m = _SEGMENT.match(path, pos)
        if not m:
            raise ParseError("malformed report path", path, pos)
        if m.group(1) is not None:
            segs.append(m.group(1))
        elif m.group(2) is not None:
            segs.append(int(m.group(2)))
        else:
            segs.append(json.loads(m.group(3)))
        pos = m.end()
    return segs


def from_text(text: str) -> dict:
    """Inverse of :func:`to_text`."""
    root: dict = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        path, _, value = line.partition(" = ")
        segs = _parse_path(path)
        node = root
        for seg, nxt in zip(segs, segs[1:]):
            if isinstance(seg, int):
                while len(node) <= seg:
                    node.append(None)
                if node[seg] is None:
                    node[seg] = [] if isinstance(nxt, int) else {}
                node = node[seg]
            else:
                node = node.setdefault(seg, [] if isinstance(nxt, int) else {})
        last = segs[-1]
        val = json.loads(value)
        if isinstance(last, int):
            while len(node) <= last:
                node.append(None)
            node[last] = val
        else:
            node[last] = val
    return root


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        return to_text(report)
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", choices=["lex", "grevlex"], default="grevlex")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="Buchberger step budget")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks")

    parser = argparse.ArgumentParser(prog="lgtft", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("milnor", parents=[common], help="Milnor algebra, quasi-homogeneity, localization")
    p.add_argument("problem")
    p = sub.add_parser("hom", parents=[common], help="Hom cohomology between two objects")
    p.add_argument("problem")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--strategy", choices=["auto", "graded", "quotient"], default="auto")
    p = sub.add_parser("trace", parents=[common], help="boundary trace and boundary-bulk image")
    p.add_argument("problem")
    p.add_argument("a")
    p.add_argument("s", help="morphism name from the problem file, or basis:<k> for a class of End(a)")
    p = sub.add_parser("bulk-trace", parents=[common], help="bulk trace of a polynomial")
    p.add_argument("problem")
    p.add_argument("f")
    p = sub.add_parser("verify", parents=[common], help="check the TFT axioms")
    p.add_argument("problem")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (not reproducible)")
    p = sub.add_parser("koszul", parents=[common], help="Koszul complex degree table")
    p.add_argument("problem")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    args.order = order_from_name(args.order)
    try:
        pf = read_problem(args.problem)
        report = COMMANDS[args.command](pf, args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NonIsolatedCritical as exc:
        print(f"error: non-isolated critical locus: {exc}", file=sys.stderr)
        return EXIT_NONISOLATED
    except ResourceBudgetExceeded as exc:
        print(f"error: resource budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (LGError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(render(report, args.format))
    if args.command == "verify" and not report["required_pass"]:
        return EXIT_AXIOM
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
