"""Command line front end.

Exit codes: 0 when the computation finished (a failed mathematical check is
still a result), 2 for unreadable or invalid input, 3 when a carrier exceeds
the size cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from . import cyclic, hochschild, io, kaehler, zoo
from .algebra import Algebra, Extension, ModuleExtension, regular_bimodule, restrict_bimodule, sub_bimodule
from .complexes import homology
from .errors import HochexError, NotAConflation, NotCommutative, ParseError, SizeLimit, TruncationWarning, UnknownModel, ValidationError
from .linalg import SparseMatrix

COMMANDS = ("hh", "hc", "hp", "hunital", "excision", "hkr", "sbi", "zoo")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SIZE = 3


@dataclass
class JobSpec:
    command: str
    algebra: str | None = None
    extension: str | None = None
    zoo: str | None = None
    module: str = "self"
    max_degree: int = hochschild.DEFAULT_MAX_DEGREE
    certify: bool = False
    size_cap: int | None = None
    workers: int = 1
    output: str = "text"
    out: str | None = None
    nonunital: bool = False
    coefficients: bool = False
    k_max: int = 3
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")
        if self.size_cap is not None and self.size_cap < 1:
            raise ValueError("size_cap must be >= 1")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hochex",
                                 description="Exact Hochschild and cyclic homology of finite-dimensional algebras.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--algebra", metavar="FILE", help="algebra JSON file")
    ap.add_argument("--extension", metavar="FILE", help="extension JSON file")
    ap.add_argument("--zoo", metavar="NAME", help="built-in model, e.g. matrix:2, jet:1,1, corner:1")
    ap.add_argument("--module", default="self", help="coefficient bimodule: 'self' or a JSON file")
    ap.add_argument("--max-degree", type=int, default=hochschild.DEFAULT_MAX_DEGREE)
    ap.add_argument("--certify", action="store_true", help="exact fraction-free ranks")
    ap.add_argument("--size-cap", type=int, default=None,
                    help="largest carrier (columns); default $HOCHEX_SIZE_CAP or 200000")
    ap.add_argument("--workers", type=int, default=1, help="processes for per-degree ranks")
    ap.add_argument("--output", choices=("text", "json"), default="text")
    ap.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    ap.add_argument("--nonunital", action="store_true",
                    help="hh: use the A+-normalized complex of A instead of HHchain(A, M)")
    ap.add_argument("--coefficients", action="store_true",
                    help="excision: use the coefficient sequence I -> E -> Q of E-bimodules")
    ap.add_argument("--k-max", type=int, default=3, help="hp: number of S-stages")
    return ap


# ---------------------------------------------------------------------------
# input resolution


def _model(spec: JobSpec):
    sources = [s for s in (spec.algebra, spec.extension, spec.zoo) if s]
    if len(sources) != 1:
        raise ValidationError("give exactly one of --algebra, --extension, --zoo")
    if spec.algebra:
        return io.load_algebra(spec.algebra)
    if spec.extension:
        return io.load_extension(spec.extension)
    return zoo.zoo_parse(spec.zoo)


def _algebra(spec: JobSpec) -> Algebra:
    m = _model(spec)
    if not isinstance(m, Algebra):
        raise ValidationError("this command needs an algebra, not an extension")
    return m


def _extension(spec: JobSpec) -> Extension:
    m = _model(spec)
    if not isinstance(m, Extension):
        raise ValidationError("this command needs an extension")
    return m


def _echo(model) -> dict:
    if isinstance(model, Extension):
        return {"extension": io.extension_to_json(model)}
    return {"algebra": io.algebra_to_json(model)}


def tautological_module_extension(ext: Extension) -> ModuleExtension:
    """I -> E -> Q viewed as E-bimodules."""
    E = ext.total
    reg = regular_bimodule(E)
    sub = sub_bimodule(reg, ext.incl.matrix, name=ext.ideal.name)
    quot = restrict_bimodule(regular_bimodule(ext.quotient), ext.proj)
    return ModuleExtension(sub, reg, quot, ext.incl.matrix, ext.proj.matrix, ext.section)


# ---------------------------------------------------------------------------
# commands; each returns (report dict, text lines)


def _cmd_hh(spec: JobSpec):
    a = _algebra(spec)
    n = spec.max_degree
    if spec.nonunital:
        c = hochschild.hh_complex_nonunital(a, n, spec.size_cap)
        mname = "A+"
    else:
        m = regular_bimodule(a) if spec.module == "self" else io.load_bimodule(spec.module, a)
        c = hochschild.hh_complex(a, m, n, spec.size_cap)
        mname = "self" if spec.module == "self" else spec.module
    rep = homology(c, 0, n - 1, spec.certify, workers=spec.workers, warn=False)
    betti = rep.betti_list()
    report = {"command": "hh", "input": _echo(a), "module": mname,
              "max_degree": n, "homology": rep.to_dict(), "betti": betti}
    lines = [f"HH_n({a.name or 'A'}, {mname}) for n = 0..{n - 1}: {tuple(betti)}"]
    return report, lines


def _cmd_hc(spec: JobSpec):
    a = _algebra(spec)
    n = spec.max_degree - 1
    rep = cyclic.cyclic_report(a, n, cap=spec.size_cap, certify=spec.certify, periodic=False)
    d = rep.to_dict()
    d.update({"command": "hc", "input": _echo(a)})
    lines = [f"HH_n for n = 0..{n}: {tuple(rep.hh)}", f"HC_n for n = 0..{n}: {tuple(rep.hc)}"]
    for k, m in rep.s_maps.items():
        lines.append(f"S: HC_{k} -> HC_{k - 2} rank {_rank(m)}")
    return d, lines


def _rank(m: SparseMatrix) -> int:
    from .linalg import rank
    return rank(m)


def _cmd_hp(spec: JobSpec):
    a = _algebra(spec)
    res = {p: cyclic.periodic_cyclic(a, p, spec.k_max, cap=spec.size_cap, certify=spec.certify)
           for p in ("even", "odd")}
    report = {"command": "hp", "input": _echo(a), "HP": {p: r.to_dict() for p, r in res.items()}}
    lines = []
    for p, r in res.items():
        val = r.value if r.stabilized else "unstabilized"
        lines.append(f"HP_{p} = {val}   (HC: {r.hc}, stable images: {r.stable_dims})")
    return report, lines


def _cmd_hunital(spec: JobSpec):
    model = _model(spec)
    a = model.ideal if isinstance(model, Extension) else model
    cert = hochschild.h_unitality_check(a, spec.max_degree, spec.size_cap, spec.certify)
    report = {"command": "hunital", "input": _echo(model), "certificate": cert.to_dict()}
    line = f"H-unitality of {a.name or 'A'}: mode = {cert.mode}"
    if cert.failure_degree is not None:
        line += f", first failure at degree {cert.failure_degree}"
    return report, [line]


def _cmd_excision(spec: JobSpec):
    ext = _extension(spec)
    mext = tautological_module_extension(ext) if spec.coefficients else None
    rep = hochschild.excision_suite(ext, spec.max_degree, mext, spec.size_cap, spec.certify)
    d = rep.to_dict()
    d.update({"command": "excision", "input": _echo(ext)})
    lines = [f"extension {ext.name}: degrees 0..{spec.max_degree - 1}"
             + (" (coefficient version)" if spec.coefficients else ""),
             f"H-unitality of ideal: {rep.h_unitality.mode}"
             + (f" (fails at degree {rep.h_unitality.failure_degree})"
                if rep.h_unitality.failure_degree is not None else "")]
    for key in ("I", "E", "Q"):
        lines.append(f"betti {key}: {tuple(rep.betti[key][n] for n in sorted(rep.betti[key]))}")
    lines.append(f"cofibre: {'yes' if rep.cofibre else 'NO'}")
    for j in rep.les.junctions:
        lines.append(f"  H_{j.degree}({j.group}): {'exact' if j.exact else 'NOT exact'}"
                     + (f"  [{j.detail}]" if j.detail else ""))
    lines.append(f"LES exact: {'yes' if rep.exact else 'NO'}")
    return d, lines


def _cmd_hkr(spec: JobSpec):
    a = _algebra(spec)
    if not a.is_commutative():
        raise NotCommutative(f"{a.name or 'algebra'} is not commutative")
    m = regular_bimodule(a)
    rows, lines = [], []
    for k in range(spec.max_degree):
        hochschild._check_size(f"A^{k + 2}", a.dim ** (k + 2), spec.size_cap)
        forms = kaehler.kaehler_forms(a, k)
        j = kaehler.hkr_j(a, k, forms)
        kk = kaehler.hkr_k(a, k, forms)
        kj = (kk @ j) == SparseMatrix.identity(forms.dim)
        bj = k == 0 or (hochschild.hochschild_boundary(a, m, k) @ j).is_zero()
        kb = (kk @ hochschild.hochschild_boundary(a, m, k + 1)).is_zero() if k >= 1 else \
            (kk @ hochschild.hochschild_boundary(a, m, 1)).is_zero()
        rows.append({"k": k, "dim": forms.dim, "basis": forms.labels(),
                     "k_after_j_is_identity": kj, "b_after_j_is_zero": bj, "k_after_b_is_zero": kb})
        lines.append(f"Omega^{k}: dim {forms.dim}; k.j = Id: {kj}; b.j = 0: {bj}; k.b = 0: {kb}")
    one = kaehler.kaehler_one_forms_diagonal(a)
    lines.append(f"Omega^1 via I/I^2: dim {one}")
    return {"command": "hkr", "input": _echo(a), "forms": rows, "omega1_diagonal": one}, lines


def _cmd_sbi(spec: JobSpec):
    a = _algebra(spec)
    rep = cyclic.sbi_check(a, spec.max_degree, cap=spec.size_cap, certify=spec.certify)
    d = rep.to_dict()
    d.update({"command": "sbi", "input": _echo(a)})
    lines = [f"HH: {tuple(rep.hh.values())}", f"HC: {tuple(rep.hc.values())}"]
    names = {"I": "HH", "E": "HC", "Q": "HC[-2]"}
    for j in rep.les.junctions:
        lines.append(f"  at {names[j.group]}_{j.degree}: {'exact' if j.exact else 'NOT exact'}")
    lines.append(f"SBI exact: {'yes' if rep.exact else 'NO'}")
    return d, lines


def _cmd_zoo(spec: JobSpec):
    if not (spec.zoo or spec.algebra or spec.extension):
        names = list(zoo.standard_zoo())
        lines = ["algebras: " + ", ".join(names),
                 "grammar: matrix:n | jet:v,k | trunc:N | zero[:n] | q | dual | product:<a>,<b>",
                 "extensions: corner:n | nilpotent-jet:N,m | sum:<a>,<b>; "
                 "ideal:/total:/quotient:<extension> select a part"]
        return {"command": "zoo", "standard": names}, lines
    model = _model(spec)
    if isinstance(model, Extension):
        lines = [f"extension {model.name}: dims I={model.ideal.dim}, E={model.total.dim}, "
                 f"Q={model.quotient.dim}"]
    else:
        lines = [f"algebra {model.name}: dim {model.dim}, basis {list(model.basis)}, "
                 f"unital {model.unit is not None}, commutative {model.is_commutative()}"]
    return {"command": "zoo", "input": _echo(model)}, lines


_HANDLERS = {"hh": _cmd_hh, "hc": _cmd_hc, "hp": _cmd_hp, "hunital": _cmd_hunital,
             "excision": _cmd_excision, "hkr": _cmd_hkr, "sbi": _cmd_sbi, "zoo": _cmd_zoo}


def run(spec: JobSpec, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            report, lines = _HANDLERS[spec.command](spec)
    except SizeLimit as exc:
        print(f"hochex: {exc}", file=stderr)
        return EXIT_SIZE
    except (ParseError, ValidationError, UnknownModel, NotCommutative, NotAConflation,
            HochexError, OSError, ValueError) as exc:
        print(f"hochex: {exc}", file=stderr)
        return EXIT_INPUT
    if spec.output == "json":
        text = json.dumps(report, indent=2, sort_keys=False) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if spec.out:
        Path(spec.out).write_text(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = JobSpec(args.command, args.algebra, args.extension, args.zoo, args.module,
                       args.max_degree, args.certify, args.size_cap, args.workers, args.output,
                       args.out, args.nonunital, args.coefficients, args.k_max)
    except ValueError as exc:
        print(f"hochex: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
