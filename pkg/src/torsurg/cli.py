"""Command-line front end.

Exit status: 0 on success, 1 when a domain precondition fails (unknown
torus, non-free-abelian pi_1 for a prototype, sweep mismatch), 2 for usage,
parse and I/O errors.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import click

from torsurg.catalog import (
    BUILTINS,
    Q_P,
    KSign,
    PrototypeError,
    builtin_table2,
    compare_with_expected,
    format_kodaira,
    kodaira,
    pipeline_prototype,
    prototype,
    reduced_form,
    reproduce_theorem41,
    sw_family_value,
    sweep_table,
)
from torsurg.fpgroup import (
    CATALOG_BY_NAME,
    FreeAbelian,
    NonAbelian,
    Undetermined,
    WordParseError,
    classify,
    full_catalog,
    parse_word,
)
from torsurg.groupring import (
    NotHermitianError,
    assemble_equivariant,
    extend_from_integers,
    is_extended,
)
from torsurg.linalg import (
    IntMatrix,
    NotSymmetricError,
    determinant,
    inertia,
    parity,
    signature,
)
from torsurg.surgery import (
    Coefficient,
    ManifoldModel,
    ModelFormatError,
    SurgeryError,
    SurgerySpec,
    apply_surgeries,
    betti_check,
    model_from_json,
    model_to_json,
    reverse_surgery,
    stabilize,
)


class InputError(click.ClickException):
    """Unreadable or malformed input; exit status 2."""

    exit_code = 2


class DomainError(click.ClickException):
    exit_code = 1


def _color_enabled() -> bool:
    return "NO_COLOR" not in os.environ and sys.stdout.isatty()


def _style(text: str, fg: str) -> str:
    return click.style(text, fg=fg) if _color_enabled() else text


def _emit_json(obj: Any) -> None:
    click.echo(json.dumps(obj, indent=2))


def _read_json(path: str) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None


def _load_model(path: str) -> ManifoldModel:
    if path in BUILTINS:
        return BUILTINS[path]()
    try:
        return model_from_json(_read_json(path))
    except ModelFormatError as e:
        raise InputError(f"{path}: {e}") from None


def _int_list(text: str, what: str) -> list[int]:
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise click.BadParameter(f"empty {what} list")
    try:
        return [int(s) for s in items]
    except ValueError:
        raise click.BadParameter(f"{what} must be comma-separated integers, got {text!r}") from None


def _catalog(name: str):
    if name == "all":
        return full_catalog()
    if name in CATALOG_BY_NAME:
        return [CATALOG_BY_NAME[name]()]
    raise click.BadParameter(f"unknown catalog {name!r}; use q8, all or one of {', '.join(CATALOG_BY_NAME)}")


def _verdict_text(v) -> str:
    if isinstance(v, FreeAbelian):
        return f"Z^{v.rank}" if v.rank != 1 else "Z"
    if isinstance(v, NonAbelian):
        shown = " ".join(f"{g}->{e}" for g, e in v.witness.as_names().items())
        return f"non-abelian ({v.witness.target.name}: {shown})"
    return f"undetermined (H_1 rank {v.rank}, torsion {list(v.torsion)})"


def _verdict_json(v) -> dict:
    out = {"verdict": v.kind, "rank": getattr(v, "rank", None)}
    if isinstance(v, NonAbelian):
        out["witness_group"] = v.witness.target.name
        out["witness"] = v.witness.as_names()
    if isinstance(v, Undetermined):
        out["torsion"] = list(v.torsion)
    return out


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Torus-surgery calculator for 4-manifold models."""


# -- info ------------------------------------------------------------------


@main.command()
@click.option("--model", "model_path", default="M", show_default=True, help="Builtin name or model JSON file.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def info(model_path: str, as_json: bool) -> None:
    """Invariants, tori and intersection form of a model."""
    m = _load_model(model_path)
    q = m.form()
    pos, neg, zero = inertia(q)
    pi1 = classify(m.pi1())
    if as_json:
        _emit_json(
            {
                "name": m.name,
                "invariants": dict(zip(("chi", "sigma", "b1", "b2"), m.invariants())),
                "betti_check": betti_check(m),
                "form": {"rank": q.rows, "signature": pos - neg, "nullity": zero, "parity": parity(q).value},
                "pi1": _verdict_json(pi1),
                "tori": [
                    {"name": t.name, "meridian": str(t.meridian), "surgery_curve": str(t.surgery_curve)}
                    for t in m.tori
                ],
                "cores": [{"torus": c.name, "p": c.coefficient.p, "q": c.coefficient.q} for c in m.cores],
            }
        )
        return
    chi, sigma, b1, b2 = m.invariants()
    click.echo(f"model       : {m.name}")
    click.echo(f"invariants  : chi={chi} sigma={sigma} b1={b1} b2={b2}")
    click.echo(f"betti check : {'ok' if betti_check(m) else 'FAILED'}")
    click.echo(f"form        : rank {q.rows}, signature {pos - neg}, {parity(q).value}")
    click.echo(f"pi_1        : {_verdict_text(pi1)}")
    if m.tori:
        width = max(len(t.name) for t in m.tori)
        click.echo("tori        :")
        for t in m.tori:
            click.echo(f"  {t.name.ljust(width)}  meridian {t.meridian}  curve {t.surgery_curve}")
    for c in m.cores:
        click.echo(f"  core {c.name} ({c.coefficient})")


# -- classify-subsets --------------------------------------------------------


@main.command("classify-subsets")
@click.option("--sizes", default="0,1,2,3,4,5", show_default=True, help="Comma-separated subset sizes.")
@click.option("--p", "p_text", default="-1", show_default=True, help="Comma-separated surgery coefficients.")
@click.option("--catalog", "catalog_name", default="q8", show_default=True, help="q8, all, or a group name.")
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON record array.")
@click.option("--output", "output", type=click.Path(dir_okay=False, writable=True), help="Also write the report here.")
def classify_subsets(sizes: str, p_text: str, catalog_name: str, as_json: bool, output: str | None) -> None:
    """Classify pi_1 after surgery on every sub-collection of the given sizes."""
    size_list = _int_list(sizes, "size")
    if any(not 0 <= k <= 6 for k in size_list):
        raise click.BadParameter("sizes must lie between 0 and 6", param_hint="--sizes")
    p_list = _int_list(p_text, "p")
    records = reproduce_theorem41(p_list, size_list, _catalog(catalog_name))
    text = json.dumps([r.as_json() for r in records], indent=2) if as_json else sweep_table(records)
    click.echo(text)
    if output:
        try:
            Path(output).write_text(text + "\n")
        except OSError as e:
            raise InputError(f"{output}: {e.strerror or e}") from None
    cmp = compare_with_expected(records)
    if cmp.undetermined:
        click.echo(_style(f"warning: {len(cmp.undetermined)} undetermined verdicts", "yellow"), err=True)
    if not cmp.ok:
        click.echo(_style(f"{len(cmp.mismatches)} verdicts differ from the expected lists:", "red"), err=True)
        for line in cmp.mismatches:
            click.echo(line, err=True)
        sys.exit(1)
    click.echo(_style("all free abelian verdicts match the expected lists", "green"), err=True)


# -- run ----------------------------------------------------------------------


@dataclass
class Script:
    base: ManifoldModel
    operations: list[tuple[str, Any]] = field(default_factory=list)
    reports: list[dict] = field(default_factory=list)


REPORTS = ("invariants", "pi1", "prototype", "eqform", "sw_family", "model")


def _coefficient(value: Any, where: str) -> Coefficient:
    try:
        if isinstance(value, int) and not isinstance(value, bool):
            return Coefficient(value)
        if isinstance(value, list) and len(value) == 2 and all(isinstance(v, int) for v in value):
            return Coefficient(*value)
        if isinstance(value, dict) and isinstance(value.get("p"), int):
            return Coefficient(value["p"], value.get("q", 1))
    except SurgeryError as e:
        raise InputError(f"{where}: {e}") from None
    raise InputError(f"{where}: coefficient must be p, [p, q] or {{\"p\": p, \"q\": q}}")


def parse_script(data: Any, base_dir: Path) -> Script:
    if not isinstance(data, dict):
        raise InputError("script must be a JSON object")
    base = data.get("base", "M")
    if isinstance(base, str):
        path = base if base in BUILTINS else str(base_dir / base)
        model = _load_model(path)
    elif isinstance(base, dict):
        try:
            model = model_from_json(base)
        except ModelFormatError as e:
            raise InputError(f"base: {e}") from None
    else:
        raise InputError("base must be a builtin name, a model path or an inline model")
    ops = []
    for i, op in enumerate(data.get("operations", [])):
        where = f"operations[{i}]"
        if op == "stabilize" or op == {"stabilize": True}:
            ops.append(("stabilize", None))
        elif isinstance(op, dict) and len(op) == 1 and "surgery" in op:
            spec = op["surgery"]
            if not isinstance(spec, dict):
                raise InputError(f"{where}: surgery must map torus names to coefficients")
            ops.append(("surgery", {k: _coefficient(v, f"{where}.{k}") for k, v in spec.items()}))
        elif isinstance(op, dict) and len(op) == 1 and "reverse" in op and isinstance(op["reverse"], str):
            ops.append(("reverse", op["reverse"]))
        else:
            raise InputError(f"{where}: expected surgery, stabilize or reverse, got {json.dumps(op)}")
    reports = []
    for i, r in enumerate(data.get("reports", [])):
        r = {"type": r} if isinstance(r, str) else r
        if not isinstance(r, dict) or r.get("type") not in REPORTS:
            raise InputError(f"reports[{i}]: report type must be one of {', '.join(REPORTS)}")
        reports.append(r)
    return Script(model, ops, reports)


def execute(script: Script) -> ManifoldModel:
    m = script.base
    for i, (kind, arg) in enumerate(script.operations):
        try:
            if kind == "surgery":
                m = apply_surgeries(m, SurgerySpec(tuple(arg.items())))
            elif kind == "stabilize":
                m = stabilize(m)
            else:
                core = next((c for c in m.cores if c.name == arg), None)
                if core is None:
                    raise SurgeryError(f"no surgered torus named {arg!r}")
                m = reverse_surgery(m, arg, core.torus)
        except SurgeryError as e:
            raise DomainError(f"operations[{i}]: {e}") from None
    return m


def _report(kind: str, spec: dict, m: ManifoldModel, catalog) -> tuple[str, Any]:
    if kind == "invariants":
        chi, sigma, b1, b2 = m.invariants()
        return (
            f"invariants: chi={chi} sigma={sigma} b1={b1} b2={b2}",
            {"chi": chi, "sigma": sigma, "b1": b1, "b2": b2, "betti_check": betti_check(m)},
        )
    if kind == "pi1":
        v = classify(m.pi1(), catalog)
        return f"pi_1: {_verdict_text(v)}", _verdict_json(v)
    if kind == "prototype":
        v = classify(m.pi1(), catalog)
        try:
            label = prototype(m, v)
        except PrototypeError as e:
            raise DomainError(f"prototype: {e}") from None
        return f"prototype: {label}", {
            "n_pos": label.n_pos,
            "n_neg": label.n_neg,
            "tail": label.tail.value,
            "text": str(label),
        }
    if kind == "eqform":
        v = classify(m.pi1(), catalog)
        if not isinstance(v, FreeAbelian) or v.rank not in (1, 2):
            raise DomainError("eqform: needs pi_1 = Z or Z^2")
        try:
            q = reduced_form(m, v.rank)
        except PrototypeError as e:
            raise DomainError(f"eqform: {e}") from None
        f = extend_from_integers(q, v.rank)
        return "equivariant form:\n" + f.render(), {
            "n": v.rank,
            "entries": [[str(e) for e in row] for row in f.entries],
            "extended": is_extended(f) is not None,
        }
    if kind == "sw_family":
        pmax = spec.get("pmax", 10)
        if not isinstance(pmax, int) or pmax < 1:
            raise InputError("sw_family: pmax must be a positive integer")
        values = [sw_family_value(p) for p in range(1, pmax + 1)]
        return "sw family: " + " ".join(map(str, values)), values
    data = model_to_json(m)
    return json.dumps(data, indent=2), data


@main.command()
@click.argument("script_path", type=click.Path(dir_okay=False))
@click.option("--catalog", "catalog_name", default="q8", show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Emit reports as JSON.")
@click.option("--emit-model", "emit", type=click.Path(dir_okay=False), help="Write the final model JSON ('-' for stdout).")
def run(script_path: str, catalog_name: str, as_json: bool, emit: str | None) -> None:
    """Execute a JSON surgery script and print its reports."""
    data = _read_json(script_path)
    script = parse_script(data, Path(script_path).resolve().parent)
    m = execute(script)
    catalog = _catalog(catalog_name)
    out = []
    for spec in script.reports:
        text, obj = _report(spec["type"], spec, m, catalog)
        out.append({"type": spec["type"], "value": obj})
        if not as_json:
            click.echo(text)
    if as_json:
        _emit_json(out)
    if emit:
        text = json.dumps(model_to_json(m), indent=2)
        if emit == "-":
            click.echo(text)
        else:
            try:
                Path(emit).write_text(text + "\n")
            except OSError as e:
                raise InputError(f"{emit}: {e.strerror or e}") from None


# -- prototype / sw-family / eqform --------------------------------------------


@main.command("prototype")
@click.option("--tori", required=True, help="Comma-separated torus names (4 or 5).")
@click.option("--p", "p", type=int, default=-1, show_default=True)
@click.option("--p-torus", default=None, help="Torus carrying p (default: last in table order).")
@click.option("--catalog", "catalog_name", default="q8", show_default=True)
@click.option("--json", "as_json", is_flag=True)
def prototype_cmd(tori: str, p: int, p_torus: str | None, catalog_name: str, as_json: bool) -> None:
    """Run the prototype pipeline on a collection of tori."""
    names = [s.strip() for s in tori.split(",") if s.strip()]
    try:
        report = pipeline_prototype(names, p, p_torus, _catalog(catalog_name))
    except (PrototypeError, SurgeryError) as e:
        raise DomainError(str(e)) from None
    if as_json:
        _emit_json(report.as_json())
    else:
        click.echo(report.render())


@main.command("sw-family")
@click.option("--pmax", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def sw_family(pmax: int, as_json: bool) -> None:
    """Seiberg-Witten values of the family members p = 1..pmax."""
    values = [(p, sw_family_value(p)) for p in range(1, pmax + 1)]
    kod = kodaira(6, -2, KSign.POSITIVE)
    if as_json:
        _emit_json({"values": [{"p": p, "sw": v} for p, v in values], "kodaira": format_kodaira(kod)})
        return
    for p, v in values:
        click.echo(f"p={p:<4} sw={v}")
    click.echo(f"distinct: {len({v for _, v in values}) == len(values)}")
    click.echo(f"kodaira (chi=6, sigma=-2, K.w>0): {format_kodaira(kod)}")


def _matrix_arg(rows: Any, where: str) -> IntMatrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{where}: matrix must be a list of rows")
    try:
        return IntMatrix.from_rows(rows)
    except (TypeError, ValueError) as e:
        raise InputError(f"{where}: {e}") from None


@main.command()
@click.option("--data", "data_path", type=click.Path(dir_okay=False), help="JSON translate data; default Q_p over Z[Z^2].")
@click.option("--json", "as_json", is_flag=True)
def eqform(data_path: str | None, as_json: bool) -> None:
    """Assemble an equivariant intersection form.

    The data file holds ``{"n": 1|2, "translates": [{"g": [..], "matrix": [[..]]}, ...]}``
    where ``matrix[i][j]`` is the intersection of class i with the g-translate
    of class j.
    """
    if data_path is None:
        f = extend_from_integers(Q_P, 2)
    else:
        data = _read_json(data_path)
        if not isinstance(data, dict) or not isinstance(data.get("translates"), list):
            raise InputError(f"{data_path}: expected an object with a 'translates' list")
        n = data.get("n", 1)
        table = {}
        for i, item in enumerate(data["translates"]):
            if not isinstance(item, dict) or not isinstance(item.get("g"), list):
                raise InputError(f"{data_path}: translates[{i}] needs 'g' and 'matrix'")
            g = tuple(item["g"])
            if g in table:
                raise InputError(f"{data_path}: translates[{i}] repeats g = {list(g)}")
            table[g] = _matrix_arg(item.get("matrix"), f"{data_path}: translates[{i}]")
        try:
            f = assemble_equivariant(table, n)
        except NotHermitianError as e:
            raise DomainError(f"not hermitian: {e}") from None
        except (ValueError, NotSymmetricError) as e:
            raise InputError(f"{data_path}: {e}") from None
    ext = is_extended(f)
    aug = f.augment()
    det = determinant(aug)
    if as_json:
        _emit_json(
            {
                "n": f.n,
                "entries": [[str(e) for e in row] for row in f.entries],
                "extended": ext is not None,
                "augmentation": aug.to_rows(),
                "augmentation_det": det,
                "augmentation_signature": signature(aug, allow_degenerate=True),
            }
        )
        return
    click.echo(f.render())
    click.echo(f"extended from the integers: {'yes' if ext is not None else 'not detected'}")
    click.echo(f"augmentation: det {det}, signature {signature(aug, allow_degenerate=True)}")


@main.command()
@click.argument("k", type=int)
def table2(k: int) -> None:
    """Raw-material row for collection index k (2..5)."""
    try:
        row = builtin_table2(k)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="K") from None
    click.echo(f"k={row.k} chi={row.chi} sigma={row.sigma} surgeries={row.surgeries_text()}  {row.description}")


@main.command("word")
@click.argument("text")
def word_cmd(text: str) -> None:
    """Parse a word and print it in canonical form."""
    try:
        click.echo(str(parse_word(text)))
    except WordParseError as e:
        raise InputError(f"{e}") from None


if __name__ == "__main__":  # pragma: no cover
    main()
