"""Command line entry point.

Exit codes: 0 success, 1 domain error (bad spec or parameters), 2 limit
exceeded (bounds are still emitted), 3 invariant violation.  Output is JSON
with sorted keys unless ``--plain`` or ``--csv`` is given; run metadata lives
under the "meta" key and carries no timestamps.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction

import click

from . import __version__, analytic, explorer, glgraph, lattice, measures, spectral, zoo
from .config import Limits
from .core import BitVector, PointFunction, TruthTable
from .errors import DomainError, InvariantViolation, LimitExceeded
from .kernels import BACKEND
from .specs import build, parse_spec

EXIT_OK, EXIT_DOMAIN, EXIT_LIMIT, EXIT_INVARIANT = 0, 1, 2, 3


class Output:
    """What a command produced, renderable in any of the three formats."""

    def __init__(self, payload: dict, plain: list[str] | None = None, rows: list[list] | None = None,
                 code: int = EXIT_OK, raw: str | None = None):
        self.payload = payload
        self.plain = plain
        self.rows = rows
        self.code = code
        self.raw = raw


def _frac(q) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def _frac_text(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _limits(overrides) -> Limits:
    kw = {}
    for item in overrides:
        key, _, value = item.partition("=")
        if not value:
            raise DomainError(f"--limit expects NAME=N, got {item!r}")
        try:
            kw[key.strip()] = int(value)
        except ValueError:
            raise DomainError(f"--limit value must be an integer, got {item!r}") from None
    try:
        return Limits.from_env().with_overrides(**kw)
    except ValueError as exc:
        raise DomainError(str(exc)) from None


def _meta(command: str, limits: Limits) -> dict:
    return {"version": __version__, "backend": BACKEND, "command": command, "limits": limits.as_dict()}


def _dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _emit(out: Output, fmt: str, command: str, limits: Limits) -> int:
    if out.raw is not None:
        click.echo(out.raw, nl=not out.raw.endswith("\n"))
    elif fmt == "plain" and out.plain is not None:
        for line in out.plain:
            click.echo(line)
    elif fmt == "csv" and out.rows is not None:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(out.rows)
        click.echo(buf.getvalue(), nl=False)
    else:
        click.echo(_dump({**out.payload, "meta": _meta(command, limits)}))
    return out.code


def _error(kind: str, exc: Exception, fmt: str, command: str, limits: Limits, code: int) -> int:
    err = {"kind": kind, "message": str(exc)}
    bounds = getattr(exc, "bounds", None)
    if bounds is not None:
        err["bounds"] = {"lo": int(bounds[0]), "hi": int(bounds[1])}
    record = getattr(exc, "record", None)
    if record is not None and hasattr(record, "to_json"):
        err["record"] = record.to_json()
    click.echo(str(exc), err=True)
    if fmt == "json":
        click.echo(_dump({"error": err, "meta": _meta(command, limits)}))
    return code


def _command(fn):
    """Shared options plus exception-to-exit-code mapping."""

    @click.option("--json", "fmt", flag_value="json", default=True, help="JSON output (default).")
    @click.option("--plain", "fmt", flag_value="plain", help="Bare values, one per line.")
    @click.option("--csv", "fmt", flag_value="csv", help="CSV rows where the command has a tabular form.")
    @click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True,
                  help="Worker processes for commands that can use them.")
    @click.option("--limit", "limit_overrides", multiple=True, metavar="NAME=N",
                  help="Override a per-measure arity limit (dense, bs, cert, dtree, dpar, rank, extension).")
    @click.pass_context
    def wrapper(ctx, fmt, threads, limit_overrides, **kw):
        command = ctx.command_path.split(" ", 1)[-1]
        limits = Limits()
        try:
            limits = _limits(limit_overrides)
            out = fn(limits=limits, threads=threads, **kw)
            code = _emit(out, fmt, command, limits)
        except InvariantViolation as exc:
            code = _error("invariant", exc, fmt, command, limits, EXIT_INVARIANT)
        except LimitExceeded as exc:
            code = _error("limit", exc, fmt, command, limits, EXIT_LIMIT)
        except (DomainError, ValueError) as exc:
            code = _error("domain", exc, fmt, command, limits, EXIT_DOMAIN)
        ctx.exit(code)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@click.group()
@click.version_option(__version__, prog_name="bfc")
def cli():
    """Exact complexity measures of Boolean functions."""


def _load(text: str, limits: Limits):
    node = parse_spec(text, limits)
    return str(node), build(node, limits)


def _bits(text: str, n: int) -> BitVector:
    """A bit string listing x_1 first, or an input word written as 0x<hex>."""
    if text.lower().startswith("0x"):
        try:
            return BitVector(n, int(text, 16))
        except ValueError:
            raise DomainError(f"malformed input word {text!r}") from None
    x = BitVector.from_string(text)
    if x.n != n:
        raise DomainError(f"input {text!r} has {x.n} bits, the function has {n} variables")
    return x


# -- measures ---------------------------------------------------------------

def _pointwise(f, x: BitVector, names, limits) -> dict:
    out = {}
    for name in names:
        if name == "s":
            out[name] = {"exact": measures.sensitivity_at(f, x)}
        elif name == "bs":
            try:
                out[name] = {"exact": measures.block_sensitivity_at(f, x, limits)}
            except LimitExceeded as exc:
                lo, hi = exc.bounds or (measures.sensitivity_at(f, x), f.n)
                out[name] = {"lo": int(lo), "hi": int(hi), "reason": str(exc)}
        elif name == "C":
            if isinstance(f, PointFunction):
                out[name] = {"lo": measures.sensitivity_at(f, x), "hi": f.n,
                             "reason": "certificates need a dense table"}
            else:
                try:
                    out[name] = {"exact": measures.certificate_at(f, x, limits)[0]}
                except LimitExceeded as exc:
                    lo, hi = exc.bounds
                    out[name] = {"lo": int(lo), "hi": int(hi), "reason": str(exc)}
        else:
            raise DomainError(f"pointwise values exist for s, bs and C, not {name}")
    return out


def _measure_rows(entries: dict) -> tuple[list[str], list[list]]:
    plain = []
    rows = [["measure", "exact", "lo", "hi"]]
    for name, e in entries.items():
        if "exact" in e:
            plain.append(str(e["exact"]) if len(entries) == 1 else f"{name} {e['exact']}")
            rows.append([name, e["exact"], "", ""])
        else:
            text = f"{e['lo']}..{e['hi']}"
            plain.append(text if len(entries) == 1 else f"{name} {text}")
            rows.append([name, "", e["lo"], e["hi"]])
    return plain, rows


@cli.command("measures")
@click.option("--fn", "fn_text", required=True, help="Function spec, e.g. tt:2:8 or zoo:rubinstein:k=3.")
@click.option("--set", "names", default=",".join(measures.MEASURES), show_default=True,
              help="Comma-separated measures.")
@click.option("--at", "at", default=None, help="Input (bit string x_1..x_n or 0x<word>): pointwise s, bs, C.")
@_command
def measures_cmd(fn_text, names, at, limits, threads):
    """Exact measures, or certified bounds where a limit stops the exact routine."""
    spec, f = _load(fn_text, limits)
    names = tuple(n.strip() for n in names.split(",") if n.strip())
    if at is not None:
        x = _bits(at, f.n)
        entries = _pointwise(f, x, names, limits)
        payload = {"fn": spec, "n": f.n, "input": str(x), "pointwise": entries}
    else:
        entries = measures.measure_report(f, names, limits).to_json()
        payload = {"fn": spec, "n": f.n, "measures": entries}
    plain, rows = _measure_rows(entries)
    code = EXIT_OK if all("exact" in e for e in entries.values()) else EXIT_LIMIT
    return Output(payload, plain, rows, code)


# -- spectral ---------------------------------------------------------------

def _dense(f, what):
    if not isinstance(f, TruthTable):
        raise LimitExceeded(f"{what} needs a dense table; the function has {f.n} variables")
    return f


@cli.command("spectrum")
@click.option("--fn", "fn_text", required=True)
@click.option("--min", "want_min", is_flag=True, help="Smallest nonzero |coefficient|.")
@click.option("--l1", "want_l1", is_flag=True, help="Sum of |coefficients|.")
@click.option("--support", "want_support", is_flag=True, help="Nonzero coefficients.")
@_command
def spectrum_cmd(fn_text, want_min, want_l1, want_support, limits, threads):
    """Exact Fourier spectrum of (-1)^f; coefficients are num / 2^log2den."""
    spec, f = _load(fn_text, limits)
    f = _dense(f, "spectrum")
    fs = spectral.fourier_transform(f)
    everything = not (want_min or want_l1 or want_support)
    payload = {"fn": spec, "n": f.n, "sparsity": fs.sparsity, "degree": fs.degree(), "parseval": True}
    plain = []
    if everything or want_min:
        m = spectral.min_nonzero_coeff(fs)
        payload["min"] = explorer.dyadic_json(m)
        plain.append(f"min {_frac_text(m)}")
    if everything or want_l1:
        l1 = spectral.spectral_l1(fs)
        payload["l1"] = explorer.dyadic_json(l1)
        plain.append(f"l1 {_frac_text(l1)}")
    if everything or want_support:
        payload["support"] = fs.to_json()
        plain += [f"{c['S']} {c['num']}/2^{c['log2den']}" for c in payload["support"]]
    rows = [["S", "num", "log2den"]] + [[c["S"], c["num"], c["log2den"]] for c in fs.to_json()]
    return Output(payload, plain, rows)


@cli.command("rank")
@click.option("--fn", "fn_text", required=True)
@click.option("--op", type=click.Choice(spectral.COMBINERS), required=True)
@click.option("--values", type=click.Choice([spectral.ZERO_ONE, spectral.PLUS_MINUS]), default=spectral.ZERO_ONE,
              show_default=True, help="Matrix entries f in {0,1} or (-1)^f.")
@click.option("--method", type=click.Choice(["exact", "modular"]), default="exact", show_default=True)
@_command
def rank_cmd(fn_text, op, values, method, limits, threads):
    """Rank over Q of the 2^n x 2^n matrix M[x, y] = f(x op y)."""
    spec, f = _load(fn_text, limits)
    f = _dense(f, "rank")
    r, label = spectral.comm_rank_labeled(f, op, values, limits, method)
    payload = {"fn": spec, "n": f.n, "op": op, "values": values, "rank": r, "method": label}
    return Output(payload, [str(r)], [["op", "values", "rank", "method"], [op, values, r, label]])


# -- analytic ---------------------------------------------------------------

def _endpoint(text: str, n: int) -> tuple:
    text = text.strip()
    if ":" in text or "/" in text:
        coords = tuple(Fraction(v) for v in text.split(":"))
    else:
        coords = tuple(_bits(text, n).bit(j) for j in range(1, n + 1))
    if len(coords) != n:
        raise DomainError(f"endpoint {text!r} has {len(coords)} coordinates, expected {n}")
    return coords


@cli.command("shi")
@click.option("--fn", "fn_text", required=True)
@click.option("--sweep", is_flag=True, help="Max |f_l'(t)| over all vertex pairs (default mode).")
@click.option("--points", default=33, show_default=True, help="Grid points t = j/(points-1).")
@click.option("--line", default=None, help="Endpoints a,b as bit strings or colon-separated rationals.")
@click.option("--t", "t_text", default="0", show_default=True, help="Rational t in [0, 1] for --line.")
@click.option("--antipodal", default=None, help="Bit string a: check f_l'(0) on the segment a -> not a.")
@_command
def shi_cmd(fn_text, sweep, points, line, t_text, antipodal, limits, threads):
    """Derivatives of the multilinear extension along segments."""
    spec, f = _load(fn_text, limits)
    f = _dense(f, "the multilinear extension")
    payload = {"fn": spec, "n": f.n}
    plain = []
    if line is not None:
        try:
            a_text, b_text = line.split(",")
            t = Fraction(t_text)
        except ValueError:
            raise DomainError(f"--line expects 'a,b' and --t a rational, got {line!r}, {t_text!r}") from None
        seg = analytic.Line(_endpoint(a_text, f.n), _endpoint(b_text, f.n))
        poly = analytic.mobius_extend(f, limits)
        value = analytic.line_restriction(poly, seg, t)
        deriv = analytic.line_restriction_derivative(poly, seg, t)
        payload["line"] = {"a": [_frac(v) for v in seg.a], "b": [_frac(v) for v in seg.b], "t": _frac(t),
                           "value": _frac(value), "derivative": _frac(deriv)}
        plain += [f"value {_frac_text(value)}", f"derivative {_frac_text(deriv)}"]
    if antipodal is not None:
        x = _bits(antipodal, f.n)
        d = analytic.antipodal_derivative_check(f, x)
        payload["antipodal"] = {"input": str(x), "derivative": d, "s_at": measures.sensitivity_at(f, x)}
        plain.append(f"antipodal {d}")
    if sweep or (line is None and antipodal is None):
        sup = analytic.vertex_sweep(f, points)
        s = measures.sensitivity(f)
        if sup > s:
            raise InvariantViolation(f"vertex sweep {sup} exceeds s(f) = {s}")
        payload["sweep"] = {"points": points, "max": _frac(sup), "s": s, "attained": sup == s}
        if sup != s:
            raise InvariantViolation(f"vertex sweep {sup} does not attain s(f) = {s}")
        plain.append(f"sweep {_frac_text(sup)}")
    return Output(payload, plain)


# -- zoo --------------------------------------------------------------------

@cli.group("zoo")
def zoo_group():
    """Named constructions with their published measure profiles."""


def _zoo_params(k, n, levels, extra) -> dict:
    params = {}
    for key, value in (("k", k), ("n", n), ("levels", levels)):
        if value is not None:
            params[key] = value
    for item in extra:
        key, _, value = item.partition("=")
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise DomainError(f"--param expects KEY=INT, got {item!r}") from None
    return params


def _zoo_options(fn):
    fn = click.option("--param", "extra", multiple=True, metavar="KEY=INT")(fn)
    fn = click.option("--levels", type=int, default=None)(fn)
    fn = click.option("--n", "n", type=int, default=None)(fn)
    fn = click.option("--k", type=int, default=None)(fn)
    return click.option("--name", required=True)(fn)


@zoo_group.command("list")
@_command
def zoo_list(limits, threads):
    """Every registered construction."""
    entries = []
    for name in sorted(zoo.ZOO):
        e = zoo.ZOO[name]
        entries.append({
            "name": name,
            "params": {k: v for k, v in e.params.items()},
            "description": e.description,
            "claims": [{"measure": c.measure, "kind": c.kind, "note": c.note} for c in e.claims],
        })
    rows = [["name", "params", "description"]] + [
        [e["name"], ";".join(e["params"]), e["description"]] for e in entries]
    return Output({"zoo": entries}, [e["name"] for e in entries], rows)


@zoo_group.command("make")
@_zoo_options
@click.option("--emit", type=click.Choice(["tt", "json"]), default="json", show_default=True)
@_command
def zoo_make(name, k, n, levels, extra, emit, limits, threads):
    """Generate a construction; ``--emit tt`` prints its tt:<n>:<hex> line."""
    entry = zoo.get(name)
    params = entry.resolve(_zoo_params(k, n, levels, extra))
    f = entry.make(params, limits)
    if isinstance(f, PointFunction):
        if emit == "tt":
            raise LimitExceeded(f"{name} with {f.n} variables is above the dense limit {limits.dense}")
        payload = {"name": name, "params": params, "n": f.n, "dense": False}
        return Output(payload, [f"point function on {f.n} variables"])
    payload = {"name": name, "params": params, "n": f.n, "dense": True, "tt": f.to_hex()}
    return Output(payload, [f.to_hex()], raw=f.to_hex() if emit == "tt" else None)


@zoo_group.command("verify")
@_zoo_options
@_command
def zoo_verify(name, k, n, levels, extra, limits, threads):
    """Check every applicable exact claim through the measures module."""
    entry = zoo.get(name)
    params = entry.resolve(_zoo_params(k, n, levels, extra))
    results = zoo.verify(name, params, limits)
    claims = []
    for r in results:
        actual = r.actual.to_json() if r.actual is not None else None
        claims.append({"measure": r.measure, "kind": r.kind, "expected": r.expected, "actual": actual,
                       "note": r.note, "passed": r.passed})
    exact = [c for c in claims if c["kind"] == "exact"]
    passed = all(c["passed"] for c in exact)
    code = EXIT_OK
    if not passed:
        limited = any(c["actual"] is not None and "exact" not in c["actual"] for c in exact)
        code = EXIT_LIMIT if limited else EXIT_INVARIANT
    plain = [f"{c['measure']} {c['expected']} {'ok' if c['passed'] else 'FAIL'}" for c in exact]
    rows = [["measure", "expected", "passed"]] + [[c["measure"], c["expected"], c["passed"]] for c in exact]
    return Output({"name": name, "params": params, "claims": claims, "passed": passed}, plain, rows, code)


# -- Gotsman-Linial -----------------------------------------------------------

@cli.command("gl")
@click.option("--fn", "fn_text", default=None)
@click.option("--graph", "graph_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="File holding a vs:<n>:<hex> vertex set.")
@_command
def gl_cmd(fn_text, graph_file, limits, threads):
    """Translate between functions and induced subgraphs of Q_n; report Gamma."""
    if (fn_text is None) == (graph_file is None):
        raise DomainError("give exactly one of --fn and --graph")
    if fn_text is not None:
        spec, f = _load(fn_text, limits)
        f = _dense(f, "the subgraph translation")
        g = glgraph.function_to_subgraph(f)
        summary = glgraph.gl_summary(g)
        s = measures.sensitivity(f)
        deg = measures.degree(f)
        if summary["gamma"] != s:
            raise InvariantViolation(f"Gamma = {summary['gamma']} but s(f) = {s} for {spec}")
        if (deg == f.n) == summary["balanced"] and f.n:
            raise InvariantViolation(f"full degree and balance disagree for {spec}")
        payload = {"fn": spec, "vertex_set": g.to_hex(), "s": s, "deg": deg, **summary}
    else:
        with open(graph_file) as fh:
            g = glgraph.CubeSubgraph.from_hex(fh.read())
        summary = glgraph.gl_summary(g)
        f = glgraph.subgraph_to_function(g)
        payload = {"vertex_set": g.to_hex(), "fn": f.to_hex(), **summary}
    plain = [f"n {summary['n']}", f"vertices {summary['vertices']}", f"gamma {summary['gamma']}",
             f"balanced {str(summary['balanced']).lower()}"]
    rows = [["n", "vertices", "gamma", "balanced"],
            [summary["n"], summary["vertices"], summary["gamma"], summary["balanced"]]]
    return Output(payload, plain, rows)


# -- lattice ----------------------------------------------------------------

@cli.command("lattice")
@click.option("--fn", "fn_text", required=True)
@click.option("--input", "input_bits", default=None, help="Base input x as a bit string.")
@click.option("--blocks", default=None, help="Disjoint blocks, e.g. '1,2|3|4,5'.")
@click.option("--auto-blocks", is_flag=True, help="Use a maximum packing of minimal sensitive blocks.")
@click.option("--radius", type=click.IntRange(min=0), default=None, help="Sweep the box [-r, r]^b.")
@click.option("--strict", is_flag=True, help="Require every block to be sensitive at x.")
@_command
def lattice_cmd(fn_text, input_bits, blocks, auto_blocks, radius, strict, limits, threads):
    """Colour Z^b through per-block Gray codes and measure its sensitivity."""
    spec, f = _load(fn_text, limits)
    if (blocks is None) == (not auto_blocks):
        raise DomainError("give exactly one of --blocks and --auto-blocks")
    if auto_blocks:
        if input_bits is None:
            _, x, fam = measures.bs_witness(_dense(f, "--auto-blocks without --input"), limits)
        else:
            x = _bits(input_bits, f.n)
            _, fam = measures.block_sensitivity_witness(f, x, limits)
        strict = True
    else:
        if input_bits is None:
            raise DomainError("--blocks needs --input")
        x = _bits(input_bits, f.n)
        fam = lattice.parse_blocks(blocks, f.n)
    col = lattice.build_coloring(f, x, fam, strict=strict)
    payload = {"fn": spec, **lattice.describe(col), "nontrivial": lattice.nontrivial(col)}
    plain = [f"b {col.b}", f"nontrivial {str(payload['nontrivial']).lower()}"]
    s_values = []
    if radius is not None:
        box = lattice.coloring_sensitivity_box(col, radius)
        payload["box"] = box.to_json()
        plain.append(f"box {box.value}" + (" exact" if box.exact else " lower-bound"))
        s_values.append(box.value)
    try:
        exact = lattice.coloring_sensitivity_exact(col)
        payload["sensitivity"] = exact
        plain.append(f"sensitivity {exact}")
        s_values.append(exact)
    except LimitExceeded:
        payload["sensitivity"] = None
    if isinstance(f, TruthTable):
        bound = 2 * measures.sensitivity(f)
        payload["bound"] = bound
        if any(v > bound for v in s_values):
            raise InvariantViolation(f"coloring sensitivity {max(s_values)} exceeds 2 s(f) = {bound}")
    return Output(payload, plain)


# -- explorer ---------------------------------------------------------------

@cli.command("scan")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None, help="JSON-lines sink.")
@click.option("--npn", is_flag=True, help="Only NPN class representatives (least table per class).")
@click.option("--resume", is_flag=True, help="Continue a truncated sink from its last checkpoint.")
@click.option("--allow-n5", is_flag=True, help="Opt in to the (very long) n = 5 NPN scan.")
@_command
def scan_cmd(n, out, npn, resume, allow_n5, limits, threads):
    """Check the relation suite on every function of n variables."""
    summary = explorer.scan(n, npn=npn, sink=out, resume=resume, threads=threads, limits=limits,
                            allow_n5=allow_n5)
    payload = summary.to_json()
    return Output(payload, [f"records {summary.records}", f"violations {summary.violations}"])


@cli.command("report")
@click.option("--in", "in_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--format", "doc_format", type=click.Choice(["json", "csv", "md"]), default="json",
              show_default=True)
@_command
def report_cmd(in_file, doc_format, limits, threads):
    """Leaderboard and observations from a scan sink."""
    _, records = explorer.read_records(in_file)
    if doc_format == "csv":
        return Output({}, raw=explorer.records_csv(records))
    rep = explorer.build_report(records, limits)
    if doc_format == "md":
        return Output(rep, raw=explorer.report_markdown(rep))
    return Output(rep)


def run(argv=None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        rv = cli.main(args=argv, prog_name="bfc", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_DOMAIN
    except click.exceptions.Abort:
        return EXIT_DOMAIN
    return rv if isinstance(rv, int) else EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
