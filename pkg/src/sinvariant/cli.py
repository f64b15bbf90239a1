"""Command line entry point: ``sinvariant --pd ... | --braid ... | --pretzel p,q,r``.

Exit codes: 0 success, 1 parse error, 2 semantic error (a link without
``--allow-links``, a diagram too large for the oracle), 3 oracle mismatch.
"""

from __future__ import annotations

import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import click

from .cob import Field
from .lee import s_invariant
from .oracle import OracleError, brute_d_h
from .planar import DiagramError, LinkError, parse_braid, parse_pd, pretzel_diagram

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_ORACLE = 0, 1, 2, 3
ORACLE_LIMIT = 8


class InputError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def parse_input(kind: str, text: str):
    """Build a diagram from one input spec; raises InputError."""
    try:
        if kind == "pd":
            return parse_pd(text)
        if kind == "braid":
            return parse_braid(text)
        if kind == "pretzel":
            parts = [t for t in text.replace(" ", "").split(",")]
            if len(parts) != 3:
                raise DiagramError("pretzel input needs three comma-separated integers")
            try:
                p, q, r = (int(t) for t in parts)
            except ValueError:
                raise DiagramError(f"bad pretzel parameters {text!r}") from None
            return pretzel_diagram(p, q, r, allow_links=True)
    except LinkError as exc:
        raise InputError(EXIT_SEMANTIC, str(exc)) from None
    except DiagramError as exc:
        raise InputError(EXIT_PARSE, str(exc)) from None
    raise InputError(EXIT_PARSE, f"unknown input kind {kind!r}")


def run_one(kind, text, field_spec="Q", allow_links=False, emit_complex=False, oracle_check=False):
    """Compute one report; returns ``(exit_code, payload)``."""
    try:
        F = Field.parse(field_spec)
    except ValueError as exc:
        return EXIT_PARSE, {"input": f"{kind}:{text}", "error": str(exc)}
    base = {"input": f"{kind}:{text}"}
    try:
        T = parse_input(kind, text)
    except InputError as exc:
        return exc.code, {**base, "error": str(exc)}
    if not allow_links and T.components() != 1:
        return EXIT_SEMANTIC, {**base, "error": f"not a knot: {T.components()} components"}
    t0 = time.perf_counter()
    try:
        res = s_invariant(T, F, allow_links=allow_links)
    except LinkError as exc:
        return EXIT_SEMANTIC, {**base, "error": str(exc)}
    wall = time.perf_counter() - t0
    report = {
        **base,
        "s": res.sH,
        "dH": res.dH,
        "writhe": res.writhe,
        "seifertCircles": res.r,
        "crossings": T.n_crossings,
        "field": F.name,
        "reductionStats": {
            "delooped": res.stats.get("delooped", 0),
            "eliminated": res.stats.get("eliminated", 0),
            "wallTime": round(wall, 6),
        },
    }
    if emit_complex:
        report["complexDump"] = res.complex.to_json()
    if oracle_check:
        if T.n_crossings > ORACLE_LIMIT:
            return EXIT_SEMANTIC, {**report, "error": f"oracle check limited to {ORACLE_LIMIT} crossings"}
        try:
            d = brute_d_h(T, F)
        except OracleError as exc:
            return EXIT_SEMANTIC, {**report, "error": str(exc)}
        report["oracle"] = {"dH": d, "s": 2 * d + res.writhe - res.r + 1}
        if d != res.dH:
            return EXIT_ORACLE, {**report, "error": "oracle mismatch"}
    return EXIT_OK, report


def split_spec(line: str):
    kind, sep, text = line.partition(":")
    if not sep or kind not in ("pd", "braid", "pretzel"):
        raise InputError(EXIT_PARSE, f"batch line needs a pd:, braid: or pretzel: prefix: {line!r}")
    return kind, text.strip()


def _batch_task(args):
    line, opts = args
    try:
        kind, text = split_spec(line)
    except InputError as exc:
        return exc.code, {"input": line, "error": str(exc)}
    return run_one(kind, text, **opts)


def run_batch(lines, opts, jobs=1):
    tasks = [(ln, opts) for ln in lines]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_batch_task, tasks))
    else:
        results = [_batch_task(t) for t in tasks]
    code = max((c for c, _ in results), default=EXIT_OK)
    summary = {
        "count": len(results),
        "ok": sum(1 for c, _ in results if c == EXIT_OK),
        "failed": sum(1 for c, _ in results if c != EXIT_OK),
    }
    return code, {"results": [r for _, r in results], "summary": summary}


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--pd", "pd_text", help="PD code, e.g. 'X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]'.")
@click.option("--braid", "braid_text", help="Braid word as signed generator indices, e.g. '1 1 1'.")
@click.option("--pretzel", "pretzel_text", help="Pretzel parameters p,q,r.")
@click.option("--field", "field_spec", default="Q", show_default=True, help="Q, F2 or Fp:<p>.")
@click.option("--allow-links", is_flag=True, help="Accept multi-component diagrams.")
@click.option("--emit-complex", is_flag=True, help="Include the reduced complex in the report.")
@click.option("--oracle-check", is_flag=True, help=f"Cross-check dH by brute force (at most {ORACLE_LIMIT} crossings).")
@click.option("--batch", "batch_file", type=click.Path(exists=True, dir_okay=False), help="File with one pd:/braid:/pretzel: spec per line.")
@click.option("--jobs", default=1, show_default=True, help="Worker processes for --batch.")
def main(pd_text, braid_text, pretzel_text, field_spec, allow_links, emit_complex, oracle_check, batch_file, jobs):
    """Compute the Rasmussen s-invariant and print a JSON report."""
    opts = dict(field_spec=field_spec, allow_links=allow_links, emit_complex=emit_complex, oracle_check=oracle_check)
    given = [(k, v) for k, v in (("pd", pd_text), ("braid", braid_text), ("pretzel", pretzel_text)) if v is not None]
    if batch_file:
        if given:
            _fail(EXIT_PARSE, "--batch excludes --pd/--braid/--pretzel")
        with open(batch_file) as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
        code, payload = run_batch(lines, opts, jobs)
    else:
        if len(given) != 1:
            _fail(EXIT_PARSE, "give exactly one of --pd, --braid, --pretzel")
        code, payload = run_one(given[0][0], given[0][1], **opts)
    click.echo(json.dumps(payload, sort_keys=True))
    if code != EXIT_OK and "error" in payload:
        click.echo(payload["error"], err=True)
    sys.exit(code)


def _fail(code, message):
    click.echo(json.dumps({"error": message}), err=False)
    click.echo(message, err=True)
    sys.exit(code)


if __name__ == "__main__":  # pragma: no cover
    main()
