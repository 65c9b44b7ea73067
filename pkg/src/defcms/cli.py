"""Command-line reports over the library.

Exit codes: 0 success, 1 a checked statement failed, 2 usage error,
3 domain error (input outside the domain of the operation), 4 the
CMS_MAX_CELLS resource bound was hit.
"""

import json
import sys
import time

import click

from . import __version__
from .linalg import ResourceBoundError
from .rootsys import format_weight, parse_weight

SCHEMA = "defcms.report/1"

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_DOMAIN, EXIT_RESOURCE = 0, 1, 2, 3, 4


class DomainError(Exception):
    pass


def _jsonable(x):
    from .kfield import RatK
    from .laurent import LaurentPoly

    if isinstance(x, RatK):
        return str(x)
    if isinstance(x, LaurentPoly):
        return x.to_json_obj()
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, tuple) else json.dumps(_jsonable(list(k))): _jsonable(v)
                for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    return x


def _emit(ctx, command, n, m, inputs, outputs, verdicts, text_lines, started):
    as_json = ctx.obj.get("json")
    timing = ctx.obj.get("timing")
    if as_json:
        report = {
            "schema": SCHEMA,
            "version": __version__,
            "command": command,
            "n": n,
            "m": m,
            "inputs": _jsonable(inputs),
            "outputs": _jsonable(outputs),
            "verdicts": _jsonable(verdicts),
        }
        if timing:
            report["seconds"] = round(time.perf_counter() - started, 3)
        click.echo(json.dumps(report, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            click.echo(line)
        if timing:
            click.echo("time: %.3fs" % (time.perf_counter() - started))
    ok = all(v.get("pass", True) for v in verdicts) if verdicts else True
    ctx.exit(EXIT_OK if ok else EXIT_VIOLATION)


def _weight(text, n, m):
    try:
        chi, n2, m2 = parse_weight(text)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--weight")
    if (n2, m2) != (n, m):
        raise click.BadParameter("weight has shape (%d|%d), expected (%d|%d)" % (n2, m2, n, m),
                                 param_hint="--weight")
    return chi


def _partition(text):
    text = (text or "").strip()
    if text in ("", "()", "[]"):
        return ()
    try:
        vals = json.loads(text if text.startswith("[") else "[" + text.strip("()") + "]")
        from .bipart import normalize_partition

        return normalize_partition(vals)
    except (ValueError, TypeError) as e:
        raise click.BadParameter("bad partition %r: %s" % (text, e))


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except ResourceBoundError as e:
            click.echo("resource bound: %s" % e, err=True)
            ctx.exit(EXIT_RESOURCE)
        except DomainError as e:
            click.echo("domain error: %s" % e, err=True)
            ctx.exit(EXIT_DOMAIN)
        except AssertionError as e:
            click.echo("statement failed: %s" % e, err=True)
            ctx.exit(EXIT_VIOLATION)


def _common(f):
    f = click.option("--n", "n", type=click.IntRange(0, None), required=True, help="size of the first block")(f)
    f = click.option("--m", "m", type=click.IntRange(0, None), required=True, help="size of the second block")(f)
    return f


@click.group(cls=_Group)
@click.option("--json", "as_json", is_flag=True, help="machine-readable JSON report")
@click.option("--timing", is_flag=True, help="include wall-clock time (output is then not byte-stable)")
@click.version_option(__version__)
@click.pass_context
def main(ctx, as_json, timing):
    """Exact computations for the deformed CMS operators of type A(n-1, m-1)."""
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json
    ctx.obj["timing"] = timing


@main.command()
@_common
@click.option("--weight", required=True, help='dominant weight "(a1,...,an|b1,...,bm)"')
@click.pass_context
def eqclass(ctx, n, m, weight):
    """Equivalence class, chi_min, roots and the line diagram of a weight."""
    from .diagram import class_report, render_ascii
    from .laurent import is_dominant

    started = time.perf_counter()
    chi = _weight(weight, n, m)
    if not is_dominant(chi, n, m):
        raise DomainError("weight %s is not dominant" % weight)
    rep = class_report(chi, n, m)
    obj = rep.to_json_obj()
    lines = [
        "weight: %s" % format_weight(chi, n),
        "class: %s" % ", ".join(obj["class"]),
        "r: %d" % rep.r,
        "chi_min: %s" % obj["chi_min"],
    ]
    for t, c in enumerate(obj["components"], start=1):
        lines.append("beta_%d: %s  roots: %s" % (t, c["beta"], c["roots"]))
    lines.append("")
    lines.append(render_ascii(chi, n, m))
    obj["diagram"] = render_ascii(chi, n, m).split("\n")
    _emit(ctx, "eqclass", n, m, {"weight": weight}, obj, [], lines, started)


@main.group()
def bipartition():
    """The bijection between the (n, m) cross and dominant weights."""


@bipartition.command("to-weight")
@_common
@click.option("--lambda", "lam", default="", help="partition, e.g. 2,1")
@click.option("--mu", "mu", default="", help="partition, e.g. 1")
@click.pass_context
def to_weight(ctx, n, m, lam, mu):
    from .bipart import in_cross, pi_map, sigma_map

    started = time.perf_counter()
    lam, mu = _partition(lam), _partition(mu)
    if not in_cross(lam, mu, n, m):
        raise DomainError("bipartition not in (%d,%d) cross" % (n, m))
    chi = pi_map(lam, mu, n, m)
    sig = sigma_map(lam, mu, n, m)
    verdict = {"property": "sigma = pi", "pass": sig == chi}
    lines = ["weight: %s" % format_weight(chi, n), "sigma_check: %s" % ("pass" if sig == chi else "fail")]
    _emit(ctx, "bipartition to-weight", n, m, {"lambda": list(lam), "mu": list(mu)},
          {"weight": format_weight(chi, n), "sigma": format_weight(sig, n)}, [verdict], lines, started)


@bipartition.command("from-weight")
@_common
@click.option("--weight", required=True)
@click.pass_context
def from_weight(ctx, n, m, weight):
    from .bipart import pi_inverse, pi_map
    from .laurent import is_dominant

    started = time.perf_counter()
    chi = _weight(weight, n, m)
    if not is_dominant(chi, n, m):
        raise DomainError("weight %s is not dominant" % weight)
    lam, mu = pi_inverse(chi, n, m)
    ok = pi_map(lam, mu, n, m) == chi
    lines = ["lambda: %s" % (list(lam),), "mu: %s" % (list(mu),), "roundtrip: %s" % ("pass" if ok else "fail")]
    _emit(ctx, "bipartition from-weight", n, m, {"weight": weight}, {"lambda": list(lam), "mu": list(mu)},
          [{"property": "pi o pi_inverse = id", "pass": ok}], lines, started)


@main.command()
@_common
@click.option("--weight", required=True)
@click.option("--support", "support_mode", type=click.Choice(["construction", "orbit"]), default=None,
              help="support used for the eigenspace (default: orbit)")
@click.pass_context
def spectral(ctx, n, m, weight, support_mode):
    """Generalised eigenspace, image algebra and eigenfunction of a regular weight."""
    from .rootsys import is_regular, singular_plus
    from .verify import check_algebra, check_eigenfunction

    started = time.perf_counter()
    chi = _weight(weight, n, m)
    if not is_regular(chi, n, m):
        bad = singular_plus(chi, n, m) if len(chi) == n + m else []
        raise DomainError("%s not in X_reg: (chi + rho, a) = (a, a)/2 for odd roots %s"
                          % (weight, ["e%d-e%d" % (i + 1, j + 1) for i, j in bad]))
    alg = check_algebra(n, m, chi, support_mode)
    eig = check_eigenfunction(n, m, chi, 4, support_mode)
    rep = alg["report"]
    lines = [
        "weight: %s" % format_weight(chi, n),
        "r: %d" % alg["r"],
        "dimension: %d" % rep["dimension"],
        "nilpotency index: %d" % rep["nilpotency_index"],
        "dim m/m^2: %d" % rep["cotangent_dim"],
        "algebra checks: %s" % ("pass" if alg["pass"] else "fail %s" % alg["counterexample"]),
        "eigenfunction: %s" % eig.get("eigenfunction", "-"),
        "eigenfunction check: %s" % ("pass" if eig["pass"] else "fail"),
    ]
    outputs = {
        "r": alg["r"],
        "dimension": rep["dimension"],
        "nilpotency_index": rep["nilpotency_index"],
        "cotangent_dim": rep["cotangent_dim"],
        "checks": alg["checks"],
        "cyclic_vector": rep["cyclic_vector"],
        "eigenfunction": eig.get("eigenfunction"),
    }
    verdicts = [{k: v for k, v in alg.items() if k in ("property", "pass", "counterexample")},
                {k: v for k, v in eig.items() if k in ("property", "pass", "counterexample")}]
    _emit(ctx, "spectral", n, m, {"weight": weight}, outputs, verdicts, lines, started)


@main.command()
@click.argument("suite", type=click.Choice(["commute", "bernoulli", "bijection", "spectral"]))
@_common
@click.option("--box", type=click.IntRange(0, None), default=None, help="weight box |chi_i| <= box")
@click.option("--rmax", type=click.IntRange(1, None), default=3, help="largest index r")
@click.option("--k-sample", "k_sample", type=int, default=None,
              help="also screen identities at k = q; the verdict is always exact")
@click.pass_context
def verify(ctx, suite, n, m, box, rmax, k_sample):
    """Run a verification sweep; nonzero exit on any failure."""
    from . import verify as V

    started = time.perf_counter()
    if suite == "commute":
        B = 1 if box is None else box
        verdicts = [V.check_commute(n, m, B, rmax, k_sample=k_sample), V.check_invariance(n, m, B, rmax)]
    elif suite == "bernoulli":
        B = 3 if box is None else box
        verdicts = [V.check_bernoulli(n, m, B, rmax, k_sample=k_sample), V.check_equivalence(n, m, B),
                    V.check_classes(n, m, B)]
    elif suite == "bijection":
        B = 3 if box is None else box
        verdicts = [V.check_bijection(n, m, B)]
    else:
        B = 1 if box is None else box
        ws = V.regular_box(n, m, B)
        verdicts = [V.check_spectral(n, m, ws)]
    lines = []
    for v in verdicts:
        line = "%s: %s (%d checked)" % (v["property"], "pass" if v["pass"] else "FAIL", v["checked"])
        lines.append(line)
        if v["counterexample"] is not None:
            lines.append("  counterexample: %s" % json.dumps(_jsonable(v["counterexample"]), sort_keys=True))
    _emit(ctx, "verify " + suite, n, m, {"box": B, "rmax": rmax, "k_sample": k_sample},
          {}, verdicts, lines, started)


if __name__ == "__main__":
    sys.exit(main())
