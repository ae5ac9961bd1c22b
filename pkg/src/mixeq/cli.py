"""Command-line front end: ``mixeq pressure | classify | structure | fixture``.

Input is a tuple document (JSON file) or the name of a built-in fixture.
Every command writes one JSON report to stdout.  Exit codes: 0 when a
result was produced (an Inconclusive verdict included), 1 for input and
usage errors, 2 when an enumeration budget is exceeded.
"""

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__
from .config import BUDGET_ENV, DEFAULT_SEED, enumeration_budget
from .errors import BudgetError, InputError, MixeqError
from .fixtures import FIXTURE_NAMES, fixture
from .mats import EXACT, FLOAT, MatrixTuple, matrix_to_strings
from .pressure import NORMS, pressure_estimate, pressure_s2_exact, pressure_vector_growth
from .structure import block_triangularize, classify_mixing, cyclic_decomposition, is_irreducible


class UsageError(InputError):
    pass


# -- tuple documents -----------------------------------------------------------

def _parse_entry(x, mode, where):
    if isinstance(x, bool):
        raise InputError(f"{where}: booleans are not matrix entries")
    if isinstance(x, int):
        return Fraction(x) if mode == EXACT else float(x)
    if isinstance(x, float):
        if mode == EXACT:
            raise InputError(f"{where}: JSON floats are not allowed in exact mode; "
                             "write the entry as a string such as \"1/3\" or \"0.25\"")
        return x
    if isinstance(x, str):
        try:
            q = Fraction(x.strip())
        except ZeroDivisionError:
            raise InputError(f"{where}: zero denominator in {x!r}") from None
        except ValueError:
            raise InputError(f"{where}: cannot parse {x!r} as a rational number") from None
        return q if mode == EXACT else float(q)
    raise InputError(f"{where}: expected a number or a rational string, got {type(x).__name__}")


def parse_tuple_document(doc):
    """Validate a tuple document (already decoded from JSON) and build the tuple."""
    if not isinstance(doc, dict):
        raise InputError("document: expected a JSON object")
    unknown = set(doc) - {"d", "N", "matrices", "mode", "name"}
    if unknown:
        raise InputError(f"document: unknown field(s) {sorted(unknown)}")
    for key in ("d", "N", "matrices"):
        if key not in doc:
            raise InputError(f"document: missing field {key!r}")
    mode = doc.get("mode", EXACT)
    if mode not in (EXACT, FLOAT):
        raise InputError(f"mode: expected 'exact' or 'float', got {mode!r}")
    d, N, mats = doc["d"], doc["N"], doc["matrices"]
    for key, val in (("d", d), ("N", N)):
        if isinstance(val, bool) or not isinstance(val, int) or val < 1:
            raise InputError(f"{key}: expected a positive integer, got {val!r}")
    if not isinstance(mats, list) or len(mats) != N:
        raise InputError(f"matrices: expected a list of N={N} matrices")
    parsed = []
    for i, m in enumerate(mats):
        if not isinstance(m, list) or len(m) != d:
            raise InputError(f"matrices[{i}]: expected {d} rows")
        rows = []
        for r, row in enumerate(m):
            if not isinstance(row, list) or len(row) != d:
                raise InputError(f"matrices[{i}][{r}]: expected {d} entries")
            rows.append([_parse_entry(x, mode, f"matrices[{i}][{r}][{c}]")
                         for c, x in enumerate(row)])
        parsed.append(rows)
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError("name: expected a string")
    if mode == EXACT:
        return MatrixTuple.exact(parsed, name=name)
    return MatrixTuple.floating(parsed, name=name)


def tuple_to_document(t):
    doc = {"d": t.d, "N": t.N, "mode": t.mode,
           "matrices": [matrix_to_strings(m) for m in t.matrices]}
    if t.name:
        doc["name"] = t.name
    return doc


def load_input(source):
    """A tuple from a JSON file path or a fixture name."""
    if source in FIXTURE_NAMES and not os.path.exists(source):
        return fixture(source)
    if not os.path.exists(source):
        raise InputError(f"{source!r} is neither a file nor a fixture ({', '.join(FIXTURE_NAMES)})")
    with open(source) as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_tuple_document(doc)


# -- commands -------------------------------------------------------------------

def _finite(x):
    if isinstance(x, float) and math.isinf(x):
        return None
    return x


def cmd_pressure(t, args):
    if args.method == "s2":
        if args.s != 2:
            raise UsageError("--method s2 computes P(A, 2) only; pass --s 2")
        return {"method": "s2", "s": 2.0, "pressure": _finite(pressure_s2_exact(t))}, {}
    if args.method == "vector":
        v = args.vector or [1] + [0] * (t.d - 1)
        if len(v) != t.d:
            raise UsageError(f"--vector needs {t.d} components")
        vals = [[n, _finite(pressure_vector_growth(t, args.s, v, n))]
                for n in range(1, args.n_max + 1)]
        return {"method": "vector", "s": args.s, "vector": v, "values": vals}, {}
    est = pressure_estimate(t, args.s, args.n_max, args.norm, threads=args.threads)
    res = est.to_json()
    res.update(method="enum", best_upper_bound=_finite(est.best_upper_bound),
               consistent=est.is_consistent())
    return res, {}


def cmd_classify(t, args):
    if not t.is_exact:
        raise InputError("classify needs an exact tuple; set \"mode\": \"exact\" in the document")
    rep = classify_mixing(t, args.s, args.witness_max_len, args.seed)
    res = {"verdict": rep.verdict, "s": rep.s, "ell": rep.ell,
           "k": None if rep.cyclic is None else rep.cyclic.k,
           "ell_tested": list(rep.ell_tested), "notes": list(rep.notes)}
    cert = {"cyclic": None if rep.cyclic is None else rep.cyclic.to_json(),
            "witness": None if rep.witness is None else rep.witness.to_json(),
            "witness_pair": None if rep.witness_pair is None else list(rep.witness_pair),
            "power_verdicts": {str(k): v.to_json() for k, v in rep.power_verdicts.items()}}
    return res, cert


def cmd_structure(t, args):
    if args.action == "irreducible":
        v = is_irreducible(t, args.seed)
        return {"action": "irreducible", "status": v.status, "method": v.method}, v.to_json()
    if not t.is_exact:
        raise InputError(f"--action {args.action} needs an exact tuple")
    if args.action == "triangularize":
        form = block_triangularize(t, args.seed)
        res = {"action": "triangularize", "dims": list(form.dims), "complete": form.complete}
        return res, form.to_json()
    if args.ell is None:
        raise UsageError("--action cyclic needs --ell")
    cs = cyclic_decomposition(t, args.ell, args.seed)
    res = {"action": "cyclic", "ell": args.ell, "found": cs is not None,
           "k": None if cs is None else cs.k}
    return res, {} if cs is None else cs.to_json()


def cmd_fixture(args):
    if args.name is None:
        return {"fixtures": list(FIXTURE_NAMES)}
    try:
        return tuple_to_document(fixture(args.name))
    except KeyError as exc:
        raise InputError(exc.args[0]) from None


# -- argument parsing -------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Usage errors exit with status 1 like every other input error."""

    def error(self, message):
        raise UsageError(message)


def _positive_float(text):
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _positive_int(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser():
    p = _Parser(prog="mixeq", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"mixeq {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(q):
        q.add_argument("input", help="tuple document (JSON) or fixture name")
        q.add_argument("--output", "-o", help="write the report here instead of stdout")

    q = sub.add_parser("pressure", help="pressure truncations and estimates")
    common(q)
    q.add_argument("--s", type=_positive_float, default=1.0)
    q.add_argument("--n-max", type=_positive_int, default=10)
    q.add_argument("--norm", choices=NORMS, default="operator")
    q.add_argument("--method", choices=("enum", "vector", "s2"), default="enum")
    q.add_argument("--vector", type=lambda s: [Fraction(x) for x in s.split(",")],
                   help="comma-separated start vector for --method vector (default e_1)")
    q.add_argument("--threads", type=_positive_int, default=1)

    q = sub.add_parser("classify", help="mixing verdict with certificates")
    common(q)
    q.add_argument("--s", type=_positive_float, default=1.0)
    q.add_argument("--witness-max-len", type=_positive_int, default=4)
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)

    q = sub.add_parser("structure", help="irreducibility, triangular and cyclic forms")
    common(q)
    q.add_argument("--action", choices=("irreducible", "triangularize", "cyclic"), required=True)
    q.add_argument("--ell", type=int)
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)

    q = sub.add_parser("fixture", help="list fixtures or print one as a tuple document")
    q.add_argument("name", nargs="?")
    return p


def _inputs_echo(args, t):
    echo = {k: v for k, v in vars(args).items() if k not in ("command", "output")}
    if isinstance(echo.get("vector"), list):
        echo["vector"] = [str(x) for x in echo["vector"]]
    echo["tuple"] = tuple_to_document(t)
    echo["budget"] = enumeration_budget()
    return echo


def dumps(report):
    return json.dumps(report, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def run(argv=None):
    """Parse ``argv``, run the command and return ``(exit_code, stdout_text, stderr_text)``."""
    try:
        args = build_parser().parse_args(argv)
        if args.command == "fixture":
            return 0, dumps(cmd_fixture(args)), ""
        t = load_input(args.input)
        handler = {"pressure": cmd_pressure, "classify": cmd_classify,
                   "structure": cmd_structure}[args.command]
        results, certificates = handler(t, args)
        report = {
            "command": args.command,
            "inputs": _inputs_echo(args, t),
            "results": results,
            "certificates": certificates,
            "version": __version__,
            "seed": getattr(args, "seed", DEFAULT_SEED),
        }
        text = dumps(report)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
            return 0, "", ""
        return 0, text, ""
    except BudgetError as exc:
        err = {"error": "budget", "message": str(exc), "budget": exc.budget,
               "requested": exc.requested, "override": BUDGET_ENV}
        return 2, "", dumps(err)
    except MixeqError as exc:
        return 1, "", dumps({"error": type(exc).__name__, "message": str(exc)})
    except OSError as exc:
        return 1, "", dumps({"error": "OSError", "message": str(exc)})


def main(argv=None):
    code, out, err = run(argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
