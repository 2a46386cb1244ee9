"""Command-line front end.

Every command takes a problem (family, rank, word and a multiplicity list
or a dominant weight) from flags, from a JSON spec file, or both; flags win.
Reports go to stdout, diagnostics to stderr as a single line
``error: <kind>: <reason>``.

Exit codes: 0 success, 1 a reported check failed, 2 bad input, 3 a
resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import polyhedra
from .errors import DomainError, PreconditionError, ResourceError
from .polyhedra import DEFAULT_LATTICE_CAP, dumps_json, rational_str
from .resolve import construct_m, containment_check, polytope_verdicts, verify_resolution
from .rootsys import RootDatum
from .stringpoly import count_delta_lattice_points, delta_lattice_points, in_delta, m_of_lambda
from .twistedcube import WordMult, a_forms, cartier_data, direct_P_oracle, satisfies_P, twisted_cube

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

LABELS = """\
node labels (Bourbaki; c[i][j] = <alpha_j, alpha_i^vee>):
  A_n  1-2-...-n
  B_n  1-2-...-(n-1)=>n      alpha_n short
  C_n  1-2-...-(n-1)<=n      alpha_n long
  D_n  1-...-(n-2) with n-1 and n both joined to n-2
  E_n  1-3-4-5-...-n with 2 joined to 4
  F_4  1-2=>3-4              alpha_1, alpha_2 long
  G_2  1=>2 (triple bond)    alpha_1 LONG: cartan [[2,-1],[-3,2]]
"""


class InputError(ValueError):
    pass


@dataclass
class ProblemSpec:
    family: str
    rank: int
    word: tuple[int, ...]
    mult: tuple[int, ...] | None = None
    weight: tuple[int, ...] | None = None
    dilates: int = 3
    denominator: int = 2
    format: str | None = None
    cap: int = DEFAULT_LATTICE_CAP

    @property
    def datum(self) -> RootDatum:
        return RootDatum.of(self.family, self.rank)

    def multiplicities(self) -> tuple[int, ...]:
        """The given ``mult``, or ``m(lambda)`` when a weight was given instead."""
        if self.mult is not None:
            return self.mult
        return m_of_lambda(self.datum, self.word, self.weight)

    def input_json(self) -> dict:
        out = {"family": self.family, "rank": self.rank, "word": list(self.word)}
        if self.mult is not None:
            out["mult"] = list(self.mult)
        if self.weight is not None:
            out["weight"] = list(self.weight)
        return out


def _int_list(text, what: str) -> tuple[int, ...]:
    if isinstance(text, list):
        items = text
    else:
        text = str(text).strip().strip("()[]")
        items = [t for t in text.replace(" ", "").split(",") if t != ""]
    try:
        return tuple(int(v) for v in items)
    except (TypeError, ValueError):
        raise InputError(f"{what} must be a comma-separated list of integers, got {text!r}") from None


def _point(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(t) for t in text.strip().strip("()[]").replace(" ", "").split(",") if t != "")
    except (ValueError, ZeroDivisionError):
        raise InputError(f"point must be a comma-separated list of rationals, got {text!r}") from None


_FIELDS = ("family", "rank", "word", "mult", "weight", "dilates", "denominator", "format", "cap")


def build_spec(args: argparse.Namespace, *, need: str = "either", allow_empty_word: bool = False) -> ProblemSpec:
    """Merge the spec file with the flags; ``need`` is "mult", "weight" or "either"."""
    raw: dict = {}
    if args.spec:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read spec file: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"spec file is not valid JSON: {exc.msg} at line {exc.lineno}") from None
        if not isinstance(raw, dict):
            raise InputError("spec file must hold a JSON object")
        unknown = sorted(set(raw) - set(_FIELDS))
        if unknown:
            raise InputError(f"unknown spec fields: {','.join(unknown)}")
    for name in _FIELDS:
        val = getattr(args, name, None)
        if val is not None:
            raw[name] = val
    if "family" not in raw or "rank" not in raw:
        raise InputError("family and rank are required")
    if "word" not in raw:
        raise InputError("word is required")
    family = str(raw["family"]).upper()
    try:
        rank = int(raw["rank"])
    except (TypeError, ValueError):
        raise InputError(f"rank must be an integer, got {raw['rank']!r}") from None
    word = _int_list(raw["word"], "word")
    if not word and not allow_empty_word:
        raise InputError("word must be non-empty")
    mult = _int_list(raw["mult"], "mult") if raw.get("mult") is not None else None
    weight = _int_list(raw["weight"], "weight") if raw.get("weight") is not None else None
    if mult is not None and weight is not None:
        raise InputError("give exactly one of mult and weight")
    if need == "mult" and mult is None:
        raise InputError("this command needs a multiplicity list (--mult)")
    if need == "weight" and weight is None:
        raise InputError("this command needs a dominant weight (--weight)")
    if need == "either" and mult is None and weight is None:
        raise InputError("give one of mult and weight")
    if mult is not None and any(v < 0 for v in mult):
        raise InputError(f"multiplicities must be non-negative, got {list(mult)}")
    if weight is not None and any(v < 0 for v in weight):
        raise InputError(f"weight must be dominant (non-negative coordinates), got {list(weight)}")
    spec = ProblemSpec(family, rank, word, mult, weight)
    for name in ("dilates", "denominator", "cap"):
        if raw.get(name) is not None:
            try:
                setattr(spec, name, int(raw[name]))
            except (TypeError, ValueError):
                raise InputError(f"{name} must be an integer") from None
    if spec.dilates < 1 or spec.denominator < 1 or spec.cap < 1:
        raise InputError("dilates, denominator and cap must be positive")
    if raw.get("format") is not None:
        spec.format = str(raw["format"])
        if spec.format not in ("json", "text", "off"):
            raise InputError(f"unknown format {spec.format!r}")
    if spec.format == "off" and args.command != "export":
        raise InputError("format off is only available for export")
    args.resolved_format = spec.format
    datum = spec.datum  # validates family and rank
    datum.check_word(word)
    if mult is not None and len(mult) != len(word):
        raise InputError(f"multiplicity list has length {len(mult)}, word has length {len(word)}")
    if weight is not None:
        datum.check_weight(weight)
    return spec


# ---------------------------------------------------------------------------
# commands: each returns (exit code, json report, text report)


def _checks_text(checks: dict) -> list[str]:
    lines = []
    for name, c in checks.items():
        status = "pass" if c["pass"] else "FAIL"
        wit = "" if c["witness"] is None or c["pass"] else f"  {json.dumps(c['witness'])}"
        lines.append(f"  {name:<15} {status}{wit}")
    return lines


def _poly_checks(P: polyhedra.HPolytope) -> dict:
    return {k: c.to_json() for k, c in polytope_verdicts(P).items()}


def cmd_twisted_cube(args) -> tuple[int, dict, str]:
    spec = build_spec(args)
    wm = WordMult(spec.datum, spec.word, spec.multiplicities())
    P = twisted_cube(wm)
    V = polyhedra.vertices(P)
    forms = a_forms(wm)
    counts = {str(k): polyhedra.count_lattice_points(twisted_cube(wm.scaled(k)), spec.cap)
              for k in range(1, spec.dilates + 1)}
    report = {
        "input": spec.input_json(),
        "m": list(wm.mult),
        "inequalities": [f"0 <= x_{j + 1} <= {f}" for j, f in enumerate(forms)],
        "halfspaces": [{"normal": list(h.normal), "bound": rational_str(h.bound)} for h in P.halfspaces],
        "vertices": polyhedra.vertices_to_json(V)["vertices"],
        "checks": _poly_checks(P),
        "lattice_counts": counts,
    }
    lines = [f"twisted cube P for word {spec.word}, m={wm.mult}"]
    lines += ["  " + s for s in report["inequalities"]]
    lines.append(f"vertices ({len(V)}):")
    lines += ["  (" + ", ".join(v.removesuffix("/1") for v in p) + ")" for p in report["vertices"]]
    lines += _checks_text(report["checks"])
    lines += [f"  lattice points at dilate {k}: {v}" for k, v in counts.items()]
    return EXIT_OK, report, "\n".join(lines)


def cmd_string_polytope(args) -> tuple[int, dict, str]:
    spec = build_spec(args)
    wm = WordMult(spec.datum, spec.word, spec.multiplicities())
    queries = []
    for text in args.point or []:
        pt = _point(text)
        res = in_delta(wm, pt)
        queries.append({
            "point": [rational_str(v) for v in pt],
            "inside": res.inside,
            "violation": list(res.violation) if res.violation else None,
            "value": None if res.value is None else rational_str(res.value),
        })
    counts = {str(k): count_delta_lattice_points(wm, k, spec.cap) for k in range(1, spec.dilates + 1)}
    report = {"input": spec.input_json(), "m": list(wm.mult), "queries": queries, "lattice_counts": counts}
    if args.list_points:
        report["lattice_points"] = [list(p) for p in delta_lattice_points(wm, 1, spec.cap)]
    lines = [f"string polytope Delta for word {spec.word}, m={wm.mult}"]
    for q in queries:
        where = "inside" if q["inside"] else f"outside {q['violation']} value {q['value']}"
        lines.append(f"  ({', '.join(v.removesuffix('/1') for v in q['point'])}) {where}")
    lines += [f"  lattice points at dilate {k}: {v}" for k, v in counts.items()]
    for p in report.get("lattice_points", []):
        lines.append(f"  {tuple(p)}")
    return EXIT_OK, report, "\n".join(lines)


def cmd_check_p(args) -> tuple[int, dict, str]:
    spec = build_spec(args)
    wm = WordMult(spec.datum, spec.word, spec.multiplicities())
    cert = satisfies_P(wm)
    oracle = direct_P_oracle(wm, spec.denominator, spec.cap)
    w = cert.witness
    report = {
        "input": spec.input_json(),
        "m": list(wm.mult),
        "conditionP": cert.holds,
        "witness": None if w is None else str(w),
        "witness_detail": None if w is None else {"k": w.k, "sigma": w.sigma, "point": list(w.point),
                                                  "value": w.value},
        "grid_check": {"denominator": spec.denominator, "holds": oracle},
    }
    text = f"condition (P): {'holds' if cert.holds else 'fails'}"
    if w is not None:
        text += f"\nwitness: {w} (sigma={w.sigma})"
    text += f"\ngrid check on (1/{spec.denominator})Z: {'holds' if oracle else 'fails'}"
    if oracle != cert.holds:
        print("error: internal: Cartier criterion and grid check disagree", file=sys.stderr)
    code = EXIT_OK if cert.holds and oracle else EXIT_FAIL
    return code, report, text


def cmd_cartier(args) -> tuple[int, dict, str]:
    spec = build_spec(args, allow_empty_word=True)
    wm = WordMult(spec.datum, spec.word, spec.multiplicities())
    table = cartier_data(wm)
    rows = [{"sigma": s, "r": list(r)} for s, r in table.items()]
    report = {
        "input": spec.input_json(),
        "m": list(wm.mult),
        "table": rows,
        "all_nonnegative": table.all_nonnegative(),
        "all_distinct": table.all_distinct(),
    }
    lines = [f"{r['sigma'] or '()'}  ({', '.join(map(str, r['r']))})" for r in rows]
    lines.append(f"all non-negative: {report['all_nonnegative']}, all distinct: {report['all_distinct']}")
    return EXIT_OK, report, "\n".join(lines)


def cmd_m_of_lambda(args) -> tuple[int, dict, str]:
    spec = build_spec(args, need="weight", allow_empty_word=True)
    m = m_of_lambda(spec.datum, spec.word, spec.weight)
    return EXIT_OK, {"input": spec.input_json(), "m_lambda": list(m)}, "(" + ",".join(map(str, m)) + ")"


def cmd_resolve(args) -> tuple[int, dict, str]:
    spec = build_spec(args, need="weight")
    m = construct_m(spec.datum, spec.word, spec.weight)
    rep = verify_resolution(spec.datum, spec.word, spec.weight, m, spec.dilates, spec.cap)
    report = rep.to_json()
    lines = [f"m(lambda) = {rep.m_lambda}", f"m = {rep.m}", "checks:"]
    lines += _checks_text(report["checks"])
    lines.append(f"vertices: {len(rep.vertices)}")
    lines += [f"lattice points at dilate {k}: {v}" for k, v in rep.lattice_counts.items()]
    lines.append("all checks pass" if rep.all_passed else "failed: " + ",".join(rep.failed()))
    return (EXIT_OK if rep.all_passed else EXIT_FAIL), report, "\n".join(lines)


def cmd_compare(args) -> tuple[int, dict, str]:
    spec = build_spec(args)
    if args.big_mult is None:
        raise InputError("compare needs --big-mult")
    big = _int_list(args.big_mult, "big-mult")
    if len(big) != len(spec.word) or any(v < 0 for v in big):
        raise InputError("big-mult must be a non-negative list of the word's length")
    small = spec.multiplicities()
    rep = containment_check(spec.datum, spec.word, small, big, spec.dilates, spec.cap)
    report = {"input": spec.input_json(), "m_small": list(small), "m_big": list(big),
              "contained": rep.contained, **rep.to_json()}
    lines = [f"Delta{tuple(small)} in Delta{tuple(big)} ({report['label']}):"]
    for k, (pts, miss, ex) in rep.per_dilate.items():
        lines.append(f"  dilate {k}: {pts} points, {miss} missing" + (f", e.g. {ex}" if ex else ""))
    return (EXIT_OK if rep.contained else EXIT_FAIL), report, "\n".join(lines)


def cmd_export(args) -> tuple[int, dict | str, str]:
    spec = build_spec(args)
    wm = WordMult(spec.datum, spec.word, spec.multiplicities())
    V = polyhedra.vertices(twisted_cube(wm))
    fmt = spec.format or ("off" if wm.n == 3 else "json")
    if fmt == "off":
        if wm.n != 3:
            raise InputError(f"OFF export needs dimension 3, polytope has dimension {wm.n}")
        return EXIT_OK, polyhedra.vertices_to_off(V), ""
    return EXIT_OK, {"input": spec.input_json(), "m": list(wm.mult), **polyhedra.vertices_to_json(V)}, ""


COMMANDS = {
    "twisted-cube": (cmd_twisted_cube, "H-description, vertices and lattice/simple/smooth verdicts of P"),
    "string-polytope": (cmd_string_polytope, "membership queries and lattice counts of Delta"),
    "check-p": (cmd_check_p, "decide condition (P) with a witness on failure"),
    "cartier": (cmd_cartier, "the full Cartier table r_sigma"),
    "m-of-lambda": (cmd_m_of_lambda, "multiplicity list m(lambda) of a dominant weight"),
    "resolve": (cmd_resolve, "construct m from a weight and audit the resolution"),
    "compare": (cmd_compare, "lattice-level containment of Delta_small in Delta_big"),
    "export": (cmd_export, "vertices as OFF (3-D) or JSON"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise InputError(message.replace("\n", " "))


def make_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("problem")
    g.add_argument("--spec", help="JSON spec file; flags override its fields")
    g.add_argument("--family", help="Cartan type A..G")
    g.add_argument("--rank", type=int)
    g.add_argument("--word", help="reduced word, e.g. 1,2,1")
    g.add_argument("--mult", help="multiplicity list, e.g. 2,1,1")
    g.add_argument("--weight", help="dominant weight in fundamental-weight coordinates, e.g. 1,1")
    g.add_argument("--dilates", type=int, help="count lattice points at dilates 1..K (default 3)")
    g.add_argument("--denominator", type=int, help="grid denominator for the direct (P) check (default 2)")
    g.add_argument("--cap", type=int, help=f"lattice scan cap (default {DEFAULT_LATTICE_CAP})")
    g.add_argument("--format", choices=("json", "text", "off"), help="report format (default json)")

    parser = _Parser(prog="bottpoly", description=__doc__.split("\n\n")[0], epilog=LABELS,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text, epilog=LABELS,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        if name == "string-polytope":
            p.add_argument("--point", action="append", help="point to test, e.g. 0,0,1/2 (repeatable)")
            p.add_argument("--list-points", action="store_true", help="also list the lattice points")
        if name == "compare":
            p.add_argument("--big-mult", help="multiplicity list of the larger polytope")
        if name == "export":
            p.add_argument("--output", help="write here instead of standard output")
    return parser


def _emit(payload, fmt: str, text: str, out) -> None:
    if isinstance(payload, str):
        out.write(payload)
    elif fmt == "text" and text:
        out.write(text + "\n")
    else:
        out.write(dumps_json(payload) + "\n")


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = make_parser().parse_args(argv)
        if args.command is None:
            raise InputError(f"a command is required: {', '.join(COMMANDS)}")
        func = COMMANDS[args.command][0]
        code, payload, text = func(args)
    except (InputError, DomainError, PreconditionError) as exc:
        print(f"error: input: {str(exc).splitlines()[0] if str(exc) else type(exc).__name__}", file=stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"error: resource: {exc}", file=stderr)
        return EXIT_RESOURCE
    fmt = getattr(args, "resolved_format", None) or "json"
    if args.command == "export" and args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            _emit(payload, fmt, text, fh)
    else:
        _emit(payload, fmt, text, stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
