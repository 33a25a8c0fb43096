"""Command-line front end.

    mrstab index  seaweed-gl 2,2/4
    mrstab mrs    seaweed-gl 9,3,4/4,1,11
    mrstab mrs    parabolic-so n=8 a=1,1,2
    mrstab mrs    parabolic-exceptional type=E6 pi=1,3,5,6
    mrstab meander seaweed-gl 9,3,4/4,1,11 > graph.dot
    mrstab cascade E8
    mrstab verify parabolic-sp n=6 a=1
    mrstab sweep  parabolic-so --max-n 8 --jobs 4

Exit codes: 0 PASS, 1 FAIL, 2 not quasi-reductive, 3 not covered, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import classical, exceptional, meander, oracle, realize, rootsys
from .cascade import cascade_size, format_cascade, kostant_cascade
from .reductive import ReductiveType

EXIT_PASS, EXIT_FAIL, EXIT_NQR, EXIT_NOT_COVERED, EXIT_USAGE = 0, 1, 2, 3, 64
KINDS = ("seaweed-gl", "parabolic-sp", "parabolic-so", "parabolic-exceptional")
LEVELS = ("off", "fast", "full")


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# problems


def _ints(text: str, where: str, allow_empty: bool = False) -> tuple:
    text = text.strip()
    if not text:
        if allow_empty:
            return ()
        raise UsageError(f"{where}: empty list")
    out = []
    for k, tok in enumerate(text.split(","), 1):
        try:
            out.append(int(tok))
        except ValueError:
            raise UsageError(f"{where}, entry {k}: {tok!r} is not an integer") from None
    return tuple(out)


@dataclass(frozen=True)
class ProblemSpec:
    kind: str
    a: tuple = ()
    b: tuple = ()
    n: int = 0
    type: str = ""
    pi: tuple = ()

    def __post_init__(self):
        self.validate()

    def validate(self):
        k = self.kind
        if k not in KINDS:
            raise UsageError(f"unknown kind {k!r}; expected one of {', '.join(KINDS)}")
        if k == "seaweed-gl":
            if not self.a or not self.b or min(self.a + self.b) < 1:
                raise UsageError("seaweed-gl needs two compositions of positive parts")
            if sum(self.a) != sum(self.b):
                raise UsageError(f"compositions have totals {sum(self.a)} and {sum(self.b)}")
        elif k in ("parabolic-sp", "parabolic-so"):
            if not self.a or min(self.a) < 1:
                raise UsageError(f"{k} needs a composition a of positive parts")
            try:
                classical.IsoParabolic(-1 if k == "parabolic-sp" else 1, self.n, self.a)
            except ValueError as e:
                raise UsageError(str(e)) from None
        else:
            try:
                t = rootsys.SimpleType.parse(self.type)
            except rootsys.InvalidType as e:
                raise UsageError(str(e)) from None
            if not t.is_exceptional:
                raise UsageError(f"{t} is not an exceptional type")
            bad = [i for i in self.pi if not 1 <= i <= t.rank]
            if bad or len(set(self.pi)) != len(self.pi):
                raise UsageError(f"pi={list(self.pi)} is not a set of simple roots of {t}")

    @classmethod
    def parse(cls, kind: str, tokens: list[str]) -> "ProblemSpec":
        if kind not in KINDS:
            raise UsageError(f"argument 1: unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
        if kind == "seaweed-gl":
            if len(tokens) != 1 or tokens[0].count("/") != 1:
                raise UsageError("argument 2: seaweed-gl expects a single 'a1,a2,.../b1,b2,...'")
            left, right = tokens[0].split("/")
            return cls(kind, _ints(left, "argument 2, left of '/'"), _ints(right, "argument 2, right of '/'"))
        fields: dict = {}
        want = {"n", "a"} if kind != "parabolic-exceptional" else {"type", "pi"}
        for pos, tok in enumerate(tokens, 2):
            key, eq, val = tok.partition("=")
            if not eq or key not in want:
                raise UsageError(f"argument {pos}: expected one of {', '.join(sorted(k + '=' for k in want))}, got {tok!r}")
            if key in fields:
                raise UsageError(f"argument {pos}: {key} given twice")
            fields[key] = (pos, val)
        missing = want - set(fields)
        if missing:
            raise UsageError(f"missing {', '.join(sorted(missing))} for {kind}")
        if kind == "parabolic-exceptional":
            pos, val = fields["pi"]
            pi = tuple(sorted(_ints(val, f"argument {pos} (pi)", allow_empty=True)))
            return cls(kind, type=fields["type"][1].strip().upper(), pi=pi)
        pos, val = fields["n"]
        try:
            n = int(val)
        except ValueError:
            raise UsageError(f"argument {pos}: n={val!r} is not an integer") from None
        pos, val = fields["a"]
        return cls(kind, a=_ints(val, f"argument {pos} (a)"), n=n)

    def to_dict(self) -> dict:
        if self.kind == "seaweed-gl":
            return {"kind": self.kind, "a": list(self.a), "b": list(self.b)}
        if self.kind == "parabolic-exceptional":
            return {"kind": self.kind, "type": self.type, "pi": list(self.pi)}
        return {"kind": self.kind, "n": self.n, "a": list(self.a)}

    @classmethod
    def from_dict(cls, d: dict) -> "ProblemSpec":
        return cls(
            d["kind"],
            a=tuple(d.get("a", ())),
            b=tuple(d.get("b", ())),
            n=int(d.get("n", 0)),
            type=d.get("type", ""),
            pi=tuple(d.get("pi", ())),
        )

    def __str__(self):
        if self.kind == "seaweed-gl":
            return f"{self.kind} {','.join(map(str, self.a))}/{','.join(map(str, self.b))}"
        if self.kind == "parabolic-exceptional":
            return f"{self.kind} type={self.type} pi={','.join(map(str, self.pi))}"
        return f"{self.kind} n={self.n} a={','.join(map(str, self.a))}"

    @property
    def iso(self) -> classical.IsoParabolic:
        return classical.IsoParabolic(-1 if self.kind == "parabolic-sp" else 1, self.n, self.a)


# --------------------------------------------------------------------------
# prediction and checks


def _gl_type(d: meander.GlMrsDescriptor) -> ReductiveType:
    out = ReductiveType.zero()
    for r in d.ranks():
        out = out + ReductiveType.gl(r)
    return out


def predict(spec: ProblemSpec) -> dict:
    """Closed-form answer; ``status`` is OK, NQR or NOT_COVERED."""
    if spec.kind == "seaweed-gl":
        d = meander.mrs_gl(spec.a, spec.b)
        return {
            "status": "OK",
            "index": meander.seaweed_index(spec.a, spec.b),
            "mrs": d.type_string(),
            "type": str(_gl_type(d)),
            "factors": [f.describe() for f in d.factors],
            "dimension": meander.seaweed_dimension(spec.a, spec.b),
        }
    if spec.kind in ("parabolic-sp", "parabolic-so"):
        p = spec.iso
        if not classical.is_qr(p):
            return {"status": "NQR", "reason": f"{p.name} is not quasi-reductive (flag type fails the orthogonal criterion)"}
        c = classical.mrs_classical(p)
        out = {"status": "OK", "index": c.rank, "mrs": c.formula(), "type": str(c.type)}
        if p.epsilon == 1:
            out["case"] = c.case
        return out
    trace: list = []
    try:
        t = exceptional.mrs_exceptional(spec.type, spec.pi, trace)
    except classical.NotQuasiReductive as e:
        return {"status": "NQR", "reason": str(e)}
    except exceptional.NotCovered as e:
        return {"status": "NOT_COVERED", "reason": str(e)}
    return {"status": "OK", "index": t.rank, "mrs": str(t), "type": str(t), "trace": trace}


def _check(name: str, ok: bool, detail="") -> dict:
    return {"name": name, "ok": bool(ok), "detail": str(detail)}


def _realized(spec: ProblemSpec):
    if spec.kind == "seaweed-gl":
        q = realize.build_seaweed_gl(spec.a, spec.b)
        m = realize.embed_mrs_gl(meander.mrs_gl(spec.a, spec.b), sum(spec.a))
        return q, m
    p = spec.iso
    q = p.realize()
    try:
        m = classical.embed_mrs_classical(p)
    except classical.NoEmbedding:
        m = None
    return q, m


def _check_realized(q, m, pred: dict, level: str, s: oracle.Sampler) -> list[dict]:
    checks = []
    idx = oracle.index_numeric(q, s.child("index"))
    checks.append(_check("index", idx == pred["index"], f"numeric {idx}, predicted {pred['index']}"))
    if m is not None:
        checks.append(_check("embedding contained", q.contains_algebra(m), m.name))
        checks.append(_check("embedding bracket-closed", m.is_bracket_closed()))
        checks.append(_check("trace form non-degenerate", m.trace_form_nondegenerate()))
        v = oracle.verify_mrs(q, m, s.child("verify"))
        checks.append(_check("generic stabiliser on upsilon", v.passed, json.dumps(v.as_dict(), sort_keys=True)))
    if level == "full":
        want = ReductiveType.parse(pred["type"])
        num = oracle.mrs_numeric(q, s.child("numeric"))
        inv = oracle.invariant_tuple(num.m, s.child("invariants"))
        checks.append(_check("invariants of numeric stabiliser", inv == want.invariants(), f"numeric {inv}, predicted {want.invariants()}"))
        ident = oracle.identify_type(num.m, s.child("identify"))
        checks.append(_check("identified type", ident.type == want, f"{ident} ({ident.status})"))
    return checks


def _check_leaf(t, pi, answer: ReductiveType, s: oracle.Sampler) -> dict:
    """Oracle check of a classical sub-answer through its matrix realisation."""
    label = f"{t} pi={sorted(pi)}"
    if t.family == "A":
        comp = exceptional.composition_from_pi(t.rank, pi)
        q = realize.build_seaweed_gl(comp, (t.rank + 1,))
        idx = oracle.index_numeric(q, s.child(label)) - 1  # sl: drop the scalars
    else:
        p = exceptional.flag_from_pi(t, pi)
        if p is None:
            return _check(f"leaf {label}", answer.rank == t.rank, "whole algebra")
        idx = oracle.index_numeric(p.realize(), s.child(label))
    return _check(f"leaf {label}", idx == answer.rank, f"numeric index {idx}, rank of {answer} is {answer.rank}")


def run_checks(spec: ProblemSpec, pred: dict, level: str, seed: int) -> list[dict]:
    if level == "off":
        return []
    s = oracle.Sampler(seed).child(str(spec))
    if spec.kind == "parabolic-exceptional":
        if pred["status"] != "OK":
            return []
        leaves: list = []
        t = exceptional.mrs_exceptional(spec.type, spec.pi, leaves=leaves)
        checks = [_check("index = rank", t.rank == pred["index"])]
        for row in exceptional.table_rows(spec.type):
            if rootsys.normalize_by_diagram_automorphism(rootsys.build(spec.type), row.pi) == rootsys.normalize_by_diagram_automorphism(
                rootsys.build(spec.type), spec.pi
            ):
                checks.append(_check("table row", row.index == row.mrs.rank, row.describe()))
        checks += [_check_leaf(lt, lpi, ans, s) for lt, lpi, ans in leaves]
        return checks
    if pred["status"] == "NQR":
        q = spec.iso.realize()
        tv = oracle.generic_torus(q, oracle.Sampler(s.seed, max_resamples=20))
        return [_check("generic stabiliser not toral", not tv.ok, tv.verdict + (f": {tv.reason}" if tv.reason else ""))]
    q, m = _realized(spec)
    return _check_realized(q, m, pred, level, s)


def solve(spec: ProblemSpec, level: str = "off", seed: int = 0) -> dict:
    pred = predict(spec)
    checks = run_checks(spec, pred, level, seed)
    if pred["status"] in ("NQR", "NOT_COVERED"):
        verdict = pred["status"]
        if checks and not all(c["ok"] for c in checks):
            verdict = "FAIL"
    elif level == "off":
        verdict = "OK"
    else:
        verdict = "PASS" if all(c["ok"] for c in checks) else "FAIL"
    return {"problem": spec.to_dict(), "prediction": pred, "checks": checks, "verdict": verdict, "verify": level, "seed": seed}


def exit_code(verdict: str) -> int:
    return {"OK": EXIT_PASS, "PASS": EXIT_PASS, "FAIL": EXIT_FAIL, "NQR": EXIT_NQR, "NOT_COVERED": EXIT_NOT_COVERED}[verdict]


def report_from_json(text: str) -> tuple[ProblemSpec, dict]:
    d = json.loads(text)
    return ProblemSpec.from_dict(d["problem"]), d


# --------------------------------------------------------------------------
# rendering


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=True)


def _text_checks(rep: dict) -> list[str]:
    lines = [f"  [{'ok' if c['ok'] else 'FAIL'}] {c['name']}" + (f": {c['detail']}" if c["detail"] else "") for c in rep["checks"]]
    if rep["verify"] != "off":
        lines.append(rep["verdict"])
    return lines


def render_index(rep: dict) -> list[str]:
    pred = rep["prediction"]
    head = str(pred["index"]) if pred["status"] == "OK" else f"{pred['status']}: {pred['reason']}"
    return [head] + _text_checks(rep)


def render_mrs(rep: dict) -> list[str]:
    pred = rep["prediction"]
    if pred["status"] != "OK":
        return [f"{pred['status']}: {pred['reason']}"] + _text_checks(rep)
    lines = [f"{pred['mrs']}; index {pred['index']}"]
    if rep["problem"]["kind"] == "seaweed-gl":
        lines.append(f"type: {pred['type']}")
        lines += [f"  {f}" for f in pred["factors"]]
    elif rep["problem"]["kind"] == "parabolic-exceptional":
        lines += [f"  {s}" for s in pred["trace"]]
    else:
        lines.append(f"type: {pred['type']}" + (f" (case {pred['case']})" if "case" in pred else ""))
    return lines + _text_checks(rep)


# --------------------------------------------------------------------------
# sweeps


def sweep_specs(kind: str, max_n: int) -> list[ProblemSpec]:
    out = []
    if kind == "seaweed-gl":
        for n in range(1, max_n + 1):
            out += [ProblemSpec(kind, tuple(a), tuple(b)) for a, b in meander.iter_pairs(n)]
    elif kind == "parabolic-sp":
        for n in range(2, max_n + 1, 2):
            out += [ProblemSpec(kind, a=p.a.parts, n=n) for p in classical.all_parabolics(-1, n)]
    elif kind == "parabolic-so":
        for n in range(3, max_n + 1):
            out += [ProblemSpec(kind, a=p.a.parts, n=n) for p in classical.all_parabolics(1, n)]
    else:
        for name in ("E6", "E7", "E8", "F4", "G2"):
            rs = rootsys.build(name)
            out += [ProblemSpec(kind, type=name, pi=tuple(sorted(pi))) for pi in rootsys.all_subsets(rs)]
    return out


def _sweep_case(args) -> dict:
    spec, level, seed = args
    return solve(spec, level, seed)


def sweep(kind: str, max_n: int, level: str, seed: int, jobs: int = 1) -> list[dict]:
    work = [(s, level, seed) for s in sweep_specs(kind, max_n)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(_sweep_case, work, chunksize=8))
    return [_sweep_case(w) for w in work]


def sweep_summary(reports: list[dict]) -> dict:
    counts: dict = {}
    for r in reports:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    return {"cases": len(reports), "verdicts": dict(sorted(counts.items())), "all_pass": "FAIL" not in counts}


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--verify", choices=LEVELS, default=None)

    parser = _Parser(prog="mrstab", description="Index and maximal reductive stabilisers of seaweed and parabolic subalgebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, helptext in (
        ("index", "index of the subalgebra"),
        ("mrs", "type of the maximal reductive stabiliser"),
        ("verify", "prediction plus matrix realisation and certification"),
        ("meander", "meander graph of a seaweed (DOT by default)"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("kind", help=" | ".join(KINDS))
        p.add_argument("params", nargs="*", help="a/b for seaweed-gl, n=.. a=.. for parabolics, type=.. pi=.. for exceptional")
    p = sub.add_parser("cascade", parents=[common], help="Kostant cascade of a simple type")
    p.add_argument("type")
    p.add_argument("pi", nargs="?", default=None, help="subset of simple roots, e.g. 1,2,3")
    p = sub.add_parser("sweep", parents=[common], help="check every case up to a bound")
    p.add_argument("kind", help=" | ".join(KINDS))
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--jobs", type=int, default=1)
    return parser


def _emit(lines) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


def _cmd_cascade(args) -> int:
    try:
        t = rootsys.SimpleType.parse(args.type)
    except rootsys.InvalidType as e:
        raise UsageError(f"argument 1: {e}") from None
    rs = rootsys.build(t)
    pi = None if args.pi is None else _ints(args.pi, "argument 2 (pi)", allow_empty=True)
    if pi is not None and not set(pi) <= set(rs.simple):
        raise UsageError(f"argument 2: {list(pi)} is not a set of simple roots of {t}")
    c = kostant_cascade(rs, pi)
    data = {"type": str(t), "pi": sorted(pi) if pi is not None else None, "size": len(c), **c.as_dict()}
    if pi is None:
        data["table_size"] = cascade_size(t)
    if args.format == "json":
        _emit([_dump(data)])
    else:
        _emit([f"{t}: |K| = {len(c)}", format_cascade(c)])
    return EXIT_PASS if pi is not None or len(c) == cascade_size(t) else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "cascade":
            return _cmd_cascade(args)
        if args.command == "sweep":
            if args.kind not in KINDS:
                raise UsageError(f"argument 1: unknown kind {args.kind!r}")
            level = args.verify or "fast"
            reports = sweep(args.kind, args.max_n, level, args.seed, args.jobs)
            summary = sweep_summary(reports)
            if args.format == "json":
                _emit([_dump({"kind": args.kind, "max_n": args.max_n, "verify": level, "seed": args.seed, "summary": summary, "cases": reports})])
            else:
                lines = []
                for r in reports:
                    spec = ProblemSpec.from_dict(r["problem"])
                    pred = r["prediction"]
                    what = f"{pred['mrs']}; index {pred['index']}" if pred["status"] == "OK" else pred["status"]
                    bad = [c["name"] for c in r["checks"] if not c["ok"]]
                    lines.append(f"{r['verdict']:<11} {spec}  {what}" + (f"  failed: {', '.join(bad)}" if bad else ""))
                lines.append(f"{summary['cases']} cases: " + ", ".join(f"{k} {v}" for k, v in summary["verdicts"].items()))
                _emit(lines)
            return EXIT_PASS if summary["all_pass"] else EXIT_FAIL
        spec = ProblemSpec.parse(args.kind, args.params)
        if args.command == "meander":
            if spec.kind != "seaweed-gl":
                raise UsageError("argument 1: meander needs kind seaweed-gl")
            g = meander.build_meander(spec.a, spec.b)
            if args.format == "json":
                _emit([_dump({"problem": spec.to_dict(), "dot": meander.to_dot(g), "description": meander.describe(g)})])
            else:
                _emit([meander.to_dot(g).rstrip("\n")])
            return EXIT_PASS
        if args.format == "dot":
            raise UsageError("--format dot is only available for the meander command")
        level = args.verify or ("full" if args.command == "verify" else "off")
        rep = solve(spec, level, args.seed)
        rep["command"] = args.command
        if args.format == "json":
            _emit([_dump(rep)])
        elif args.command == "index":
            _emit(render_index(rep))
        else:
            _emit(render_mrs(rep))
        return exit_code(rep["verdict"])
    except UsageError as e:
        print(f"mrstab: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
