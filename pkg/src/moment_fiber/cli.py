"""Batch front-end: parse inputs, run analyses, emit reports.

Subcommands:

* ``moment-fiber analyze INPUT``: full structural report for a weight
  matrix, with certificates; INPUT is a path (JSON or CSV), inline JSON,
  or ``-`` for stdin.
* ``moment-fiber kac SPEC...``: grading data for one Kac diagram, or a
  labeling scan (``scan --delta-ge N [--check-order-not-div A,B]``).
* ``moment-fiber selftest``: randomized oracle-vs-fast-path suites.

Exit codes: 0 success, 1 selftest mismatch, 2 input parse error,
3 capability refusal.  All rationals are emitted as exact "p/q" strings;
``--float-hint`` adds decimal approximations alongside, never replacing.
Set MOMENT_FIBER_COLOR=0|1 to force colored text output off or on.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import multiprocessing
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import __version__, oracle, polytope, theta, torus
from .errors import CapabilityError, InputError

EXIT_OK = 0
EXIT_SELFTEST_FAIL = 1
EXIT_PARSE = 2
EXIT_CAPABILITY = 3


def _frac_str(x: Fraction) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _cert_dict(cert: polytope.HullCertificate, float_hint: bool) -> dict:
    if isinstance(cert, polytope.Inside):
        out: dict[str, Any] = {
            "kind": "inside",
            "coefficients": [_frac_str(c) for c in cert.coefficients],
        }
        if float_hint:
            out["coefficients_hint"] = [float(c) for c in cert.coefficients]
        return out
    return {"kind": "outside", "functional": list(cert.functional)}


@dataclass(frozen=True)
class AnalysisReport:
    """JSON-ready analysis result; every flag carries its certificate or
    the rank data justifying it.  Round-trips exactly through JSON."""

    input: dict
    rank: int
    fiber_dimension: int
    splits: dict
    properties: dict
    components: dict
    cartan_subspace: Optional[list]
    nonvisible_witness: Optional[dict]
    reduction_support: list

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        return cls(**{f.name: data[f.name] for f in dataclasses.fields(cls)})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))


def analyze(
    w: torus.WeightMatrix,
    max_components: Optional[int] = None,
    float_hint: bool = False,
) -> AnalysisReport:
    """Run every structural decision procedure on one weight matrix."""
    rank = torus.stratum_orbit_dim(w, range(1, w.n + 1))
    i_d, i_f = torus.split_indices(w)
    comp = torus.components(w, max_components=max_components)
    stable, stable_cert = torus.is_stable(w)
    dec = torus.visible_decomposition(w)
    visible = isinstance(dec, torus.VisibleDecomposition)

    properties: dict[str, dict] = {}
    properties["locally_free"] = {
        "value": torus.is_locally_free(w),
        "justification": {
            "rank": rank,
            "torus_rank": w.r,
            "action_kernel_dim": w.r - rank,
        },
    }
    properties["stable"] = {
        "value": stable,
        "certificate": _cert_dict(stable_cert, float_hint),
    }
    if visible:
        blocks = [
            {
                "indices": sorted(b.indices),
                "relation": [_frac_str(c) for c in b.relation],
                **(
                    {"relation_hint": [float(c) for c in b.relation]}
                    if float_hint
                    else {}
                ),
            }
            for b in dec.blocks
        ]
        properties["visible"] = {
            "value": True,
            "certificate": {"fixed": sorted(dec.fixed), "blocks": blocks},
        }
        cartan = [list(v) for v in torus.cartan_subspace(w)]
        properties["polar"] = {
            "value": True,
            "certificate": {
                "cartan_vectors": cartan,
                "expected_count": w.n - rank,
            },
        }
    else:
        properties["visible"] = {"value": False, "reason": dec.reason}
        properties["polar"] = {
            "value": None,
            "note": "polarity is certified here only through visibility",
        }
    properties["irreducible"] = {
        "value": comp.irreducible,
        "justification": {"free_indices": sorted(i_f)},
    }
    properties["normal"] = {
        "value": comp.normal,
        "justification": {
            "equivalent_to_irreducible": True,
            "free_indices": sorted(i_f),
        },
    }

    witness_dict = None
    if not visible:
        wit = torus.nonvisible_closed_witness(w)
        assert wit is not None
        witness_dict = {
            "x": [_frac_str(v) for v in wit.pair.x],
            "phi": [_frac_str(v) for v in wit.pair.phi],
            "relation": list(wit.relation),
        }

    return AnalysisReport(
        input={"weights": [list(r) for r in w.matrix.entries]},
        rank=rank,
        fiber_dimension=comp.fiber_dimension,
        splits={"dependent": sorted(i_d), "free": sorted(i_f)},
        properties=properties,
        components={
            "count": comp.count,
            "list": (
                [sorted(c) for c in comp.components]
                if comp.components is not None
                else None
            ),
        },
        cartan_subspace=(
            [list(v) for v in torus.cartan_subspace(w)] if visible else None
        ),
        nonvisible_witness=witness_dict,
        reduction_support=sorted(torus.reduction_support(w)),
    )


# -- input parsing -------------------------------------------------------------


def _parse_weights_json(text: str) -> torus.WeightMatrix:
    data = json.loads(text)
    if isinstance(data, list):
        rows = data
    elif isinstance(data, dict) and "weights" in data:
        rows = data["weights"]
    else:
        raise InputError('JSON input needs {"weights": [[...], ...]}')
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("weights must be a list of integer rows")
    for r in rows:
        for x in r:
            if not isinstance(x, int) or isinstance(x, bool):
                raise InputError(f"non-integer weight entry {x!r}")
    return torus.WeightMatrix.from_rows(rows)


def _parse_weights_csv(text: str) -> torus.WeightMatrix:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        row = []
        for colno, tok in enumerate(stripped.replace(",", " ").split(), start=1):
            try:
                row.append(int(tok))
            except ValueError:
                raise InputError(
                    f"line {lineno}, field {colno}: {tok!r} is not an integer"
                ) from None
        rows.append(row)
    if not rows:
        raise InputError("empty CSV input")
    return torus.WeightMatrix.from_rows(rows)


def _load_matrix(spec: str) -> torus.WeightMatrix:
    stripped = spec.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        return _parse_weights_json(stripped)
    if stripped == "-":
        text = sys.stdin.read()
        t = text.lstrip()
        if t.startswith("{") or t.startswith("["):
            return _parse_weights_json(text)
        return _parse_weights_csv(text)
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc}") from None
    if spec.endswith(".json") or text.lstrip().startswith(("{", "[")):
        return _parse_weights_json(text)
    return _parse_weights_csv(text)


# -- kac subcommand -------------------------------------------------------------


_KAC_NODE_ORDER_DOC = """\
Label order per type (affine node always last):
  A..D, F, G : alpha_1 .. alpha_n, alpha_0
  E6         : arm alpha_1, alpha_3, alpha_4, alpha_5, alpha_6, branch
               alpha_2, then alpha_0
  E7 / E8    : arm alpha_1, alpha_3, .., alpha_n, branch alpha_2, alpha_0
  twisted    : folded chain away from the affine node, then the affine node
"""


def _input_order(family: str, rank: int, twist: int, count: int) -> list[int]:
    """Positions: input label index -> internal index (alpha_1..l, affine)."""
    if twist == 1 and family == "E":
        arm = [0] + list(range(2, rank))  # alpha_1, alpha_3..alpha_n
        return arm + [1, rank]  # branch alpha_2, then affine
    return list(range(count))


def _diagram_from_tokens(tokens: Sequence[str]) -> tuple[str, int, int, list[int] | None, dict]:
    """Parse 'E6 twist=1 labels=..' token streams; returns scan options too."""
    if not tokens:
        raise InputError("kac needs a diagram spec, e.g. 'A2 twist=1 labels=1,1,1'")
    head = tokens[0].strip()
    if len(head) < 2 or head[0].upper() not in "ABCDEFG":
        raise InputError(f"cannot parse type {head!r} (expected e.g. E6, A2)")
    family = head[0].upper()
    try:
        rank = int(head[1:])
    except ValueError:
        raise InputError(f"cannot parse rank in {head!r}") from None
    twist = 1
    labels: list[int] | None = None
    opts: dict[str, Any] = {"scan": False, "delta_ge": 2, "not_div": []}
    it = iter(tokens[1:])
    for tok in it:
        if tok.startswith("twist="):
            twist = int(tok.split("=", 1)[1])
        elif tok.startswith("labels="):
            try:
                labels = [int(v) for v in tok.split("=", 1)[1].split(",") if v != ""]
            except ValueError:
                raise InputError(f"bad labels in {tok!r}") from None
        elif tok == "all-ones":
            labels = "all-ones"  # type: ignore[assignment]
        elif tok == "scan":
            opts["scan"] = True
        elif tok == "--delta-ge":
            opts["delta_ge"] = int(next(it, "2"))
        elif tok == "--check-order-not-div":
            opts["not_div"] = [int(v) for v in next(it, "").split(",") if v]
        else:
            raise InputError(f"unrecognized kac token {tok!r}")
    return family, rank, twist, labels, opts


def _scan_chunk(args: tuple[str, int, int, list[tuple[int, ...]]]):
    family, rank, min_delta, labelings = args
    out = []
    for labels in labelings:
        gd = theta.graded_dims(theta.KacDiagram(family, rank, 1, labels))
        if gd.delta >= min_delta:
            out.append((labels, gd.order, gd.delta))
    return out


def _parallel_scan(
    family: str, rank: int, min_delta: int, jobs: int
) -> list[theta.ScanHit]:
    labelings = [
        tuple(mask >> i & 1 for i in range(rank + 1))
        for mask in range(1, 1 << (rank + 1))
    ]
    step = (len(labelings) + jobs - 1) // jobs
    chunks = [
        (family, rank, min_delta, labelings[i : i + step])
        for i in range(0, len(labelings), step)
    ]
    with multiprocessing.Pool(processes=jobs) as pool:
        parts = pool.map(_scan_chunk, chunks)
    return [
        theta.ScanHit(theta.KacDiagram(family, rank, 1, labels), order, delta)
        for part in parts
        for labels, order, delta in part
    ]


def cmd_kac(
    tokens: Sequence[str], allow_twisted_table: bool = False, jobs: int = 1
) -> dict:
    flat: list[str] = []
    for tok in tokens:
        flat.extend(tok.split())
    family, rank, twist, labels, opts = _diagram_from_tokens(flat)
    if opts["scan"]:
        if jobs > 1:
            hits = _parallel_scan(family, rank, opts["delta_ge"], jobs)
            hits.sort(
                key=lambda h: sum(b << i for i, b in enumerate(h.diagram.labels))
            )
        else:
            hits = theta.levi_order_scan(
                family, rank, min_delta=opts["delta_ge"]
            )
        violations = [
            h for h in hits
            if any(h.order % q == 0 for q in opts["not_div"])
        ]
        return {
            "type": f"{family}{rank}",
            "twist": twist,
            "scan": {
                "min_delta": opts["delta_ge"],
                "hits": [
                    {
                        "labels": list(h.diagram.labels),
                        "order": h.order,
                        "delta": h.delta,
                    }
                    for h in hits
                ],
                "order_not_divisible_by": opts["not_div"],
                "violations": [
                    {"labels": list(h.diagram.labels), "order": h.order}
                    for h in violations
                ],
            },
        }
    if labels == "all-ones" or labels is None:
        d = theta.KacDiagram.all_ones(family, rank, twist)
    else:
        order = _input_order(family, rank, twist, len(labels))
        if len(order) != len(labels):
            raise InputError(
                f"{family}{rank}^({twist}) needs {len(order)} labels,"
                f" got {len(labels)}"
            )
        internal = [0] * len(labels)
        for pos, lab in enumerate(labels):
            internal[order[pos]] = lab
        d = theta.KacDiagram.of(family, rank, internal, twist=twist)
    gd = theta.graded_dims(d, allow_twisted_table=allow_twisted_table)
    out = {
        "type": f"{family}{rank}",
        "twist": twist,
        "labels": list(d.labels),
        "order": gd.order,
        "delta": gd.delta,
    }
    if gd.complete:
        out["dims"] = list(gd.dims)
    else:
        out["dims_degree_0_1"] = list(gd.dims[:2])
    return out


# -- selftest -------------------------------------------------------------------


def _random_weight_matrix(
    rng: random.Random, max_n: int, max_r: int, max_entry: int
) -> torus.WeightMatrix:
    n = rng.randint(1, max_n)
    r = rng.randint(1, max_r)
    rows = [
        [rng.randint(-max_entry, max_entry) for _ in range(r)] for _ in range(n)
    ]
    if rng.random() < 0.15:  # force a zero row: degenerate strata matter
        rows[rng.randrange(n)] = [0] * r
    if n >= 2 and rng.random() < 0.15:  # force a duplicate row
        rows[rng.randrange(n)] = list(rows[rng.randrange(n)])
    return torus.WeightMatrix.from_rows(rows)


def _selftest_chunk(args: tuple[int, int, int, int, int]) -> list[str]:
    """One shard of the randomized suites; returns failure descriptions."""
    seed, count, max_n, max_r, max_entry = args
    rng = random.Random(seed)
    failures: list[str] = []

    def fail(kind: str, w: torus.WeightMatrix) -> None:
        failures.append(
            f"{kind}: seed={seed} weights={[list(r) for r in w.matrix.entries]}"
        )

    for _ in range(count):
        w = _random_weight_matrix(rng, max_n, max_r, max_entry)
        i_d, i_f = torus.split_indices(w)
        comp = torus.components(w)
        if w.n <= 12:
            brute = oracle.brute_components(w)
            if set(comp.components or ()) != set(brute):
                fail("component mismatch", w)
            if comp.count != 1 << len(i_f):
                fail("component count", w)
        if w.n <= 7:
            v_fast = torus.visible_decomposition(w)
            v_brute = oracle.brute_visible(w)
            fast_ok = isinstance(v_fast, torus.VisibleDecomposition)
            brute_ok = isinstance(v_brute, torus.VisibleDecomposition)
            if fast_ok != brute_ok:
                fail("visibility verdict mismatch", w)
            elif fast_ok and oracle.check_decomposition(w, v_fast) is not None:
                fail("decomposition verification", w)
        if torus.is_locally_free(w) and w.n <= 6:
            for mask in range(1 << w.n):
                subset = {i + 1 for i in range(w.n) if mask >> i & 1}
                p = torus.smooth_witness(w, subset)
                if any(v != 0 for v in torus.moment_eval(w, p)):
                    fail("smooth witness off fiber", w)
                elif torus.stabilizer_dim(w, p) != 0:
                    fail("smooth witness stabilizer", w)
                elif oracle.tangent_dim(w, p) != comp.fiber_dimension:
                    fail("smooth witness tangent dimension", w)
        wit = torus.nonvisible_closed_witness(w)
        if (wit is None) != isinstance(
            torus.visible_decomposition(w), torus.VisibleDecomposition
        ):
            fail("nonvisible witness presence", w)

        d = rng.randint(1, 4)
        pts = [
            tuple(rng.randint(-4, 4) for _ in range(d))
            for _ in range(rng.randint(1, 6))
        ]
        q = polytope.HullQuery.of(pts)
        hull = polytope.zero_in_hull(q)
        if not polytope.verify_certificate(q, hull, relative_interior=False):
            failures.append(f"hull certificate: seed={seed} points={pts}")
        elif isinstance(hull, polytope.Inside) != oracle.brute_zero_in_hull(pts):
            failures.append(f"hull verdict: seed={seed} points={pts}")
    return failures


def run_selftest(
    seed: int = 0,
    count: int = 100,
    max_n: int = 8,
    max_r: int = 5,
    max_entry: int = 5,
    jobs: int = 1,
) -> tuple[bool, list[str]]:
    """Oracle-vs-fast-path randomized suites; returns (ok, messages)."""
    shards = max(1, jobs)
    per = (count + shards - 1) // shards
    args = [
        (seed + 1000 * i, per, max_n, max_r, max_entry) for i in range(shards)
    ]
    if shards == 1:
        results = [_selftest_chunk(args[0])]
    else:
        with multiprocessing.Pool(processes=shards) as pool:
            results = pool.map(_selftest_chunk, args)
    failures = [msg for chunk in results for msg in chunk]
    lines = [
        f"selftest: {shards * per} matrices"
        f" (seed={seed}, n<={max_n}, r<={max_r}, |entry|<={max_entry})",
    ]
    if failures:
        lines.append(f"FAIL: {len(failures)} mismatches")
        lines.extend(failures[:20])
    else:
        lines.append("PASS: fast paths agree with brute-force oracles")
    return not failures, lines


# -- rendering ------------------------------------------------------------------


def _want_color(stream) -> bool:
    env = os.environ.get("MOMENT_FIBER_COLOR")
    if env == "1":
        return True
    if env == "0":
        return False
    return bool(getattr(stream, "isatty", lambda: False)())


def _mark(flag: Optional[bool], color: bool) -> str:
    if flag is None:
        sym = "?"
        code = "33"
    elif flag:
        sym = "yes"
        code = "32"
    else:
        sym = "no"
        code = "31"
    return f"\x1b[{code}m{sym}\x1b[0m" if color else sym


def _render_report_text(rep: AnalysisReport, stream) -> None:
    color = _want_color(stream)
    p = rep.properties
    print(f"weights: {rep.input['weights']}", file=stream)
    print(
        f"rank {rep.rank}, fiber dimension {rep.fiber_dimension},"
        f" I_d={rep.splits['dependent']}, I_f={rep.splits['free']}",
        file=stream,
    )
    for key in ("locally_free", "stable", "visible", "polar", "irreducible",
                "normal"):
        line = f"  {key:13s} {_mark(p[key]['value'], color)}"
        if "reason" in p[key]:
            line += f"  ({p[key]['reason']})"
        print(line, file=stream)
    comp = rep.components
    if comp["list"] is not None:
        print(f"components ({comp['count']}): {comp['list']}", file=stream)
    else:
        print(f"components: {comp['count']} (list capped)", file=stream)
    if rep.cartan_subspace is not None:
        print(f"cartan subspace vectors: {rep.cartan_subspace}", file=stream)
    if rep.nonvisible_witness is not None:
        print(f"closed-pair witness: {rep.nonvisible_witness}", file=stream)
    print(f"reduction support: {rep.reduction_support}", file=stream)


# -- entry points ----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="moment-fiber",
        description="Exact structural analysis of torus moment-map null"
        " fibers, plus a Kac-diagram grading calculator.",
        epilog=_KAC_NODE_ORDER_DOC,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze a weight matrix")
    pa.add_argument("input", help="path, inline JSON, or - for stdin")
    pa.add_argument("--format", choices=("json", "text"), default="text")
    pa.add_argument("--max-components", type=int, default=4096,
                    help="cap on the enumerated component list; the count"
                    " is always reported")
    pa.add_argument("--float-hint", action="store_true",
                    help="add decimal approximations next to exact"
                    " rationals (never replacing them)")
    pa.add_argument("--jobs", type=int, default=1,
                    help="worker count for scan workloads (selftest, kac"
                    " scans); single matrices run inline")

    pk = sub.add_parser("kac", help="Kac diagram gradings and scans")
    pk.add_argument("spec", nargs=argparse.REMAINDER,
                    help="e.g. E6 twist=1 labels=1,1,0,1,1,1,1")
    pk.add_argument("--format", choices=("json", "text"), default="text")
    pk.add_argument("--allow-twisted-table", action="store_true")
    pk.add_argument("--jobs", type=int, default=1)

    ps = sub.add_parser("selftest", help="randomized oracle equivalence run")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--count", type=int, default=100)
    ps.add_argument("--max-n", type=int, default=8)
    ps.add_argument("--max-r", type=int, default=5)
    ps.add_argument("--max-entry", type=int, default=5)
    ps.add_argument("--jobs", type=int, default=1)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            try:
                w = _load_matrix(args.input)
            except (InputError, json.JSONDecodeError) as exc:
                print(f"parse error: {exc}", file=sys.stderr)
                return EXIT_PARSE
            rep = analyze(
                w,
                max_components=args.max_components,
                float_hint=args.float_hint,
            )
            if args.format == "json":
                print(rep.to_json())
            else:
                _render_report_text(rep, sys.stdout)
            return EXIT_OK
        if args.command == "kac":
            # REMAINDER swallows trailing options; pull ours back out.
            flat: list[str] = []
            for tok in args.spec:
                flat.extend(tok.split())
            spec: list[str] = []
            it = iter(flat)
            for tok in it:
                if tok == "--format":
                    args.format = next(it, args.format)
                elif tok == "--allow-twisted-table":
                    args.allow_twisted_table = True
                elif tok == "--jobs":
                    args.jobs = int(next(it, "1"))
                else:
                    spec.append(tok)
            try:
                out = cmd_kac(
                    spec,
                    allow_twisted_table=args.allow_twisted_table,
                    jobs=args.jobs,
                )
            except InputError as exc:
                print(f"parse error: {exc}", file=sys.stderr)
                return EXIT_PARSE
            if args.format == "json":
                print(json.dumps(out, indent=2, sort_keys=True))
            else:
                for key, val in out.items():
                    print(f"{key}: {val}")
            return EXIT_OK
        ok, lines = run_selftest(
            seed=args.seed,
            count=args.count,
            max_n=args.max_n,
            max_r=args.max_r,
            max_entry=args.max_entry,
            jobs=args.jobs,
        )
        for line in lines:
            print(line)
        return EXIT_OK if ok else EXIT_SELFTEST_FAIL
    except CapabilityError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
